#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "framecomp/ratio.hpp"

namespace framecomp {

/// Finite nonincreasing sequence of nonnegative exact rationals.
///
/// Indexing is zero-based in code; the math is one-based, so `s[m - 1]`
/// is the m-th eigenvalue. Values are immutable once constructed.
class Spectrum {
public:
    Spectrum() = default;

    /// Throws Error{NotSorted} or Error{Negative}.
    explicit Spectrum(std::vector<Ratio> values);
    Spectrum(std::initializer_list<Ratio> values) : Spectrum(std::vector<Ratio>(values)) {}

    static Spectrum zeros(std::size_t length);
    static Spectrum constant(std::size_t length, const Ratio& value);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const Ratio& operator[](std::size_t i) const { return values_[i]; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }
    std::span<const Ratio> values() const noexcept { return values_; }

    Ratio sum() const;

    /// Zero-extended copy of length max(size(), length).
    Spectrum padded(std::size_t length) const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<Ratio> values_;
};

Spectrum make_spectrum(std::vector<Ratio> values);

/// Parses a list of rational literals into a Spectrum.
Spectrum parse_spectrum(const std::vector<std::string>& literals);
std::vector<std::string> to_strings(const Spectrum& s);

/// Majorization: equal totals and every prefix sum of `small` is bounded by
/// the corresponding prefix sum of `big`.
bool majorizes(const Spectrum& big, const Spectrum& small);

/// `upper` interlaces over `lower`: upper[m+1] <= lower[m] <= upper[m],
/// with upper[M+1] := 0.
bool interlaces_over(const Spectrum& upper, const Spectrum& lower);

struct FeasibilityReport {
    bool feasible = false;
    /// sum(lambda - alpha) - sum(mu)
    Ratio equality_gap;
    /// One-based j for which the j-th tail inequality fails.
    std::vector<std::size_t> violated_indices;
    /// lambda_m >= alpha_m for every m.
    bool dominance_ok = false;
};

/// Checks whether `lambda` is achievable as the spectrum of A + sum phi_n phi_n^*
/// with spec(A) = alpha and |phi_n|^2 = mu_n. No assumption M <= N.
FeasibilityReport completion_feasible(const Spectrum& alpha, const Spectrum& lambda, const Spectrum& mu);

/// Classical frame Schur-Horn test (prefix sums of mu bounded by those of
/// lambda, equal totals). Requires lambda.size() <= mu.size().
bool classical_schur_horn_feasible(const Spectrum& lambda, const Spectrum& mu);

/// Sum of mu[j-1..] for one-based j; 0 when j > mu.size().
Ratio tail_sum(const Spectrum& mu, std::size_t j);

}  // namespace framecomp
