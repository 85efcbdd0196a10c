#include "framecomp/spectra.hpp"

#include <string>

#include "framecomp/error.hpp"

namespace framecomp {

Spectrum::Spectrum(std::vector<Ratio> values) : values_(std::move(values)) {
    for (auto& v : values_) v.canonicalize();
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (sgn(values_[i]) < 0) {
            throw Error(ErrorCode::Negative, "entry " + std::to_string(i + 1) + " is " + to_string(values_[i]));
        }
        if (i + 1 < values_.size() && values_[i] < values_[i + 1]) {
            throw Error(ErrorCode::NotSorted, "entry " + std::to_string(i + 2) + " exceeds entry " + std::to_string(i + 1));
        }
    }
}

Spectrum Spectrum::zeros(std::size_t length) { return constant(length, Ratio(0)); }

Spectrum Spectrum::constant(std::size_t length, const Ratio& value) {
    return Spectrum(std::vector<Ratio>(length, value));
}

Ratio Spectrum::sum() const {
    Ratio total = 0;
    for (const auto& v : values_) total += v;
    return total;
}

Spectrum Spectrum::padded(std::size_t length) const {
    if (length <= values_.size()) return *this;
    std::vector<Ratio> out = values_;
    out.resize(length, Ratio(0));
    return Spectrum(std::move(out));
}

Spectrum make_spectrum(std::vector<Ratio> values) { return Spectrum(std::move(values)); }

Spectrum parse_spectrum(const std::vector<std::string>& literals) {
    std::vector<Ratio> values;
    values.reserve(literals.size());
    for (const auto& s : literals) values.push_back(parse_ratio(s));
    return Spectrum(std::move(values));
}

std::vector<std::string> to_strings(const Spectrum& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (const auto& v : s) out.push_back(to_string(v));
    return out;
}

bool majorizes(const Spectrum& big, const Spectrum& small) {
    if (big.size() != small.size()) {
        throw Error(ErrorCode::LengthMismatch, "majorizes: lengths " + std::to_string(big.size()) + " and " +
                                                   std::to_string(small.size()));
    }
    Ratio big_prefix = 0;
    Ratio small_prefix = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        big_prefix += big[i];
        small_prefix += small[i];
        if (small_prefix > big_prefix) return false;
    }
    return big_prefix == small_prefix;
}

bool interlaces_over(const Spectrum& upper, const Spectrum& lower) {
    if (upper.size() != lower.size()) {
        throw Error(ErrorCode::LengthMismatch, "interlaces_over: lengths differ");
    }
    const std::size_t M = upper.size();
    for (std::size_t m = 0; m < M; ++m) {
        const Ratio& below = m + 1 < M ? upper[m + 1] : Ratio(0);
        if (lower[m] < below || upper[m] < lower[m]) return false;
    }
    return true;
}

Ratio tail_sum(const Spectrum& mu, std::size_t j) {
    Ratio total = 0;
    for (std::size_t n = j; n <= mu.size(); ++n) total += mu[n - 1];
    return total;
}

FeasibilityReport completion_feasible(const Spectrum& alpha, const Spectrum& lambda, const Spectrum& mu) {
    if (alpha.size() != lambda.size()) {
        throw Error(ErrorCode::LengthMismatch, "completion_feasible: alpha has " + std::to_string(alpha.size()) +
                                                   " entries, lambda has " + std::to_string(lambda.size()));
    }
    const std::size_t M = alpha.size();
    FeasibilityReport report;
    report.equality_gap = lambda.sum() - alpha.sum() - mu.sum();

    report.dominance_ok = true;
    for (std::size_t m = 0; m < M; ++m) {
        if (lambda[m] < alpha[m]) report.dominance_ok = false;
    }

    // j-th inequality: sum_{m=j..M} (lambda_m - alpha_{m-j+1})^+ <= sum_{n=j..N} mu_n
    Ratio rhs = mu.sum();
    for (std::size_t j = 1; j <= M; ++j) {
        if (j >= 2 && j - 1 <= mu.size()) rhs -= mu[j - 2];
        Ratio lhs = 0;
        for (std::size_t m = j; m <= M; ++m) lhs += positive_part(lambda[m - 1] - alpha[m - j]);
        if (lhs > rhs) report.violated_indices.push_back(j);
    }

    const bool conditions = report.equality_gap == 0 && report.violated_indices.empty();
    if (conditions && !report.dominance_ok) {
        throw Error(ErrorCode::InternalError, "trace equality and j = 1 inequality hold but lambda_m < alpha_m");
    }
    report.feasible = conditions && report.dominance_ok;
    return report;
}

bool classical_schur_horn_feasible(const Spectrum& lambda, const Spectrum& mu) {
    if (lambda.size() > mu.size()) {
        throw Error(ErrorCode::DimensionOrder, "classical Schur-Horn needs M <= N, got M = " +
                                                   std::to_string(lambda.size()) + ", N = " + std::to_string(mu.size()));
    }
    Ratio lambda_prefix = 0;
    Ratio mu_prefix = 0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        lambda_prefix += lambda[j];
        mu_prefix += mu[j];
        if (mu_prefix > lambda_prefix) return false;
    }
    return lambda.sum() == mu.sum();
}

}  // namespace framecomp
