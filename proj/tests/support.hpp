#pragma once

// Shared generators and independent oracles for the test suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "framecomp/spectra.hpp"
#include "framecomp/synthesis.hpp"

namespace framecomp::testing {

inline Spectrum spec(std::initializer_list<const char*> literals) {
    std::vector<std::string> s(literals.begin(), literals.end());
    return parse_spectrum(s);
}

inline Ratio q(const char* literal) { return parse_ratio(literal); }

/// Uniform rational in [0, max_value] with denominator in 1..max_den.
inline Ratio random_ratio(std::mt19937_64& rng, long max_value = 4, long max_den = 16) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    const long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(0, max_value * den);
    Ratio r(num_dist(rng), den);
    r.canonicalize();
    return r;
}

inline Spectrum random_spectrum(std::mt19937_64& rng, std::size_t length, long max_value = 4, long max_den = 16) {
    std::vector<Ratio> values;
    for (std::size_t i = 0; i < length; ++i) values.push_back(random_ratio(rng, max_value, max_den));
    std::sort(values.begin(), values.end(), [](const Ratio& a, const Ratio& b) { return a > b; });
    return Spectrum(std::move(values));
}

inline std::size_t random_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random vectors with |phi_n|^2 = mu_n; returns the sorted spectrum of
/// diag(alpha) + sum phi phi^T computed with the Jacobi solver.
inline std::vector<double> random_completion_spectrum(std::mt19937_64& rng, const Spectrum& alpha, const Spectrum& mu) {
    const std::size_t M = alpha.size();
    SymmetricMatrix op = SymmetricMatrix::diagonal(alpha);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const auto& m : mu) {
        Vector phi(M);
        double norm_sq = 0.0;
        for (double& x : phi) {
            x = gauss(rng);
            norm_sq += x * x;
        }
        const double scale = std::sqrt(m.get_d() / norm_sq);
        for (double& x : phi) x *= scale;
        op = op.rank_one_update(phi);
    }
    return sym_eigen(op).values;
}

/// Prefix-sum slack min_j (sum_{i<=j} big_i - sum_{i<=j} small_i), with the
/// final (total) difference taken in absolute value as a negative penalty.
inline double majorization_slack(const std::vector<double>& big, const std::vector<double>& small) {
    double slack = 0.0;
    double pb = 0.0;
    double ps = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        pb += big[i];
        ps += small[i];
        slack = std::min(slack, pb - ps);
    }
    return std::min(slack, -std::abs(pb - ps));
}

/// Direct evaluation of the j-th constraint at level k through the
/// water-filled intermediate spectrum gamma_{k;m}(t): beta_m above level k,
/// max{alpha_m, t} at or below it.
inline Ratio water_filled_constraint(const Spectrum& alpha, const std::vector<Ratio>& beta_tail, std::size_t k,
                                     std::size_t j, const Ratio& t) {
    const std::size_t M = alpha.size();
    Ratio total = 0;
    for (std::size_t m = j; m <= M; ++m) {
        const Ratio gamma = m > k ? beta_tail[m - k - 1] : max(alpha[m - 1], t);
        total += positive_part(gamma - alpha[m - j]);
    }
    return total;
}

/// All feasible completions whose entries are multiples of 1/grid.
/// Exponential; intended for M <= 3 with small totals.
inline std::vector<Spectrum> enumerate_grid_completions(const Spectrum& alpha, const Spectrum& mu, long grid) {
    const std::size_t M = alpha.size();
    const Ratio total = alpha.sum() + mu.sum();
    const Ratio step(1, grid);
    std::vector<Spectrum> out;
    std::vector<Ratio> current;
    auto recurse = [&](auto&& self, Ratio remaining, const Ratio& cap) -> void {
        const std::size_t m = current.size();
        if (m + 1 == M) {
            if (remaining > cap || remaining < alpha[m]) return;
            Ratio scaled = remaining * grid;
            if (scaled.get_den() != 1) return;
            current.push_back(remaining);
            Spectrum lambda(current);
            if (completion_feasible(alpha, lambda, mu).feasible) out.push_back(std::move(lambda));
            current.pop_back();
            return;
        }
        mpz_class first;
        const mpz_class scaled_num = alpha[m].get_num() * grid;
        mpz_cdiv_q(first.get_mpz_t(), scaled_num.get_mpz_t(), alpha[m].get_den().get_mpz_t());
        for (Ratio v = Ratio(first) / grid; v <= cap && v <= remaining; v += step) {
            current.push_back(v);
            self(self, remaining - v, v);
            current.pop_back();
        }
    };
    recurse(recurse, total, total);
    return out;
}

}  // namespace framecomp::testing
