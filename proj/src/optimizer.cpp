#include "framecomp/optimizer.hpp"

#include <algorithm>
#include <string>

#include "framecomp/error.hpp"

namespace framecomp {

ConstraintFunction::ConstraintFunction(std::size_t k, std::size_t j, const Spectrum& alpha,
                                       std::span<const Ratio> beta_tail, Ratio nu)
    : k_(k), j_(j), nu_(std::move(nu)) {
    const std::size_t M = alpha.size();
    if (j < 1 || j > k || k > M) {
        throw Error(ErrorCode::IndexRange, "constraint f_{k;j} needs 1 <= j <= k <= M");
    }
    if (beta_tail.size() != M - k) {
        throw Error(ErrorCode::LengthMismatch, "beta tail must hold M - k entries");
    }
    foundation_.assign(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(k - j + 1));
    offset_ = 0;
    for (std::size_t m = k + 1; m <= M; ++m) offset_ += positive_part(beta_tail[m - k - 1] - alpha[m - j]);
}

Ratio ConstraintFunction::operator()(const Ratio& t) const {
    Ratio value = offset_;
    for (const auto& a : foundation_) value += positive_part(t - a);
    return value;
}

Ratio ConstraintFunction::max_feasible() const {
    if (offset_ > nu_) {
        throw Error(ErrorCode::InternalError, "f_{" + std::to_string(k_) + ";" + std::to_string(j_) +
                                                  "} exceeds nu everywhere; preimage is empty");
    }
    // Pieces in increasing t: (-inf, a_L], [a_L, a_{L-1}], ..., [a_1, +inf).
    // On [a_i, a_{i-1}) exactly L - i + 1 terms are active.
    const std::size_t L = foundation_.size();
    for (std::size_t i = L; i >= 1; --i) {
        const Ratio& left = foundation_[i - 1];
        if (i > 1 && (*this)(foundation_[i - 2]) <= nu_) continue;
        const Ratio slope = static_cast<unsigned long>(L - i + 1);
        return left + (nu_ - (*this)(left)) / slope;
    }
    throw Error(ErrorCode::InternalError, "piece walk fell through");
}

Ratio constraint_value(const ConstraintFunction& cf, const Ratio& t) { return cf(t); }

const LevelTrace& OptimizerTrace::level(std::size_t k) const {
    for (const auto& l : levels) {
        if (l.k == k) return l;
    }
    throw Error(ErrorCode::IndexRange, "no trace for level " + std::to_string(k));
}

LevelResult solve_level(std::size_t k, const Spectrum& alpha, const Spectrum& mu, std::span<const Ratio> beta_tail,
                        const OptimizerOptions& options) {
    const std::size_t M = alpha.size();
    if (mu.size() < M) throw Error(ErrorCode::LengthMismatch, "solve_level expects mu padded to length >= M");

    LevelResult result;
    result.trace.k = k;
    Ratio nu = mu.sum();
    for (std::size_t j = 1; j <= k; ++j) {
        if (j > 1) nu -= mu[j - 2];
        ConstraintFunction f(k, j, alpha, beta_tail, nu);
        result.trace.endpoints.push_back(f.max_feasible());
    }
    result.beta_k = *std::min_element(result.trace.endpoints.begin(), result.trace.endpoints.end());
    for (std::size_t j = 1; j <= k; ++j) {
        if (result.trace.endpoints[j - 1] == result.beta_k) result.trace.binding_set.push_back(j);
    }
    result.trace.j_of_k = result.trace.binding_set.front();

    if (options.check_trailing_constraints) {
        for (std::size_t j = k + 1; j <= M; ++j) {
            Ratio lhs = 0;
            for (std::size_t m = j; m <= M; ++m) lhs += positive_part(beta_tail[m - k - 1] - alpha[m - j]);
            if (lhs > tail_sum(mu, j)) {
                throw Error(ErrorCode::InternalError, "trailing constraint j = " + std::to_string(j) +
                                                          " violated at level " + std::to_string(k));
            }
        }
    }
    return result;
}

namespace {

// Structural facts about the binding indices: f_{k;j}(beta_k) = nu_j on the
// binding set, alpha_{k-j(k)+1} <= beta_k, and j(k) <= j(k+1).
void check_level_structure(const Spectrum& alpha, const Spectrum& mu, const std::vector<Ratio>& beta,
                           const OptimizerTrace& trace) {
    const std::size_t M = alpha.size();
    std::size_t next_j = M + 1;
    for (const auto& level : trace.levels) {
        const std::size_t k = level.k;
        const Ratio& beta_k = beta[k - 1];
        const std::span<const Ratio> tail(beta.data() + k, M - k);
        for (std::size_t j : level.binding_set) {
            ConstraintFunction f(k, j, alpha, tail, tail_sum(mu, j));
            if (f(beta_k) != f.nu()) {
                throw Error(ErrorCode::InternalError, "binding constraint not tight at level " + std::to_string(k));
            }
        }
        if (alpha[k - level.j_of_k] > beta_k) {
            throw Error(ErrorCode::InternalError, "alpha_{k-j(k)+1} > beta_k at level " + std::to_string(k));
        }
        if (next_j <= M && level.j_of_k > next_j) {
            throw Error(ErrorCode::InternalError, "j(k) > j(k+1) at level " + std::to_string(k));
        }
        next_j = level.j_of_k;
    }
}

void require_nonempty(const Spectrum& alpha) {
    if (alpha.empty()) throw Error(ErrorCode::DimensionMismatch, "alpha must have at least one entry");
}

}  // namespace

CompletionResult optimal_completion(const Spectrum& alpha, const Spectrum& mu, const OptimizerOptions& options) {
    require_nonempty(alpha);
    const std::size_t M = alpha.size();
    const Spectrum padded = mu.padded(M);

    std::vector<Ratio> beta(M);
    OptimizerTrace trace;
    for (std::size_t k = M; k >= 1; --k) {
        const std::span<const Ratio> tail(beta.data() + k, M - k);
        LevelResult level = solve_level(k, alpha, padded, tail, options);
        beta[k - 1] = level.beta_k;
        trace.levels.push_back(std::move(level.trace));
    }
    check_level_structure(alpha, padded, beta, trace);

    CompletionResult result{Spectrum(std::move(beta)), std::move(trace)};
    if (result.beta.sum() != alpha.sum() + mu.sum()) {
        throw Error(ErrorCode::InternalError, "optimal completion has the wrong trace");
    }
    return result;
}

BreakpointTable build_breakpoint_table(const Spectrum& alpha, const Spectrum& mu) {
    const std::size_t M = alpha.size();
    BreakpointTable table;
    table.g.assign(M, std::vector<Ratio>(M, Ratio(0)));
    for (std::size_t m = 1; m <= M; ++m) {
        for (std::size_t i = 1; i <= M; ++i) {
            Ratio prev = m > 1 ? table.g[m - 2][i - 1] : Ratio(0);
            table.g[m - 1][i - 1] = prev + positive_part(alpha[i - 1] - alpha[m - 1]);
        }
    }
    // nu_j for j = 1..M over mu zero-padded to length >= M, one backward pass.
    table.tail_mu.assign(M, Ratio(0));
    Ratio running = 0;
    for (std::size_t n = std::max(M, mu.size()); n >= 1; --n) {
        if (n <= mu.size()) running += mu[n - 1];
        if (n <= M) table.tail_mu[n - 1] = running;
    }
    return table;
}

Spectrum optimal_completion_fast(const Spectrum& alpha, const Spectrum& mu) {
    require_nonempty(alpha);
    const std::size_t M = alpha.size();
    const BreakpointTable table = build_breakpoint_table(alpha, mu);

    // alpha_prefix[i] = alpha_1 + ... + alpha_i
    std::vector<Ratio> alpha_prefix(M + 1, Ratio(0));
    for (std::size_t i = 1; i <= M; ++i) alpha_prefix[i] = alpha_prefix[i - 1] + alpha[i - 1];

    std::vector<Ratio> beta(M);
    for (std::size_t k = M; k >= 1; --k) {
        Ratio beta_k;
        for (std::size_t j = 1; j <= k; ++j) {
            Ratio delta = table.tail_mu[j - 1];
            for (std::size_t m = k + 1; m <= M; ++m) delta -= positive_part(beta[m - 1] - alpha[m - j]);
            if (sgn(delta) < 0) throw Error(ErrorCode::InternalError, "negative budget in fast path");

            // g_L(alpha_i) is nonincreasing in i and vanishes for i >= L, so the
            // smallest i with g_L(alpha_i) <= delta lies in 1..L.
            const std::size_t L = k - j + 1;
            const auto& row = table.g[L - 1];
            const auto it = std::partition_point(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(L),
                                                 [&](const Ratio& g) { return g > delta; });
            const std::size_t i = static_cast<std::size_t>(it - row.begin()) + 1;

            // On [alpha_i, alpha_{i-1}): g_L(t) = sum_{l=i..L} (t - alpha_l).
            const Ratio count = static_cast<unsigned long>(L - i + 1);
            Ratio t = (delta + alpha_prefix[L] - alpha_prefix[i - 1]) / count;
            if (j == 1 || t < beta_k) beta_k = std::move(t);
        }
        beta[k - 1] = std::move(beta_k);
    }
    return Spectrum(std::move(beta));
}

}  // namespace framecomp
