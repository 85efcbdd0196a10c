#pragma once

// Majorization-minimal completion spectrum by recursive water filling.
//
// Levels are filled top down, k = M, M-1, ..., 1. At level k the water
// level t is raised until one of the constraints
//
//     f_{k;j}(t) = sum_{m=j..k} (t - alpha_{m-j+1})^+ + sum_{m=k+1..M} (beta_m - alpha_{m-j+1})^+  <=  nu_j
//
// with nu_j = sum_{n=j..N} mu_n becomes tight; beta_k is that level. Each
// preimage f_{k;j}^{-1}(-inf, nu_j] is a half line (-inf, b_{k;j}] and
// beta_k = min_j b_{k;j}.

#include <cstddef>
#include <vector>

#include "framecomp/spectra.hpp"

namespace framecomp {

/// The constraint map t -> f_{k;j}(t) for fixed level k and index j
/// (both one-based, 1 <= j <= k <= M).
class ConstraintFunction {
public:
    /// `beta_tail` holds beta_{k+1..M}; `nu` is sum_{n=j..N} mu_n.
    ConstraintFunction(std::size_t k, std::size_t j, const Spectrum& alpha, std::span<const Ratio> beta_tail, Ratio nu);

    std::size_t k() const noexcept { return k_; }
    std::size_t j() const noexcept { return j_; }
    /// sum_{m=k+1..M} (beta_m - alpha_{m-j+1})^+, independent of t.
    const Ratio& offset() const noexcept { return offset_; }
    const Ratio& nu() const noexcept { return nu_; }

    Ratio operator()(const Ratio& t) const;

    /// b_{k;j} = max{ t : f(t) <= nu }, found by walking the linear pieces
    /// in increasing t. Throws Error{InternalError} if the preimage is empty.
    Ratio max_feasible() const;

private:
    std::size_t k_;
    std::size_t j_;
    /// alpha_1 .. alpha_{k-j+1}, the breakpoints of the t-dependent part.
    std::vector<Ratio> foundation_;
    Ratio offset_;
    Ratio nu_;
};

Ratio constraint_value(const ConstraintFunction& cf, const Ratio& t);

struct LevelTrace {
    std::size_t k = 0;
    /// b_{k;1}, ..., b_{k;k}
    std::vector<Ratio> endpoints;
    /// One-based j with b_{k;j} = beta_k, ascending.
    std::vector<std::size_t> binding_set;
    /// min(binding_set)
    std::size_t j_of_k = 0;
};

struct OptimizerTrace {
    /// Ordered by k descending, the order in which levels are solved.
    std::vector<LevelTrace> levels;

    const LevelTrace& level(std::size_t k) const;
};

struct OptimizerOptions {
    /// Also assert the M - k constraints j > k at every level; they always
    /// hold, so this is a debugging aid.
    bool check_trailing_constraints = false;
};

struct LevelResult {
    Ratio beta_k;
    LevelTrace trace;
};

/// Solves level k. `mu` must already be zero-padded to at least alpha.size()
/// entries; `beta_tail` is beta_{k+1..M}.
LevelResult solve_level(std::size_t k, const Spectrum& alpha, const Spectrum& mu, std::span<const Ratio> beta_tail,
                        const OptimizerOptions& options = {});

struct CompletionResult {
    Spectrum beta;
    OptimizerTrace trace;
};

/// Reference implementation; every level's trace is checked against the
/// structural properties of the binding index j(k).
CompletionResult optimal_completion(const Spectrum& alpha, const Spectrum& mu, const OptimizerOptions& options = {});

/// Precomputed breakpoint data for the fast path.
struct BreakpointTable {
    /// g[m-1][i-1] = sum_{l=1..m} (alpha_i - alpha_l)^+, i.e. g_m evaluated at alpha_i.
    std::vector<std::vector<Ratio>> g;
    /// tail_mu[j-1] = sum_{n=j..N} mu_n for j = 1..M.
    std::vector<Ratio> tail_mu;

    const Ratio& at(std::size_t m, std::size_t i) const { return g[m - 1][i - 1]; }
};

BreakpointTable build_breakpoint_table(const Spectrum& alpha, const Spectrum& mu);

/// Same output as optimal_completion in O(M^3 + N) rational operations.
Spectrum optimal_completion_fast(const Spectrum& alpha, const Spectrum& mu);

}  // namespace framecomp
