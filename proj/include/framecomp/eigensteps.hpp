#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "framecomp/spectra.hpp"

namespace framecomp {

/// Spectra of the partial completions A + sum_{n<=P} phi_n phi_n^*, P = 0..N.
///
/// A valid table has row 0 = alpha, row N = lambda, row-P trace
/// sum(alpha) + mu_1 + ... + mu_P, and row P interlacing over row P-1.
/// Construction does not validate; use validate_eigensteps.
struct EigenstepsTable {
    Spectrum alpha;
    Spectrum lambda;
    Spectrum mu;
    std::vector<Spectrum> rows;

    std::size_t dimension() const noexcept { return alpha.size(); }
    std::size_t steps() const noexcept { return mu.size(); }
};

/// The two chopped spectra bracketing one backward eigenstep, and the
/// interpolated spectrum kappa between them.
struct ChopResult {
    std::size_t p = 0;
    Spectrum eta_p;
    Spectrum eta_p_plus_1;
    Spectrum kappa;
    Ratio interpolation_t;
};

/// eta_{p;m} = max{lambda_{m+1}, min{lambda_m, alpha_{m-p+1}}} for one-based
/// p in 1..M+1, with lambda_{M+1} := 0 and alpha_m := +inf for m <= 0.
Spectrum chopped_spectrum(const Spectrum& lambda, const Spectrum& alpha, std::size_t p);

/// One eigenstep backwards from `lambda`: removes mu_N from the trace while
/// keeping the remaining lengths mu_1..mu_{N-1} feasible. Picks the smallest
/// p with tau_p <= sigma <= tau_{p+1} and interpolates linearly between the
/// p-th and (p+1)-th chopped spectra.
///
/// Throws Error{HypothesisViolated} unless completion_feasible(alpha, lambda, mu)
/// holds with mu nonempty.
ChopResult backward_step(const Spectrum& lambda, const Spectrum& alpha, const Spectrum& mu);

/// Builds eigensteps from alpha to lambda by repeated backward steps.
/// Throws Error{Infeasible} if lambda is not an (alpha, mu)-completion.
EigenstepsTable eigensteps_sequence(const Spectrum& alpha, const Spectrum& lambda, const Spectrum& mu);

struct ConditionCheck {
    bool pass = true;
    /// One-based (P, m) of the first offending entry; m = 0 when the
    /// condition concerns a whole row.
    std::optional<std::pair<std::size_t, std::size_t>> first_offense;
};

struct ValidationReport {
    ConditionCheck initial;     // (i)   row 0 = alpha
    ConditionCheck terminal;    // (ii)  row N = lambda
    ConditionCheck trace;       // (iii) row sums
    ConditionCheck interlacing; // (iv)  row P interlaces over row P-1
    /// Table shape: N + 1 rows, each of length M.
    ConditionCheck shape;

    bool ok() const noexcept {
        return shape.pass && initial.pass && terminal.pass && trace.pass && interlacing.pass;
    }
};

ValidationReport validate_eigensteps(const EigenstepsTable& table);

}  // namespace framecomp
