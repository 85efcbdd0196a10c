#pragma once

// Floating-point construction of the new frame vectors. Spectra stay exact;
// doubles appear only where square roots force them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "framecomp/eigensteps.hpp"
#include "framecomp/spectra.hpp"

namespace framecomp {

using Vector = std::vector<double>;

/// Dense symmetric M x M matrix, row-major.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dimension) : dim_(dimension), data_(dimension * dimension, 0.0) {}

    /// Throws Error{NotSymmetric} if entries differ from their transpose by more than 1e-12.
    SymmetricMatrix(std::size_t dimension, std::vector<double> row_major);

    static SymmetricMatrix diagonal(std::span<const double> values);
    static SymmetricMatrix diagonal(const Spectrum& values);

    std::size_t dimension() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    std::span<const double> data() const noexcept { return data_; }

    /// this + v v^T
    SymmetricMatrix rank_one_update(std::span<const double> v) const;

    double trace() const;
    double frobenius_norm() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    /// Sorted descending.
    std::vector<double> values;
    /// vectors[i] is the unit eigenvector for values[i].
    std::vector<Vector> vectors;
};

/// Cyclic Jacobi rotations. Stops when the off-diagonal Frobenius mass is
/// below 1e-14 * |S|_F; throws Error{NotConverged} after 64 sweeps.
EigenDecomposition sym_eigen(const SymmetricMatrix& s);

std::vector<double> to_doubles(const Spectrum& s);

/// Squared norm of the new vector's component in each eigenspace of the
/// previous operator, keyed by distinct eigenvalue of `prev`:
///
///     w(lambda) = -lim_{x -> lambda} (x - lambda) prod(x - next_m) / prod(x - prev_m)
///
/// evaluated exactly after cancelling common factors. Values sum to
/// sum(next) - sum(prev). Throws Error{InterlacingViolated}.
std::map<Ratio, Ratio> residue_norms(const Spectrum& prev, const Spectrum& next);

struct AppendResult {
    Vector phi;
    SymmetricMatrix updated;
    /// Number of alternative eigenspace directions tried after the default
    /// choice failed post-verification; 0 on the normal path.
    std::size_t fallback_attempts = 0;
};

struct SynthesisOptions {
    /// Absolute spectral tolerance, scaled by max(1, operator norm).
    double tol = 1e-8;
    /// Seeds the random directions used if post-verification fails.
    std::uint64_t seed = 0;
    std::size_t max_fallback_attempts = 8;
};

/// Adds phi phi^T to `s` (spectrum `prev`) so the result has spectrum `next`.
/// The default phi uses the first eigensolver basis vector of each eigenspace.
/// Throws Error{SpectrumMismatch} if `s` does not have spectrum `prev`,
/// Error{InterlacingViolated}, or Error{PostVerificationFailed}.
AppendResult append_vector(const SymmetricMatrix& s, const Spectrum& prev, const Spectrum& next,
                           const SynthesisOptions& options = {});

struct VectorSet {
    std::vector<Vector> vectors;
    Spectrum target_norms_sq;
    /// Total fallback attempts across all appended vectors.
    std::size_t fallback_attempts = 0;
};

/// Realizes every row of the table as the spectrum of a partial completion of A.
VectorSet complete_frame(const SymmetricMatrix& a, const EigenstepsTable& table, const SynthesisOptions& options = {});

/// The same completion problem shifted so it starts from the zero operator:
/// M extra vectors of squared length alpha_n + shift build A + shift I, after
/// which the original lengths follow.
struct LiftedProblem {
    Ratio shift;
    EigenstepsTable table;

    const Spectrum& lifted_lengths() const noexcept { return table.mu; }
};

/// Uses shift = max{0, mu_1 - alpha_M}. Throws Error{InvalidTable}.
LiftedProblem lift_problem(const EigenstepsTable& table);

struct LiftedRealization {
    /// sum_{n<=M} psi_n psi_n^T - shift I, which has spectrum alpha.
    SymmetricMatrix a;
    /// psi_{M+1}, ..., psi_{M+N}.
    VectorSet vectors;
};

/// Builds A and the completion vectors together, starting from zero.
LiftedRealization realize_lifted(const EigenstepsTable& table, const SynthesisOptions& options = {});

struct VerificationReport {
    bool pass = false;
    double max_spectrum_deviation = 0.0;
    /// max |(|phi_n|^2 - mu_n)| / mu_n, absolute where mu_n = 0
    double max_norm_deviation = 0.0;
    std::vector<double> computed_spectrum;
};

/// Recomputes A + sum phi phi^T and compares its spectrum to `target` and
/// the squared norms to `vs.target_norms_sq`, both within `tol`.
VerificationReport verify_completion(const SymmetricMatrix& a, const VectorSet& vs, const Spectrum& target, double tol);

}  // namespace framecomp
