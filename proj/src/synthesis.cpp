#include "framecomp/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "framecomp/error.hpp"

namespace framecomp {

SymmetricMatrix::SymmetricMatrix(std::size_t dimension, std::vector<double> row_major)
    : dim_(dimension), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim_ * dim_) + " entries");
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > 1e-12) {
                throw Error(ErrorCode::NotSymmetric,
                            "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") differs from its transpose");
            }
        }
    }
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> values) {
    SymmetricMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const Spectrum& values) { return diagonal(to_doubles(values)); }

SymmetricMatrix SymmetricMatrix::rank_one_update(std::span<const double> v) const {
    if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "rank-one update with wrong vector length");
    SymmetricMatrix out = *this;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(i, j) += v[i] * v[j];
    }
    return out;
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymmetricMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

std::vector<double> to_doubles(const Spectrum& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& v : s) out.push_back(v.get_d());
    return out;
}

EigenDecomposition sym_eigen(const SymmetricMatrix& s) {
    const std::size_t n = s.dimension();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(s(i, j) - s(j, i)) > 1e-12) throw Error(ErrorCode::NotSymmetric, "sym_eigen input");
        }
    }

    SymmetricMatrix a = s;
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double threshold = 1e-14 * s.frobenius_norm();
    constexpr int kMaxSweeps = 64;
    bool converged = false;
    for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) off += a(i, j) * a(i, j);
            }
        }
        if (std::sqrt(off) <= threshold) {
            converged = true;
            break;
        }
        if (sweep == kMaxSweeps) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = a(p, r) = c * arp - sn * arq;
                    a(r, q) = a(q, r) = sn * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v[r * n + p];
                    const double vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - sn * vrq;
                    v[r * n + q] = sn * vrp + c * vrq;
                }
            }
        }
    }
    if (!converged) throw Error(ErrorCode::NotConverged, "Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    for (std::size_t idx : order) {
        out.values.push_back(a(idx, idx));
        Vector col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v[r * n + idx];
        out.vectors.push_back(std::move(col));
    }
    return out;
}

std::map<Ratio, Ratio> residue_norms(const Spectrum& prev, const Spectrum& next) {
    if (prev.size() != next.size()) throw Error(ErrorCode::LengthMismatch, "residue_norms: lengths differ");
    if (!interlaces_over(next, prev)) throw Error(ErrorCode::InterlacingViolated, "next does not interlace over prev");

    // Cancel equal linear factors between numerator (next) and denominator (prev).
    std::vector<Ratio> numer;
    std::vector<Ratio> denom;
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < next.size() || b < prev.size()) {
        if (a < next.size() && b < prev.size() && next[a] == prev[b]) {
            ++a;
            ++b;
        } else if (b == prev.size() || (a < next.size() && next[a] > prev[b])) {
            numer.push_back(next[a++]);
        } else {
            denom.push_back(prev[b++]);
        }
    }

    std::map<Ratio, Ratio> out;
    Ratio total = 0;
    for (const auto& lambda : prev) {
        if (out.contains(lambda)) continue;
        const auto poles = std::count(denom.begin(), denom.end(), lambda);
        if (poles == 0) {
            out.emplace(lambda, Ratio(0));
            continue;
        }
        if (poles > 1) throw Error(ErrorCode::InterlacingViolated, "pole of order > 1 at " + to_string(lambda));
        Ratio value = -1;
        for (const auto& x : numer) value *= lambda - x;
        for (const auto& x : denom) {
            if (x != lambda) value /= lambda - x;
        }
        if (sgn(value) < 0) throw Error(ErrorCode::InternalError, "negative residue at " + to_string(lambda));
        total += value;
        out.emplace(lambda, std::move(value));
    }
    if (total != next.sum() - prev.sum()) throw Error(ErrorCode::InternalError, "residues do not sum to the trace gap");
    return out;
}

namespace {

double spectral_scale(const std::vector<double>& values) {
    double scale = 1.0;
    for (double x : values) scale = std::max(scale, std::abs(x));
    return scale;
}

double max_deviation(const std::vector<double>& computed, const std::vector<double>& target) {
    double dev = 0.0;
    for (std::size_t i = 0; i < computed.size(); ++i) dev = std::max(dev, std::abs(computed[i] - target[i]));
    return dev;
}

// Index ranges [first, last) of equal entries in a sorted spectrum.
std::vector<std::pair<std::size_t, std::size_t>> eigenspace_groups(const Spectrum& s) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] == s[i]) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    return groups;
}

Vector unit_in_span(const std::vector<Vector>& basis, std::size_t first, std::size_t last, std::mt19937_64* rng) {
    const std::size_t n = basis[first].size();
    Vector u(n, 0.0);
    if (rng == nullptr) {
        u = basis[first];
    } else {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t i = first; i < last; ++i) {
            const double c = gauss(*rng);
            for (std::size_t r = 0; r < n; ++r) u[r] += c * basis[i][r];
        }
    }
    double norm = 0.0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : u) x /= norm;
    return u;
}

}  // namespace

AppendResult append_vector(const SymmetricMatrix& s, const Spectrum& prev, const Spectrum& next,
                           const SynthesisOptions& options) {
    const std::size_t M = s.dimension();
    if (prev.size() != M || next.size() != M) throw Error(ErrorCode::DimensionMismatch, "append_vector: spectrum length");

    const EigenDecomposition eig = sym_eigen(s);
    const std::vector<double> prev_d = to_doubles(prev);
    if (max_deviation(eig.values, prev_d) > options.tol * spectral_scale(eig.values)) {
        throw Error(ErrorCode::SpectrumMismatch, "operator spectrum differs from the previous eigenstep");
    }
    const auto residues = residue_norms(prev, next);
    const auto groups = eigenspace_groups(prev);
    const std::vector<double> next_d = to_doubles(next);

    std::mt19937_64 rng(options.seed);
    for (std::size_t attempt = 0; attempt <= options.max_fallback_attempts; ++attempt) {
        Vector phi(M, 0.0);
        for (const auto& [first, last] : groups) {
            const double weight = std::sqrt(residues.at(prev[first]).get_d());
            if (weight == 0.0) continue;
            const Vector u = unit_in_span(eig.vectors, first, last, attempt == 0 ? nullptr : &rng);
            for (std::size_t r = 0; r < M; ++r) phi[r] += weight * u[r];
        }
        SymmetricMatrix updated = s.rank_one_update(phi);
        const auto values = sym_eigen(updated).values;
        if (max_deviation(values, next_d) <= options.tol * spectral_scale(values)) {
            return AppendResult{std::move(phi), std::move(updated), attempt};
        }
    }
    throw Error(ErrorCode::PostVerificationFailed, "updated operator spectrum differs from the next eigenstep");
}

VectorSet complete_frame(const SymmetricMatrix& a, const EigenstepsTable& table, const SynthesisOptions& options) {
    if (a.dimension() != table.dimension()) throw Error(ErrorCode::DimensionMismatch, "complete_frame: A dimension");
    const auto values = sym_eigen(a).values;
    if (max_deviation(values, to_doubles(table.alpha)) > options.tol * spectral_scale(values)) {
        throw Error(ErrorCode::SpectrumMismatch, "A does not have spectrum alpha");
    }

    VectorSet out;
    out.target_norms_sq = table.mu;
    SymmetricMatrix current = a;
    for (std::size_t P = 1; P < table.rows.size(); ++P) {
        SynthesisOptions step = options;
        step.seed = options.seed + P;
        AppendResult r = append_vector(current, table.rows[P - 1], table.rows[P], step);
        out.fallback_attempts += r.fallback_attempts;
        out.vectors.push_back(std::move(r.phi));
        current = std::move(r.updated);
    }
    return out;
}

LiftedProblem lift_problem(const EigenstepsTable& table) {
    if (!validate_eigensteps(table).ok()) throw Error(ErrorCode::InvalidTable, "lift_problem needs valid eigensteps");
    const std::size_t M = table.dimension();
    const std::size_t N = table.steps();

    LiftedProblem lifted;
    lifted.shift = 0;
    if (N > 0 && M > 0) lifted.shift = max(Ratio(0), Ratio(table.mu[0] - table.alpha[M - 1]));
    const Ratio& shift = lifted.shift;

    std::vector<Ratio> lengths;
    for (const auto& a : table.alpha) lengths.push_back(a + shift);
    for (const auto& m : table.mu) lengths.push_back(m);

    std::vector<Spectrum> rows;
    for (std::size_t P = 0; P <= M; ++P) {
        std::vector<Ratio> row(M, Ratio(0));
        for (std::size_t m = 1; m <= P; ++m) row[m - 1] = table.alpha[m - 1] + shift;
        rows.emplace_back(std::move(row));
    }
    auto shifted = [&](const Spectrum& s) {
        std::vector<Ratio> row;
        for (const auto& x : s) row.push_back(x + shift);
        return Spectrum(std::move(row));
    };
    for (std::size_t P = 1; P <= N; ++P) rows.push_back(shifted(table.rows[P]));

    lifted.table = EigenstepsTable{Spectrum::zeros(M), shifted(table.lambda), Spectrum(std::move(lengths)), std::move(rows)};
    return lifted;
}

LiftedRealization realize_lifted(const EigenstepsTable& table, const SynthesisOptions& options) {
    const LiftedProblem lifted = lift_problem(table);
    const std::size_t M = table.dimension();
    const double shift = lifted.shift.get_d();

    LiftedRealization out;
    out.vectors.target_norms_sq = table.mu;
    SymmetricMatrix current(M);
    for (std::size_t P = 1; P < lifted.table.rows.size(); ++P) {
        SynthesisOptions step = options;
        step.seed = options.seed + P;
        AppendResult r = append_vector(current, lifted.table.rows[P - 1], lifted.table.rows[P], step);
        out.vectors.fallback_attempts += r.fallback_attempts;
        current = std::move(r.updated);
        if (P == M) {
            out.a = current;
            for (std::size_t i = 0; i < M; ++i) out.a(i, i) -= shift;
        } else if (P > M) {
            out.vectors.vectors.push_back(std::move(r.phi));
        }
    }
    if (M == 0 || lifted.table.rows.size() == 1) out.a = SymmetricMatrix(M);
    return out;
}

VerificationReport verify_completion(const SymmetricMatrix& a, const VectorSet& vs, const Spectrum& target, double tol) {
    const std::size_t M = a.dimension();
    if (target.size() != M || vs.vectors.size() != vs.target_norms_sq.size()) {
        throw Error(ErrorCode::DimensionMismatch, "verify_completion: sizes disagree");
    }
    SymmetricMatrix op = a;
    VerificationReport report;
    for (std::size_t n = 0; n < vs.vectors.size(); ++n) {
        const Vector& phi = vs.vectors[n];
        if (phi.size() != M) throw Error(ErrorCode::DimensionMismatch, "vector " + std::to_string(n + 1) + " has wrong length");
        op = op.rank_one_update(phi);
        double norm_sq = 0.0;
        for (double x : phi) norm_sq += x * x;
        const double mu = vs.target_norms_sq[n].get_d();
        const double dev = mu > 0.0 ? std::abs(norm_sq - mu) / mu : std::abs(norm_sq);
        report.max_norm_deviation = std::max(report.max_norm_deviation, dev);
    }
    report.computed_spectrum = sym_eigen(op).values;
    report.max_spectrum_deviation = max_deviation(report.computed_spectrum, to_doubles(target));
    report.pass = report.max_spectrum_deviation <= tol * spectral_scale(report.computed_spectrum) &&
                  report.max_norm_deviation <= tol;
    return report;
}

}  // namespace framecomp
