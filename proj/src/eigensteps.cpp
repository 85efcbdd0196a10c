#include "framecomp/eigensteps.hpp"

#include <string>

#include "framecomp/error.hpp"

namespace framecomp {

Spectrum chopped_spectrum(const Spectrum& lambda, const Spectrum& alpha, std::size_t p) {
    const std::size_t M = lambda.size();
    if (alpha.size() != M) throw Error(ErrorCode::LengthMismatch, "chopped_spectrum: alpha and lambda differ in length");
    if (p < 1 || p > M + 1) throw Error(ErrorCode::IndexRange, "chop index p must lie in 1..M+1");

    std::vector<Ratio> eta;
    eta.reserve(M);
    for (std::size_t m = 1; m <= M; ++m) {
        const Ratio below = m < M ? lambda[m] : Ratio(0);
        // alpha_{m-p+1} is +inf when m - p + 1 <= 0, so the min is lambda_m.
        const Ratio& capped = m + 1 > p ? min(lambda[m - 1], alpha[m - p]) : lambda[m - 1];
        eta.push_back(max(below, capped));
    }
    return Spectrum(std::move(eta));
}

ChopResult backward_step(const Spectrum& lambda, const Spectrum& alpha, const Spectrum& mu) {
    const std::size_t M = lambda.size();
    if (alpha.size() != M) throw Error(ErrorCode::LengthMismatch, "backward_step: alpha and lambda differ in length");
    if (M == 0 || mu.empty()) {
        throw Error(ErrorCode::HypothesisViolated, "backward_step needs M >= 1 and at least one length");
    }
    if (!completion_feasible(alpha, lambda, mu).feasible) {
        throw Error(ErrorCode::HypothesisViolated, "lambda is not an (alpha, mu)-completion");
    }

    const Ratio sigma = lambda.sum() - mu[mu.size() - 1];
    std::vector<Spectrum> chops;
    std::vector<Ratio> tau;
    chops.reserve(M + 1);
    for (std::size_t p = 1; p <= M + 1; ++p) {
        chops.push_back(chopped_spectrum(lambda, alpha, p));
        tau.push_back(chops.back().sum());
    }

    for (std::size_t p = 1; p <= M; ++p) {
        const Ratio& lo = tau[p - 1];
        const Ratio& hi = tau[p];
        if (!(lo <= sigma && sigma <= hi)) continue;

        ChopResult result;
        result.p = p;
        result.interpolation_t = hi == lo ? Ratio(0) : Ratio((sigma - lo) / (hi - lo));
        const Spectrum& below = chops[p - 1];
        const Spectrum& above = chops[p];
        std::vector<Ratio> kappa;
        kappa.reserve(M);
        for (std::size_t m = 0; m < M; ++m) kappa.push_back(below[m] + (above[m] - below[m]) * result.interpolation_t);
        result.kappa = Spectrum(std::move(kappa));
        result.eta_p = below;
        result.eta_p_plus_1 = above;
        return result;
    }
    throw Error(ErrorCode::InternalError, "target trace not bracketed by chopped spectra");
}

EigenstepsTable eigensteps_sequence(const Spectrum& alpha, const Spectrum& lambda, const Spectrum& mu) {
    const auto report = completion_feasible(alpha, lambda, mu);
    if (!report.feasible) throw Error(ErrorCode::Infeasible, "lambda is not an (alpha, mu)-completion");

    const std::size_t N = mu.size();
    EigenstepsTable table{alpha, lambda, mu, std::vector<Spectrum>(N + 1)};
    table.rows[N] = lambda;
    std::vector<Ratio> lengths(mu.begin(), mu.end());
    for (std::size_t P = N; P >= 1; --P) {
        lengths.resize(P);
        const Spectrum prefix(lengths);
        table.rows[P - 1] = backward_step(table.rows[P], alpha, prefix).kappa;
    }
    if (table.rows[0] != alpha) {
        throw Error(ErrorCode::InternalError, "backward steps did not terminate at alpha");
    }
    return table;
}

namespace {

void fail(ConditionCheck& check, std::size_t P, std::size_t m) {
    if (check.pass) check.first_offense = std::make_pair(P, m);
    check.pass = false;
}

}  // namespace

ValidationReport validate_eigensteps(const EigenstepsTable& table) {
    ValidationReport report;
    const std::size_t M = table.alpha.size();
    const std::size_t N = table.mu.size();

    if (table.rows.size() != N + 1 || table.lambda.size() != M) {
        fail(report.shape, table.rows.size(), 0);
    }
    for (std::size_t P = 0; P < table.rows.size(); ++P) {
        if (table.rows[P].size() != M) fail(report.shape, P, 0);
    }
    if (!report.shape.pass) {
        report.initial.pass = report.terminal.pass = report.trace.pass = report.interlacing.pass = false;
        return report;
    }

    for (std::size_t m = 1; m <= M; ++m) {
        if (table.rows[0][m - 1] != table.alpha[m - 1]) fail(report.initial, 0, m);
        if (table.rows[N][m - 1] != table.lambda[m - 1]) fail(report.terminal, N, m);
    }

    Ratio expected = table.alpha.sum();
    for (std::size_t P = 0; P <= N; ++P) {
        if (P > 0) expected += table.mu[P - 1];
        if (table.rows[P].sum() != expected) fail(report.trace, P, 0);
    }

    for (std::size_t P = 1; P <= N; ++P) {
        const Spectrum& upper = table.rows[P];
        const Spectrum& lower = table.rows[P - 1];
        for (std::size_t m = 1; m <= M; ++m) {
            const Ratio below = m < M ? upper[m] : Ratio(0);
            if (lower[m - 1] < below || upper[m - 1] < lower[m - 1]) {
                fail(report.interlacing, P, m);
                break;
            }
        }
    }
    return report;
}

}  // namespace framecomp
