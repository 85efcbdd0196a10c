// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "framecomp/eigensteps.hpp"
#include "framecomp/error.hpp"
#include "framecomp/optimizer.hpp"
#include "framecomp/spectra.hpp"
#include "framecomp/synthesis.hpp"
#include "support.hpp"

using namespace framecomp;
using framecomp::testing::random_size;
using framecomp::testing::random_spectrum;
using framecomp::testing::spec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void report(int number, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d. %s%s%s\n", o.pass ? "PASS" : "FAIL", number, name.c_str(), o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
    std::fflush(stdout);
}

struct Instance {
    Spectrum alpha;
    Spectrum mu;
};

std::vector<Instance> random_instances(std::uint64_t seed, std::size_t count, std::size_t max_m, std::size_t max_n) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t M = random_size(rng, 1, max_m);
        const std::size_t N = random_size(rng, 1, max_n);
        out.push_back({random_spectrum(rng, M), random_spectrum(rng, N)});
    }
    return out;
}

std::vector<double> doubles(const Spectrum& s) { return to_doubles(s); }

// Prefix-sum form of lambda (padded with zeros to N) majorizing mu.
bool frame_spectrum_condition(const Spectrum& lambda, const Spectrum& mu) {
    Ratio pl = 0;
    Ratio pm = 0;
    for (std::size_t n = 0; n < mu.size(); ++n) {
        if (n < lambda.size()) pl += lambda[n];
        pm += mu[n];
        if (pl < pm) return false;
    }
    return pl == pm;
}

Outcome golden_example() {
    Outcome o;
    const Spectrum alpha = spec({"7/4", "3/4", "1/2", "1/2"});
    const Spectrum mu = spec({"2", "1", "1/4", "1/4", "1/4"});
    const auto start = Clock::now();
    const CompletionResult r = optimal_completion(alpha, mu);
    const double elapsed = seconds_since(start);
    o.require(r.beta == spec({"5/2", "7/4", "3/2", "3/2"}), "beta differs");
    const std::vector<std::vector<const char*>> endpoints = {
        {"5/2"}, {"17/8", "7/4"}, {"23/12", "3/2", "7/4"}, {"29/16", "3/2", "3/2", "9/4"}};
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto& got = r.trace.level(k).endpoints;
        const auto& want = endpoints[k - 1];
        bool same = got.size() == want.size();
        for (std::size_t j = 0; same && j < got.size(); ++j) same = got[j] == parse_ratio(want[j]);
        o.require(same, "level " + std::to_string(k) + " endpoints differ");
    }
    o.require(elapsed < 0.010, "took " + std::to_string(elapsed * 1e3) + " ms");
    o.detail = o.pass ? "beta = {5/2, 7/4, 3/2, 3/2}, " + std::to_string(elapsed * 1e3) + " ms" : o.detail;
    return o;
}

Outcome fast_naive_equivalence() {
    Outcome o;
    const auto instances = random_instances(20240601, 400, 8, 12);
    const auto start = Clock::now();
    for (const auto& in : instances) {
        const Spectrum naive = optimal_completion(in.alpha, in.mu).beta;
        const Spectrum fast = optimal_completion_fast(in.alpha, in.mu);
        o.require(naive == fast, "mismatch for alpha of size " + std::to_string(in.alpha.size()));
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
    if (o.pass) o.detail = std::to_string(instances.size()) + " instances, " + std::to_string(elapsed) + " s";
    return o;
}

const std::vector<Instance>& property_instances() {
    static const std::vector<Instance> instances = random_instances(777, 120, 6, 8);
    return instances;
}

Outcome feasibility_and_optimality() {
    Outcome o;
    std::mt19937_64 rng(4242);
    double worst_slack = 0.0;
    for (const auto& in : property_instances()) {
        const Spectrum beta = optimal_completion_fast(in.alpha, in.mu);
        o.require(completion_feasible(in.alpha, beta, in.mu).feasible, "beta infeasible");
        const auto b = doubles(beta);
        const std::size_t M = b.size();
        double beta_potential = 0.0;
        for (double x : b) beta_potential += x * x;
        for (int draw = 0; draw < 20; ++draw) {
            const auto lambda = framecomp::testing::random_completion_spectrum(rng, in.alpha, in.mu);
            const double slack = framecomp::testing::majorization_slack(lambda, b);
            worst_slack = std::min(worst_slack, slack);
            o.require(slack >= -1e-9, "majorization slack " + std::to_string(slack));
            o.require(b[0] <= lambda[0] + 1e-9, "largest eigenvalue below beta_1");
            o.require(lambda[M - 1] <= b[M - 1] + 1e-9, "smallest eigenvalue above beta_M");
            double potential = 0.0;
            for (double x : lambda) potential += x * x;
            o.require(beta_potential <= potential + 1e-9, "frame potential below optimum");
        }
    }
    if (o.pass) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "%zu instances x 20 completions, worst slack %.2e", property_instances().size(),
                      worst_slack);
        o.detail = buf;
    }
    return o;
}

Outcome schur_horn_reduction() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::size_t feasible = 0;
    const std::size_t trials = 300;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t M = random_size(rng, 1, 6);
        const std::size_t N = random_size(rng, M, 9);
        const Spectrum mu = random_spectrum(rng, N);
        Spectrum lambda;
        if (t % 2 == 0) {
            // Consecutive block sums of mu: always a valid frame spectrum.
            std::vector<std::size_t> cuts(N - 1);
            for (std::size_t i = 0; i + 1 < N; ++i) cuts[i] = i + 1;
            std::shuffle(cuts.begin(), cuts.end(), rng);
            cuts.resize(M - 1);
            cuts.push_back(N);
            std::sort(cuts.begin(), cuts.end());
            std::vector<Ratio> values;
            std::size_t begin = 0;
            for (std::size_t end : cuts) {
                Ratio s = 0;
                for (std::size_t i = begin; i < end; ++i) s += mu[i];
                values.push_back(s);
                begin = end;
            }
            std::sort(values.begin(), values.end(), [](const Ratio& a, const Ratio& b) { return a > b; });
            lambda = Spectrum(std::move(values));
        } else if (t % 3 == 1) {
            // Flat spectrum: feasible only when mu is already flat enough.
            Ratio level = mu.sum() / static_cast<long>(M);
            lambda = Spectrum::constant(M, level);
        } else {
            // Random shape rescaled to the right trace; feasible or not.
            const Spectrum raw = random_spectrum(rng, M);
            std::vector<Ratio> values(raw.begin(), raw.end());
            if (raw.sum() != 0) {
                for (auto& v : values) v = v * mu.sum() / raw.sum();
            }
            lambda = Spectrum(std::move(values));
        }
        const bool direct = frame_spectrum_condition(lambda, mu);
        feasible += direct ? 1 : 0;
        o.require(completion_feasible(Spectrum::zeros(M), lambda, mu).feasible == direct, "disagreement");
        o.require(classical_schur_horn_feasible(lambda, mu) == direct, "classical check disagrees");
    }
    if (o.pass) {
        o.detail = std::to_string(trials) + " pairs, " + std::to_string(feasible) + " feasible";
    }
    return o;
}

Outcome eigensteps_round_trip() {
    Outcome o;
    for (const auto& in : property_instances()) {
        const Spectrum beta = optimal_completion_fast(in.alpha, in.mu);
        const EigenstepsTable table = eigensteps_sequence(in.alpha, beta, in.mu);
        const ValidationReport v = validate_eigensteps(table);
        o.require(v.initial.pass && v.terminal.pass && v.trace.pass && v.interlacing.pass && v.shape.pass,
                  "validation failed");
        o.require(table.rows.front() == in.alpha, "row 0 differs from alpha");
        o.require(table.rows.back() == beta, "last row differs from target");
        const ChopResult terminal = backward_step(table.rows[1], in.alpha, Spectrum{in.mu[0]});
        o.require(terminal.kappa == in.alpha, "single-vector step does not return alpha");
    }
    if (o.pass) o.detail = std::to_string(property_instances().size()) + " tables";
    return o;
}

double scale(const std::vector<double>& values) {
    double m = 1.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

void check_synthesis(Outcome& o, const Spectrum& alpha, const Spectrum& mu, double& worst_norm, double& worst_spec) {
    const Spectrum beta = optimal_completion_fast(alpha, mu);
    const EigenstepsTable table = eigensteps_sequence(alpha, beta, mu);
    SymmetricMatrix op = SymmetricMatrix::diagonal(alpha);
    const VectorSet vs = complete_frame(op, table);
    o.require(vs.vectors.size() == mu.size(), "wrong vector count");
    for (std::size_t n = 0; n < vs.vectors.size(); ++n) {
        double norm_sq = 0.0;
        for (double x : vs.vectors[n]) norm_sq += x * x;
        const double target = mu[n].get_d();
        const double dev = target > 0.0 ? std::abs(norm_sq - target) / target : std::abs(norm_sq);
        worst_norm = std::max(worst_norm, dev);
        o.require(dev <= 1e-9, "norm deviation " + std::to_string(dev));
        op = op.rank_one_update(vs.vectors[n]);
        const auto computed = sym_eigen(op).values;
        const auto expected = to_doubles(table.rows[n + 1]);
        double d = 0.0;
        for (std::size_t m = 0; m < computed.size(); ++m) d = std::max(d, std::abs(computed[m] - expected[m]));
        worst_spec = std::max(worst_spec, d / scale(computed));
        o.require(d <= 1e-8 * scale(computed), "partial spectrum deviation " + std::to_string(d));
    }
}

Outcome synthesis_end_to_end() {
    Outcome o;
    double worst_norm = 0.0;
    double worst_spec = 0.0;
    check_synthesis(o, spec({"7/4", "3/4", "1/2", "1/2"}), spec({"2", "1", "1/4", "1/4", "1/4"}), worst_norm, worst_spec);
    const auto instances = random_instances(31337, 60, 5, 7);
    for (const auto& in : instances) check_synthesis(o, in.alpha, in.mu, worst_norm, worst_spec);
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "worked example + %zu instances, worst norm dev %.2e, worst spectrum dev %.2e",
                      instances.size(), worst_norm, worst_spec);
        o.detail = buf;
    }
    return o;
}

Outcome complexity_smoke() {
    Outcome o;
    std::mt19937_64 rng(2026);
    const Spectrum alpha = random_spectrum(rng, 200);
    const Spectrum mu = random_spectrum(rng, 400);
    const auto start = Clock::now();
    const Spectrum beta = optimal_completion_fast(alpha, mu);
    const double elapsed = seconds_since(start);
    o.require(beta.size() == 200 && beta.sum() == alpha.sum() + mu.sum(), "wrong trace");
    o.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
    if (o.pass) o.detail = "M = 200, N = 400 in " + std::to_string(elapsed) + " s";
    return o;
}

}  // namespace

int main() {
    report(1, "golden worked example", golden_example);
    report(2, "fast and naive optimizers agree", fast_naive_equivalence);
    report(3, "feasibility and optimality against random completions", feasibility_and_optimality);
    report(4, "zero initial operator reduces to the frame spectrum condition", schur_horn_reduction);
    report(5, "eigensteps round trip", eigensteps_round_trip);
    report(6, "synthesis end to end", synthesis_end_to_end);
    report(7, "fast optimizer at M = 200, N = 400", complexity_smoke);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
