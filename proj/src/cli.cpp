#include "framecomp/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "framecomp/eigensteps.hpp"
#include "framecomp/error.hpp"

namespace framecomp::cli {

using nlohmann::json;

namespace {

Spectrum parse_rational_list(const json& doc, const char* key) {
    const json& arr = doc.at(key);
    if (!arr.is_array()) throw Error(ErrorCode::Parse, std::string("'") + key + "' must be an array");
    std::vector<std::string> literals;
    for (const auto& v : arr) {
        if (!v.is_string()) throw Error(ErrorCode::Parse, std::string("'") + key + "' entries must be rational strings");
        literals.push_back(v.get<std::string>());
    }
    return parse_spectrum(literals);
}

std::vector<double> parse_decimal_list(const json& arr, const std::string& what) {
    if (!arr.is_array()) throw Error(ErrorCode::Parse, what + " must be an array");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) throw Error(ErrorCode::Parse, what + " entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

SymmetricMatrix parse_matrix(const json& arr, std::size_t dimension) {
    if (!arr.is_array()) throw Error(ErrorCode::Parse, "'A' must be an array");
    std::vector<double> flat;
    if (!arr.empty() && arr.front().is_array()) {
        if (arr.size() != dimension) throw Error(ErrorCode::DimensionMismatch, "'A' row count differs from alpha length");
        for (const auto& row : arr) {
            auto values = parse_decimal_list(row, "'A' row");
            if (values.size() != dimension) throw Error(ErrorCode::DimensionMismatch, "'A' row length differs from alpha length");
            flat.insert(flat.end(), values.begin(), values.end());
        }
    } else {
        flat = parse_decimal_list(arr, "'A'");
        if (flat.size() != dimension * dimension) throw Error(ErrorCode::DimensionMismatch, "'A' must hold M*M entries");
    }
    return SymmetricMatrix(dimension, std::move(flat));
}

json matrix_to_json(const SymmetricMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dimension(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vectors_to_json(const VectorSet& vs) {
    json out = json::array();
    for (const auto& v : vs.vectors) out.push_back(v);
    return out;
}

json table_to_json(const EigenstepsTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back(to_json(r));
    return rows;
}

json validation_to_json(const ValidationReport& r) {
    auto check = [](const ConditionCheck& c) {
        json j{{"pass", c.pass}};
        if (c.first_offense) j["first_offense"] = {c.first_offense->first, c.first_offense->second};
        return j;
    };
    return json{{"pass", r.ok()},
                {"shape", check(r.shape)},
                {"initial", check(r.initial)},
                {"terminal", check(r.terminal)},
                {"trace", check(r.trace)},
                {"interlacing", check(r.interlacing)}};
}

enum class Method { Fast, Naive, Both };

struct Options {
    std::string input;
    std::string output;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    bool fast = false;
    bool naive = false;
    bool both = false;

    Method method() const {
        if (both || (fast && naive)) return Method::Both;
        if (naive) return Method::Naive;
        return Method::Fast;
    }
};

// Thrown when the fast and naive optimizers disagree.
struct PathDisagreement {
    Spectrum fast;
    Spectrum naive;
};

struct OptimizerOutput {
    Spectrum beta;
    std::optional<OptimizerTrace> trace;
};

OptimizerOutput run_optimizer(const Problem& p, Method method) {
    OptimizerOutput out;
    if (method == Method::Fast) {
        out.beta = optimal_completion_fast(p.alpha, p.mu);
        return out;
    }
    CompletionResult naive = optimal_completion(p.alpha, p.mu);
    if (method == Method::Both) {
        Spectrum fast = optimal_completion_fast(p.alpha, p.mu);
        if (fast != naive.beta) throw PathDisagreement{std::move(fast), naive.beta};
    }
    out.beta = std::move(naive.beta);
    out.trace = std::move(naive.trace);
    return out;
}

json read_document(const Options& opt, std::istream& in) {
    std::string text;
    if (opt.input.empty() || opt.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(opt.input);
        if (!file) throw Error(ErrorCode::Parse, "cannot open input file '" + opt.input + "'");
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
}

void write_document(const Options& opt, const json& doc, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (opt.output.empty() || opt.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(opt.output);
    if (!file) throw Error(ErrorCode::Parse, "cannot open output file '" + opt.output + "'");
    file << text;
}

int cmd_check(const Problem& p, json& doc) {
    if (!p.lambda) throw Error(ErrorCode::Parse, "check requires 'lambda'");
    const FeasibilityReport r = completion_feasible(p.alpha, *p.lambda, p.mu);
    doc = to_json(r);
    return r.feasible ? kSuccess : kInfeasible;
}

int cmd_complete(const Problem& p, const Options& opt, json& doc) {
    const OptimizerOutput result = run_optimizer(p, opt.method());
    doc = json{{"beta", to_json(result.beta)}};
    if (result.trace) doc["trace"] = to_json(*result.trace);
    return kSuccess;
}

// Target spectrum: lambda when given, else the optimal completion.
struct Target {
    Spectrum spectrum;
    std::optional<Spectrum> beta;
};

std::optional<Target> resolve_target(const Problem& p, const Options& opt, json& doc) {
    if (p.lambda) {
        if (p.lambda->size() != p.alpha.size()) throw Error(ErrorCode::LengthMismatch, "lambda and alpha differ in length");
        const FeasibilityReport r = completion_feasible(p.alpha, *p.lambda, p.mu);
        if (!r.feasible) {
            doc = json{{"lambda", to_json(*p.lambda)}, {"feasibility", to_json(r)}};
            return std::nullopt;
        }
        return Target{*p.lambda, std::nullopt};
    }
    Spectrum beta = run_optimizer(p, opt.method()).beta;
    return Target{beta, beta};
}

int cmd_eigensteps(const Problem& p, const Options& opt, json& doc) {
    const auto target = resolve_target(p, opt, doc);
    if (!target) return kInfeasible;
    const EigenstepsTable table = eigensteps_sequence(p.alpha, target->spectrum, p.mu);
    doc = json{{"alpha", to_json(p.alpha)},
               {"mu", to_json(p.mu)},
               {"target", to_json(target->spectrum)},
               {"eigensteps", table_to_json(table)},
               {"validation", validation_to_json(validate_eigensteps(table))}};
    if (target->beta) doc["beta"] = to_json(*target->beta);
    return kSuccess;
}

int cmd_synthesize(const Problem& p, const Options& opt, json& doc, std::ostream& err) {
    const auto target = resolve_target(p, opt, doc);
    if (!target) return kInfeasible;
    const EigenstepsTable table = eigensteps_sequence(p.alpha, target->spectrum, p.mu);
    const SymmetricMatrix a = p.initial_operator();
    SynthesisOptions so;
    so.tol = opt.tol;
    so.seed = opt.seed;
    const VectorSet vs = complete_frame(a, table, so);
    if (vs.fallback_attempts > 0) {
        err << "warning: " << vs.fallback_attempts << " alternative eigenspace direction(s) tried during synthesis\n";
    }
    const VerificationReport report = verify_completion(a, vs, target->spectrum, opt.tol);

    doc = json{{"alpha", to_json(p.alpha)},
               {"mu", to_json(p.mu)},
               {"target", to_json(target->spectrum)},
               {"eigensteps", table_to_json(table)},
               {"A", matrix_to_json(a)},
               {"vectors", vectors_to_json(vs)},
               {"fallback_attempts", vs.fallback_attempts},
               {"verification", to_json(report, opt.tol)}};
    if (target->beta) doc["beta"] = to_json(*target->beta);
    return report.pass ? kSuccess : kVerificationFailed;
}

int cmd_verify(const Problem& p, const json& input, const Options& opt, json& doc) {
    Spectrum target;
    if (input.contains("target")) {
        target = parse_rational_list(input, "target");
    } else if (p.lambda) {
        target = *p.lambda;
    } else {
        throw Error(ErrorCode::Parse, "verify requires 'target' or 'lambda'");
    }
    if (!input.contains("vectors") || !input.at("vectors").is_array()) {
        throw Error(ErrorCode::Parse, "verify requires a 'vectors' array");
    }
    VectorSet vs;
    vs.target_norms_sq = p.mu;
    for (const auto& v : input.at("vectors")) vs.vectors.push_back(parse_decimal_list(v, "vector"));
    if (vs.vectors.size() != p.mu.size()) throw Error(ErrorCode::DimensionMismatch, "one vector per entry of mu expected");
    for (const auto& v : vs.vectors) {
        if (v.size() != p.alpha.size()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from alpha length");
    }
    if (target.size() != p.alpha.size()) throw Error(ErrorCode::DimensionMismatch, "target length differs from alpha length");
    const VerificationReport report = verify_completion(p.initial_operator(), vs, target, opt.tol);
    doc = to_json(report, opt.tol);
    return report.pass ? kSuccess : kVerificationFailed;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Infeasible:
        case ErrorCode::HypothesisViolated:
            return kInfeasible;
        case ErrorCode::PostVerificationFailed:
            return kVerificationFailed;
        case ErrorCode::InternalError:
        case ErrorCode::NotConverged:
            return kInternalError;
        default:
            return kInputError;
    }
}

}  // namespace

SymmetricMatrix Problem::initial_operator() const { return a ? *a : SymmetricMatrix::diagonal(alpha); }

Problem parse_problem(const json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::Parse, "problem must be a JSON object");
    for (const char* key : {"alpha", "mu"}) {
        if (!doc.contains(key)) throw Error(ErrorCode::Parse, std::string("missing '") + key + "'");
    }
    Problem p;
    p.alpha = parse_rational_list(doc, "alpha");
    p.mu = parse_rational_list(doc, "mu");
    if (p.alpha.empty()) throw Error(ErrorCode::Parse, "'alpha' must be nonempty");
    if (doc.contains("lambda")) {
        p.lambda = parse_rational_list(doc, "lambda");
        if (p.lambda->size() != p.alpha.size()) throw Error(ErrorCode::LengthMismatch, "'lambda' and 'alpha' differ in length");
    }
    if (doc.contains("A")) {
        SymmetricMatrix a = parse_matrix(doc.at("A"), p.alpha.size());
        const auto values = sym_eigen(a).values;
        const auto expected = to_doubles(p.alpha);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (std::abs(values[i] - expected[i]) > 1e-6) {
                throw Error(ErrorCode::SpectrumMismatch, "spectrum of 'A' does not match 'alpha'");
            }
        }
        p.a = std::move(a);
    }
    return p;
}

json to_json(const Spectrum& s) { return to_strings(s); }

json to_json(const FeasibilityReport& r) {
    return json{{"feasible", r.feasible},
                {"equality_gap", to_string(r.equality_gap)},
                {"violated_indices", r.violated_indices},
                {"dominance_ok", r.dominance_ok}};
}

json to_json(const OptimizerTrace& t) {
    json levels = json::array();
    for (const auto& l : t.levels) {
        json endpoints = json::array();
        for (const auto& b : l.endpoints) endpoints.push_back(to_string(b));
        levels.push_back(json{{"k", l.k}, {"endpoints", endpoints}, {"binding_set", l.binding_set}, {"j_of_k", l.j_of_k}});
    }
    return json{{"levels", levels}};
}

json to_json(const VerificationReport& r, double tol) {
    return json{{"pass", r.pass},
                {"tol", tol},
                {"max_spectrum_deviation", r.max_spectrum_deviation},
                {"max_norm_deviation", r.max_norm_deviation},
                {"computed_spectrum", r.computed_spectrum}};
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frame completion: feasibility, optimal spectra, eigensteps and vector synthesis"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "Problem JSON file (default: standard input)");
        sub->add_option("--output", opt.output, "Output file (default: standard output)");
        sub->add_option("--tol", opt.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "Seed for randomized fallback directions");
        sub->add_flag("--fast", opt.fast, "Breakpoint-table optimizer (default)");
        sub->add_flag("--naive", opt.naive, "Reference optimizer, emits the level trace");
        sub->add_flag("--both", opt.both, "Run both optimizers and require identical output");
    };
    CLI::App* check = app.add_subcommand("check", "Test whether 'lambda' is an (alpha, mu)-completion");
    CLI::App* complete = app.add_subcommand("complete", "Compute the majorization-minimal completion");
    CLI::App* eigensteps = app.add_subcommand("eigensteps", "Construct eigensteps from alpha to the target");
    CLI::App* synthesize = app.add_subcommand("synthesize", "Full pipeline: target, eigensteps, vectors, verification");
    synthesize->alias("pipeline");
    CLI::App* verify = app.add_subcommand("verify", "Verify vectors against a target spectrum");
    for (CLI::App* sub : {check, complete, eigensteps, synthesize, verify}) add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        const json input = read_document(opt, in);
        const Problem problem = parse_problem(input);
        json doc;
        int code = kSuccess;
        if (check->parsed()) code = cmd_check(problem, doc);
        else if (complete->parsed()) code = cmd_complete(problem, opt, doc);
        else if (eigensteps->parsed()) code = cmd_eigensteps(problem, opt, doc);
        else if (synthesize->parsed()) code = cmd_synthesize(problem, opt, doc, err);
        else code = cmd_verify(problem, input, opt, doc);
        write_document(opt, doc, out);
        return code;
    } catch (const PathDisagreement& d) {
        err << "error: fast and naive optimizers disagree\n";
        write_document(opt, json{{"fast", to_json(d.fast)}, {"naive", to_json(d.naive)}}, out);
        return kPathDisagreement;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace framecomp::cli
