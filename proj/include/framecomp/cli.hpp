#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "framecomp/optimizer.hpp"
#include "framecomp/spectra.hpp"
#include "framecomp/synthesis.hpp"

namespace framecomp::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kInfeasible = 1,
    kInputError = 2,
    kPathDisagreement = 3,
    kVerificationFailed = 4,
    kInternalError = 5,
};

/// A problem document: {"alpha": [...], "mu": [...], "lambda": [...], "A": ...}.
/// Rational fields are strings such as "7/4"; "A" is an optional row-major
/// decimal matrix, either nested rows or a flat array of M*M numbers.
struct Problem {
    Spectrum alpha;
    Spectrum mu;
    std::optional<Spectrum> lambda;
    std::optional<SymmetricMatrix> a;

    /// A if present, otherwise diag(alpha).
    SymmetricMatrix initial_operator() const;
};

/// Throws Error{Parse} (or the Spectrum/SymmetricMatrix errors) on malformed
/// input, and Error{SpectrumMismatch} if A's spectrum is not alpha within 1e-6.
Problem parse_problem(const nlohmann::json& doc);

nlohmann::json to_json(const Spectrum& s);
nlohmann::json to_json(const FeasibilityReport& r);
nlohmann::json to_json(const OptimizerTrace& t);
nlohmann::json to_json(const VerificationReport& r, double tol);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace framecomp::cli
