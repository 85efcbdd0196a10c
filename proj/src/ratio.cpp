#include "framecomp/ratio.hpp"

#include <cctype>

#include "framecomp/error.hpp"

namespace framecomp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSorted: return "NotSorted";
        case ErrorCode::Negative: return "Negative";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::DimensionOrder: return "DimensionOrder";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndexRange: return "IndexRange";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::InterlacingViolated: return "InterlacingViolated";
        case ErrorCode::InvalidTable: return "InvalidTable";
        case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
        case ErrorCode::PostVerificationFailed: return "PostVerificationFailed";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Ratio parse_ratio(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    Ratio value(mpz_class(std::string(num), 10), d);
    value.canonicalize();
    if (text.front() == '-') value = -value;
    return value;
}

std::string to_string(const Ratio& value) { return value.get_str(10); }

}  // namespace framecomp
