#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace framecomp {

/// Exact arbitrary-precision rational. mpq_class keeps values canonical
/// (lowest terms, positive denominator) after every arithmetic operation.
using Ratio = mpq_class;

/// Parses `-?[0-9]+(/[0-9]+)?`. Throws Error{Parse} on anything else,
/// including a zero denominator.
Ratio parse_ratio(std::string_view text);

/// "7/4", "3", "-1/2"; the inverse of parse_ratio.
std::string to_string(const Ratio& value);

inline Ratio positive_part(const Ratio& x) { return sgn(x) > 0 ? x : Ratio(0); }

inline const Ratio& max(const Ratio& a, const Ratio& b) { return a < b ? b : a; }
inline const Ratio& min(const Ratio& a, const Ratio& b) { return b < a ? b : a; }

}  // namespace framecomp
