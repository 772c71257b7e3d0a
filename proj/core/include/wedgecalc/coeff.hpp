#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace wedgecalc {

// Exact integer coefficients.  All group arithmetic is over Z (or Z/m after
// reduction by a term's order), so overflow must be impossible by construction.
using Coeff = boost::multiprecision::cpp_int;

inline std::string coeff_str(const Coeff& c) { return c.str(); }

// Binomial C(c,2) = c(c-1)/2, valid for negative c as well.  Used by the
// composition law for repeated summands.
inline Coeff choose2(const Coeff& c) { return c * (c - 1) / 2; }

// Term orders: m >= 1 finite, 0 infinite, -1 unknown (abstract atoms only).
constexpr int kOrderInfinite = 0;
constexpr int kOrderUnknown = -1;

} // namespace wedgecalc
