#pragma once

#include <gmpxx.h>

#include <string>

#include "walklab/common.hpp"

namespace walklab {

using Rational = mpq_class;

// Accepts "7", "-3/4", "0.25", "2.5e-3". Always canonicalized.
Rational parse_rational(const std::string& text);

// Canonical form: "num/den", or just "num" when den == 1.
std::string rational_to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace walklab
