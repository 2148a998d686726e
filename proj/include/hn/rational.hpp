#pragma once

#include <gmpxx.h>
#include <string>

namespace hn {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "a/b" or "a" (optionally signed). Throws std::invalid_argument on
// malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

// Canonical rendering: "a" when the denominator is 1, otherwise "a/b".
std::string rat_to_string(const Rat& q);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, unsigned long e);

// Smallest integer m >= 0 with m*m >= q. Requires q >= 0.
Int sqrt_ceil(const Rat& q);

double to_double(const Rat& q);

// Natural log of a positive rational, computed from mantissa/exponent pairs
// so that huge numerators stay finite.
double log_to_double(const Rat& q);

// Deterministic decimal rendering with the given number of significant
// digits (printf %.*g).
std::string decimal_string(double x, int digits);

}  // namespace hn
