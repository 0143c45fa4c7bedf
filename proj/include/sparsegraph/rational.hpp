#pragma once

#include <gmpxx.h>

#include <string>

namespace sg {

// Exact rational scalar used throughout the kernel algebra.
using Rat = mpq_class;

// Parses "3", "-7/2" or a decimal string like "0.25" into an exact rational.
Rat rat_parse(const std::string& s);

// Exact value of a finite double (every finite double is a dyadic rational).
Rat rat_of_double(double x);

double rat_to_double(const Rat& q);

// "p/q" when the denominator is not 1, a plain integer string otherwise.
std::string rat_to_string(const Rat& q);

}  // namespace sg
