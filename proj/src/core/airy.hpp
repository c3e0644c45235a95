#pragma once

#include <vector>

namespace granit::airy {

/// Airy function Ai(x). Maclaurin series for -8 <= x <= 5.5, asymptotic
/// expansions beyond. Relative accuracy ~1e-10 on the oscillatory branch
/// and ~1e-8 near the positive switchover, improving rapidly outward.
double ai(double x);

/// Derivative Ai'(x), same scheme.
double ai_prime(double x);

/// Magnitudes eps_n of the first n negative zeros of Ai, ascending.
/// Newton iteration seeded from the asymptotic zero formula.
/// Throws std::out_of_range for n < 1 or n > 100.
std::vector<double> negative_zeros(int n);

}  // namespace granit::airy
