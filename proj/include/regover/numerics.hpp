#pragma once

// μₖ(n), enclosures of I₁ and its large-s bounds, and exact Dedekind sums.

#include <cstdint>

#include "regover/interval.hpp"

namespace regover {

/// μₖ(n) = c·π·√(d·n); the (c, d) pair for k = 2..9.
struct MuCoefficients {
  Rational c;
  unsigned d;
};

/// Throws std::out_of_range for k outside 2..9.
MuCoefficients mu_coefficients(int k);

struct MuValue {
  int k;
  std::uint64_t n;
  Interval value;
};

MuValue mu(int k, std::uint64_t n, long precision = kDefaultPrecision);

/// I₁(s) from the ascending series, truncated once terms drop below
/// 2^-(precision+8) of the partial sum and closed with a geometric tail
/// bound. Requires s.lo >= 0.
Interval bessel_i1(const Interval& s);

/// E_I(s) = 1 - 3/(8s) - 15/(128s²) - 105/(1024s³) - 4725/(32768s⁴) - 72765/(262144s⁵).
/// Requires s.lo > 0.
Interval e_i(const Interval& s);

struct BesselBounds {
  Interval lower;  // e^s/√(2πs)·(E_I(s) - 31/s⁶)
  Interval upper;  // e^s/√(2πs)·(E_I(s) + 31/s⁶)
};

/// Two-sided bound on I₁(s), valid for s >= 26. Throws std::domain_error below.
BesselBounds bessel_i1_asymptotic_bounds(const Interval& s);

/// √(2/(πs))·e^s, an upper bound for I₁(s) when s >= 1. Throws std::domain_error below.
Interval bessel_i1_upper_simple(const Interval& s);

/// s(h, j) = Σ_{r=1}^{j-1} ((r/j - ⌊r/j⌋ - 1/2))((hr/j - ⌊hr/j⌋ - 1/2)), exact.
/// Throws std::invalid_argument unless j >= 1 and gcd(h, j) = 1.
Rational dedekind_sum(long h, long j);

}  // namespace regover
