#include "regover/numerics.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace regover {

MuCoefficients mu_coefficients(int k) {
  switch (k) {
    case 2: return {Rational(1, 2), 2};
    case 3: return {Rational(1, 3), 6};
    case 4: return {Rational(1, 2), 3};
    case 5: return {Rational(2, 5), 5};
    case 6: return {Rational(1, 6), 30};
    case 7: return {Rational(1, 7), 42};
    case 8: return {Rational(1, 4), 14};
    case 9: return {Rational(2, 3), 2};
  }
  throw std::out_of_range("mu: k must be in 2..9, got " + std::to_string(k));
}

MuValue mu(int k, std::uint64_t n, long precision) {
  const auto [c, d] = mu_coefficients(k);
  const mpz_class dn = mpz_class(d) * mpz_class(std::to_string(n));
  Interval v = c * Interval::pi(precision) * sqrt(Interval::from_integer(dn, precision));
  return {k, n, std::move(v)};
}

Interval bessel_i1(const Interval& s) {
  if (mpfr_sgn(s.lo()) < 0) throw IntervalDomainError("bessel_i1: negative argument");
  const long p = s.precision();
  const Interval half_s = s * Rational(1, 2);
  const Interval x2 = half_s * half_s;  // (s/2)²
  const double x2_hi = x2.magnitude_upper();

  Interval term = half_s;  // m = 0
  Interval sum = term;
  Rational eps = 1;
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), static_cast<unsigned long>(p + 8));

  if (mpfr_zero_p(s.hi())) return sum;

  for (unsigned long m = 0;; ++m) {
    // term_{m+1} = term_m · (s/2)² / ((m+1)(m+2))
    term = term * x2 / Rational(static_cast<long>((m + 1) * (m + 2)));
    sum = sum + term;
    // Later ratios are at most r = (s/2)²/((m+2)(m+3)). Once r < 0.45 the
    // tail is below term_{m+1}·r/(1-r) < term_{m+1}.
    const double ratio = x2_hi / static_cast<double>((m + 2) * (m + 3));
    const Interval small = sum * eps;
    if (ratio < 0.45 && mpfr_lessequal_p(term.hi(), small.hi())) {
      sum = sum + Interval::hull(0, term.hi_rational(), p);
      break;
    }
  }
  return sum;
}

Interval e_i(const Interval& s) {
  if (mpfr_sgn(s.lo()) <= 0) throw IntervalDomainError("e_i: s must be positive");
  const Interval inv = Interval::from_integer(1, s.precision()) / s;
  // Horner in t = 1/s.
  static const Rational coeff[] = {Rational(72765, 262144), Rational(4725, 32768), Rational(105, 1024),
                                   Rational(15, 128), Rational(3, 8)};
  Interval acc = Interval::from_rational(coeff[0], s.precision());
  for (int i = 1; i < 5; ++i) acc = coeff[i] + acc * inv;
  return Rational(1) - acc * inv;
}

namespace {

Interval scale(const Interval& s) {
  // e^s / √(2πs)
  return exp(s) / sqrt(Rational(2) * Interval::pi(s.precision()) * s);
}

}  // namespace

BesselBounds bessel_i1_asymptotic_bounds(const Interval& s) {
  if (mpfr_cmp_si(s.lo(), 26) < 0) throw std::domain_error("bessel_i1_asymptotic_bounds: requires s >= 26");
  const Interval base = scale(s);
  const Interval ei = e_i(s);
  const Interval corr = Rational(31) / pow_int(s, 6);
  return {base * (ei - corr), base * (ei + corr)};
}

Interval bessel_i1_upper_simple(const Interval& s) {
  if (mpfr_cmp_si(s.lo(), 1) < 0) throw std::domain_error("bessel_i1_upper_simple: requires s >= 1");
  return sqrt(Rational(2) / (Interval::pi(s.precision()) * s)) * exp(s);
}

Rational dedekind_sum(long h, long j) {
  if (j < 1) throw std::invalid_argument("dedekind_sum: j must be >= 1");
  if (std::gcd(h, j) != 1) throw std::invalid_argument("dedekind_sum: gcd(h, j) must be 1");
  // Each summand is (2r - j)(2((hr) mod j) - j) / (4j²).
  mpz_class acc = 0;
  const long hm = ((h % j) + j) % j;
  for (long r = 1; r < j; ++r) {
    const long hr = static_cast<long>((static_cast<__int128>(hm) * r) % j);
    acc += mpz_class(2 * r - j) * mpz_class(2 * hr - j);
  }
  Rational out(acc, mpz_class(4) * j * j);
  out.canonicalize();
  return out;
}

}  // namespace regover
