#pragma once

// Closed intervals [lo, hi] of MPFR floats with outward rounding.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace regover {

using Rational = mpq_class;

inline constexpr long kDefaultPrecision = 192;
inline constexpr long kMaxPrecision = 4096;

/// A comparison stayed inconclusive up to the largest allowed precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Domain violation (sqrt of a negative, division by an interval containing
/// zero, exponent overflow).
class IntervalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Interval {
 public:
  explicit Interval(long precision = kDefaultPrecision);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_integer(const mpz_class& z, long precision);
  static Interval from_integer(long z, long precision);
  static Interval from_rational(const Rational& q, long precision);
  /// [lo, hi] from two rationals, rounded outward. Requires lo <= hi.
  static Interval hull(const Rational& lo, const Rational& hi, long precision);
  static Interval pi(long precision);

  long precision() const { return prec_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

  bool contains(const Rational& q) const;
  bool contains(const mpz_class& z) const { return contains(Rational(z)); }
  bool contains(const Interval& inner) const;
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

  /// hi - lo rounded up.
  Interval width() const;
  /// Midpoint rounded to nearest, as a degenerate interval.
  Interval mid() const;
  /// max(|lo|, |hi|) rounded up.
  double magnitude_upper() const;

  /// Exact rational endpoints.
  Rational lo_rational() const;
  Rational hi_rational() const;

  /// "[lo,hi]" with `digits` significant decimal digits, lo rounded down and
  /// hi rounded up so the printed interval still encloses this one.
  std::string to_string(int digits = 20) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  friend Interval sqrt(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval pow_int(const Interval& a, long e);
  /// cos and sin of an angle interval: evaluated at the midpoint and widened
  /// by the radius (both functions are 1-Lipschitz).
  friend Interval cos(const Interval& a);
  friend Interval sin(const Interval& a);

 private:
  mpfr_t lo_, hi_;
  long prec_;
  void check() const;
};

Interval operator+(const Interval& a, const Rational& q);
Interval operator*(const Interval& a, const Rational& q);
Interval operator+(const Rational& q, const Interval& a);
Interval operator*(const Rational& q, const Interval& a);
Interval operator-(const Rational& q, const Interval& a);
Interval operator-(const Interval& a, const Rational& q);
Interval operator/(const Interval& a, const Rational& q);
Interval operator/(const Rational& q, const Interval& a);

/// Smallest interval containing both.
Interval hull(const Interval& a, const Interval& b);

/// a.hi < b.lo.
bool certainly_less(const Interval& a, const Interval& b);
bool certainly_less(const Interval& a, const Rational& q);
bool certainly_less(const Rational& q, const Interval& a);

/// Runs `attempt` at `start`, 2*start, ... up to `max_precision` bits until
/// it returns a value. Throws PrecisionExhausted otherwise.
template <class T>
T with_escalation(const std::function<std::optional<T>(long)>& attempt, long start = kDefaultPrecision,
                  long max_precision = kMaxPrecision) {
  for (long p = start; p <= max_precision; p *= 2)
    if (auto r = attempt(p)) return *r;
  throw PrecisionExhausted("comparison inconclusive at " + std::to_string(max_precision) + " bits");
}

}  // namespace regover
