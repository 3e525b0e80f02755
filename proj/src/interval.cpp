#include "regover/interval.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace regover {

namespace {

long common_precision(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

std::string format_endpoint(const mpfr_t x, int digits, bool upward) {
  char* buf = nullptr;
  if (upward)
    mpfr_asprintf(&buf, "%.*RUe", digits - 1, x);
  else
    mpfr_asprintf(&buf, "%.*RDe", digits - 1, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

Interval::Interval(long precision) : prec_(precision) {
  if (precision < MPFR_PREC_MIN || precision > MPFR_PREC_MAX) throw std::invalid_argument("bad interval precision");
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::check() const {
  if (mpfr_nan_p(lo_) || mpfr_nan_p(hi_)) throw IntervalDomainError("interval operation produced NaN");
  if (mpfr_inf_p(lo_) || mpfr_inf_p(hi_)) throw IntervalDomainError("interval operation overflowed");
}

Interval Interval::from_integer(const mpz_class& z, long precision) {
  Interval r(precision);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_integer(long z, long precision) { return from_integer(mpz_class(z), precision); }

Interval Interval::from_rational(const Rational& q, long precision) { return hull(q, q, precision); }

Interval Interval::hull(const Rational& lo, const Rational& hi, long precision) {
  if (lo > hi) throw std::invalid_argument("Interval::hull: lo > hi");
  Interval r(precision);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(long precision) {
  Interval r(precision);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

Interval Interval::width() const {
  Interval r(prec_);
  mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::mid() const {
  Interval r(prec_);
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

double Interval::magnitude_upper() const {
  return std::max(std::abs(mpfr_get_d(lo_, MPFR_RNDD)), std::abs(mpfr_get_d(hi_, MPFR_RNDU)));
}

Rational Interval::lo_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::hi_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

std::string Interval::to_string(int digits) const {
  return "[" + format_endpoint(lo_, digits, false) + "," + format_endpoint(hi_, digits, true) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(common_precision(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  r.check();
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(common_precision(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  r.check();
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.prec_);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const long p = common_precision(a, b);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const std::array<const __mpfr_struct*, 2> xa{a.lo_, a.hi_};
  const std::array<const __mpfr_struct*, 2> xb{b.lo_, b.hi_};
  bool first = true;
  for (auto x : xa) {
    for (auto y : xb) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  r.check();
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw IntervalDomainError("division by an interval containing 0");
  Interval inv(common_precision(a, b));
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw IntervalDomainError("sqrt of an interval with negative part");
  Interval r(a.prec_);
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec_);
  mpfr_clear_flags();
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  if (mpfr_overflow_p()) throw IntervalDomainError("exp overflow");
  r.check();
  return r;
}

Interval pow_int(const Interval& a, long e) {
  if (e < 0) return Interval::from_integer(1, a.prec_) / pow_int(a, -e);
  Interval result = Interval::from_integer(1, a.prec_);
  Interval base = a;
  // Even powers of an interval straddling 0 need the tighter [0, max^e].
  if (e % 2 == 0 && mpfr_sgn(a.lo_) < 0 && mpfr_sgn(a.hi_) > 0) {
    Interval m(a.prec_);
    mpfr_neg(m.hi_, a.lo_, MPFR_RNDU);
    mpfr_max(m.hi_, m.hi_, a.hi_, MPFR_RNDU);
    mpfr_set_zero(m.lo_, 1);
    base = m;
  }
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) result = result * base;
    if (k > 1) base = base * base;
  }
  return result;
}

namespace {

// f(mid) +- radius, clamped to [-1, 1].
Interval lipschitz_trig(const Interval& a, int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  const long p = a.precision();
  mpfr_t m, rad, t;
  mpfr_inits2(p, m, rad, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(m, a.lo(), a.hi(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_sub(rad, a.hi(), m, MPFR_RNDU);
  mpfr_sub(t, m, a.lo(), MPFR_RNDU);
  mpfr_max(rad, rad, t, MPFR_RNDU);

  mpfr_t lo, hi;
  mpfr_inits2(p, lo, hi, static_cast<mpfr_ptr>(nullptr));
  f(lo, m, MPFR_RNDD);
  mpfr_sub(lo, lo, rad, MPFR_RNDD);
  f(hi, m, MPFR_RNDU);
  mpfr_add(hi, hi, rad, MPFR_RNDU);
  if (mpfr_cmp_si(lo, -1) < 0) mpfr_set_si(lo, -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi, 1) > 0) mpfr_set_si(hi, 1, MPFR_RNDU);

  Rational qlo, qhi;
  mpfr_get_q(qlo.get_mpq_t(), lo);
  mpfr_get_q(qhi.get_mpq_t(), hi);
  mpfr_clears(m, rad, t, lo, hi, static_cast<mpfr_ptr>(nullptr));
  return Interval::hull(qlo, qhi, p);
}

}  // namespace

Interval cos(const Interval& a) { return lipschitz_trig(a, mpfr_cos); }
Interval sin(const Interval& a) { return lipschitz_trig(a, mpfr_sin); }

Interval operator+(const Interval& a, const Rational& q) { return a + Interval::from_rational(q, a.precision()); }
Interval operator+(const Rational& q, const Interval& a) { return a + q; }
Interval operator-(const Interval& a, const Rational& q) { return a - Interval::from_rational(q, a.precision()); }
Interval operator-(const Rational& q, const Interval& a) { return Interval::from_rational(q, a.precision()) - a; }
Interval operator*(const Interval& a, const Rational& q) { return a * Interval::from_rational(q, a.precision()); }
Interval operator*(const Rational& q, const Interval& a) { return a * q; }
Interval operator/(const Interval& a, const Rational& q) { return a / Interval::from_rational(q, a.precision()); }
Interval operator/(const Rational& q, const Interval& a) { return Interval::from_rational(q, a.precision()) / a; }

Interval hull(const Interval& a, const Interval& b) {
  Rational lo = std::min(a.lo_rational(), b.lo_rational());
  Rational hi = std::max(a.hi_rational(), b.hi_rational());
  return Interval::hull(lo, hi, std::max(a.precision(), b.precision()));
}

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi(), b.lo()) != 0; }
bool certainly_less(const Interval& a, const Rational& q) { return mpfr_cmp_q(a.hi(), q.get_mpq_t()) < 0; }
bool certainly_less(const Rational& q, const Interval& a) { return mpfr_cmp_q(a.lo(), q.get_mpq_t()) > 0; }

}  // namespace regover
