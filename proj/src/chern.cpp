#include "regover/chern.hpp"

#include <numeric>
#include <sstream>

#include "regover/numerics.hpp"

namespace regover {

namespace {

mpz_class to_mpz(std::uint64_t n) { return mpz_class(std::to_string(n)); }

Rational pow_rational(const Rational& base, long e) {
  Rational r = 1;
  Rational b = e >= 0 ? base : Rational(1) / base;
  for (long i = 0; i < std::labs(e); ++i) r *= b;
  return r;
}

void require_k(int k) {
  if (k < 2 || k > 9)
    throw std::out_of_range("asymptotic constants exist only for k = 2..9, got " + std::to_string(k));
}

}  // namespace

Interval ChernInvariants::delta4(unsigned l, long precision) const {
  return sqrt(Interval::from_rational(delta4_squared.at(l), precision));
}

ChernInvariants invariants(const EtaQuotientSpec& spec) {
  ChernInvariants inv;
  Rational sum_delta = 0;
  inv.delta2 = 0;
  for (const auto& f : spec.factors()) {
    sum_delta += f.delta;
    inv.delta2 += mpz_class(f.m) * f.delta;
    inv.L = std::lcm(inv.L, f.m);
  }
  inv.delta1 = -sum_delta / 2;
  for (unsigned l = 1; l <= inv.L; ++l) {
    Rational d3 = 0, d4sq = 1;
    for (const auto& f : spec.factors()) {
      const unsigned g = std::gcd(f.m, l);
      d3 -= Rational(mpz_class(f.delta) * g * g, f.m);
      // (m/g)^(-δ/2), squared
      d4sq *= pow_rational(Rational(f.m / g), -f.delta);
    }
    d3.canonicalize();
    inv.delta3[l] = d3;
    inv.delta4_squared[l] = d4sq;
    if (d3 > 0) inv.l_pos.push_back(l);
  }
  return inv;
}

Admissibility check_admissibility(const EtaQuotientSpec& spec) {
  const ChernInvariants inv = invariants(spec);
  for (unsigned l = 1; l <= inv.L; ++l) {
    std::optional<Rational> min_term;
    for (const auto& f : spec.factors()) {
      const unsigned g = std::gcd(f.m, l);
      Rational t(g * g, f.m);
      t.canonicalize();
      if (!min_term || t < *min_term) min_term = t;
    }
    if (*min_term < inv.delta3.at(l) / 24) return {false, l};
  }
  return {true, std::nullopt};
}

ComplexInterval a_hat_complex(unsigned kk, std::uint64_t n, const EtaQuotientSpec& spec, long precision) {
  if (kk == 0) throw std::invalid_argument("a_hat: kk must be >= 1");
  ComplexInterval acc{Interval(precision), Interval(precision)};
  const Interval two_pi = Rational(2) * Interval::pi(precision);
  const mpz_class nn = to_mpz(n);
  for (unsigned h = 0; h < kk; ++h) {
    if (std::gcd(h, kk) != 1) continue;
    Rational theta(-nn * h, kk);
    for (const auto& f : spec.factors()) {
      const unsigned g = std::gcd(f.m, kk);
      theta -= Rational(f.delta, 2) * dedekind_sum(static_cast<long>(f.m / g) * h, kk / g);
    }
    theta.canonicalize();
    // exp(2πiθ) only depends on θ mod 1.
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), theta.get_num_mpz_t(), theta.get_den_mpz_t());
    theta -= fl;
    const Interval angle = two_pi * theta;
    acc.re = acc.re + cos(angle);
    acc.im = acc.im + sin(angle);
  }
  return acc;
}

Interval a_hat(unsigned kk, std::uint64_t n, const EtaQuotientSpec& spec, long precision) {
  ComplexInterval z = a_hat_complex(kk, n, spec, precision);
  if (!z.im.contains(Rational(0)))
    throw std::logic_error("a_hat: imaginary part " + z.im.to_string() + " excludes 0");
  return z.re;
}

Interval chern_sum(const EtaQuotientSpec& spec, std::uint64_t n, unsigned N, long precision) {
  const ChernInvariants inv = invariants(spec);
  if (inv.delta1 != 0) throw UnsupportedSpec("chern_sum: only the Δ₁ = 0 branch is implemented");
  if (!check_admissibility(spec).admissible) throw UnsupportedSpec("chern_sum: spec is not admissible");
  const mpz_class shifted = 24 * to_mpz(n) + inv.delta2;
  if (shifted <= 0) throw std::invalid_argument("chern_sum: needs 24n + Δ₂ > 0");

  const Interval pi = Interval::pi(precision);
  const Interval s24 = Interval::from_integer(shifted, precision);
  Interval total(precision);
  for (unsigned l : inv.l_pos) {
    const Interval d3 = Interval::from_rational(inv.delta3.at(l), precision);
    const Interval prefactor = Rational(2) * pi * inv.delta4(l, precision) * sqrt(d3 / s24);
    const Interval arg = pi / Rational(6) * sqrt(d3 * s24);
    Interval inner(precision);
    for (unsigned kk = 1; kk < N; ++kk) {
      if (kk % inv.L != l % inv.L) continue;
      inner = inner + bessel_i1(arg / Rational(kk)) * a_hat(kk, n, spec, precision) / Rational(kk);
    }
    total = total + prefactor * inner;
  }
  return total;
}

CoefficientSource parse_coefficient_source(const std::string& s) {
  if (s == "chern") return CoefficientSource::chern_derived;
  if (s == "table") return CoefficientSource::printed_table;
  throw std::invalid_argument("unknown coefficient source '" + s + "' (expected chern or table)");
}

std::string to_string(CoefficientSource s) { return s == CoefficientSource::chern_derived ? "chern" : "table"; }

unsigned remainder_threshold(int k) {
  require_k(k);
  static const unsigned t[] = {22, 49, 41, 58, 130, 102, 129, 268};
  return t[k - 2];
}

unsigned relative_threshold(int k) {
  require_k(k);
  static const unsigned t[] = {43, 49, 43, 58, 130, 102, 129, 268};
  return t[k - 2];
}

bool mu_at_least(int k, std::uint64_t n, unsigned t) {
  return with_escalation<bool>([&](long p) -> std::optional<bool> {
    const Interval m = mu(k, n, p).value;
    if (certainly_less(m, Rational(t))) return false;
    if (mpfr_cmp_ui(m.lo(), t) >= 0) return true;
    return std::nullopt;
  });
}

namespace {

struct PrintedRow {
  Rational c_squared;  // Cₖ(n) = √c_squared · π² / μₖ
  Rational a_squared;  // R′ₖ(n) = √a_squared · π^{3/2} μₖ^{-1/2} exp(μₖ / r)
  unsigned r;
};

const PrintedRow& printed_row(int k) {
  require_k(k);
  static const PrintedRow rows[] = {
      {Rational(1, 8), Rational(3, 4), 3},           {Rational(4, 27), Rational(160, 243), 5},
      {Rational(9, 16), Rational(27, 8), 3},         {Rational(64, 125), Rational(6144, 3125), 3},
      {Rational(25, 54), Rational(500, 243), 5},     {Rational(324, 343), Rational(489888, 117649), 3},
      {Rational(49, 32), Rational(147, 16), 3},      {Rational(64, 81), Rational(2560, 729), 5},
  };
  return rows[k - 2];
}

void require_threshold(int k, std::uint64_t n, unsigned t, const char* what) {
  if (!mu_at_least(k, n, t))
    throw ThresholdError(std::string(what) + ": requires μ" + std::to_string(k) + "(n) >= " + std::to_string(t) +
                             " (n = " + std::to_string(n) + " is below)",
                         t);
}

}  // namespace

Interval main_coefficient(int k, std::uint64_t n, CoefficientSource src, long precision) {
  require_k(k);
  if (n == 0) throw std::invalid_argument("main_coefficient: n must be >= 1");
  const Interval pi = Interval::pi(precision);
  if (src == CoefficientSource::printed_table) {
    const Interval m = mu(k, n, precision).value;
    return sqrt(Interval::from_rational(printed_row(k).c_squared, precision)) * pi * pi / m;
  }
  const ChernInvariants inv = invariants(build_spec(k));
  if (inv.delta1 != 0) throw UnsupportedSpec("main_coefficient: Δ₁ != 0");
  const Interval s24 = Interval::from_integer(24 * to_mpz(n) + inv.delta2, precision);
  return Rational(2) * pi * inv.delta4(1, precision) *
         sqrt(Interval::from_rational(inv.delta3.at(1), precision) / s24);
}

Interval main_term(int k, std::uint64_t n, CoefficientSource src, long precision) {
  return main_coefficient(k, n, src, precision) * bessel_i1(mu(k, n, precision).value);
}

Interval remainder_bound(int k, std::uint64_t n, long precision) {
  require_threshold(k, n, remainder_threshold(k), "remainder_bound");
  const PrintedRow& row = printed_row(k);
  const Interval pi = Interval::pi(precision);
  const Interval m = mu(k, n, precision).value;
  return sqrt(Interval::from_rational(row.a_squared, precision)) * pi * sqrt(pi) / sqrt(m) *
         exp(m / Rational(row.r));
}

Bracket remainder_bracket(int k, std::uint64_t n, CoefficientSource src, long precision) {
  const Interval r = remainder_bound(k, n, precision);
  const Interval m = main_term(k, n, src, precision);
  return {m - r, m + r};
}

Bracket pk_bounds(int k, std::uint64_t n, CoefficientSource src, long precision) {
  require_threshold(k, n, relative_threshold(k), "pk_bounds");
  const Interval m = main_term(k, n, src, precision);
  const Interval rel = Rational(1) / pow_int(mu(k, n, precision).value, 6);
  return {m * (Rational(1) - rel), m * (Rational(1) + rel)};
}

std::optional<bool> bracket_contains(const Bracket& b, const mpz_class& value) {
  const Rational v(value);
  if (certainly_less(v, b.lower) || certainly_less(b.upper, v)) return false;
  if (certainly_less(b.lower, v) && certainly_less(v, b.upper)) return true;
  // Endpoints meeting the value exactly still count as inside.
  if (b.lower.is_point() && b.lower.contains(v)) return true;
  if (b.upper.is_point() && b.upper.contains(v)) return true;
  return std::nullopt;
}

AsymptoticEstimate estimate(int k, std::uint64_t n, CoefficientSource src, long precision) {
  require_k(k);
  const mpz_class exact = pk(k, n);
  const bool has_rem = mu_at_least(k, n, remainder_threshold(k));
  const bool has_rel = mu_at_least(k, n, relative_threshold(k));
  for (long p = precision; p <= kMaxPrecision; p *= 2) {
    AsymptoticEstimate e{k, n, mu(k, n, p).value, main_term(k, n, src, p), {}, {}, {}, exact, {}, {}};
    bool decided = true;
    if (has_rem) {
      e.remainder = remainder_bound(k, n, p);
      e.remainder_bracket = Bracket{e.main - *e.remainder, e.main + *e.remainder};
      e.inside_remainder = bracket_contains(*e.remainder_bracket, exact);
      decided = decided && e.inside_remainder.has_value();
    }
    if (has_rel) {
      e.relative_bracket = pk_bounds(k, n, src, p);
      e.inside_relative = bracket_contains(*e.relative_bracket, exact);
      decided = decided && e.inside_relative.has_value();
    }
    if (decided) return e;
  }
  throw PrecisionExhausted("estimate: bracket comparison undecided for k = " + std::to_string(k) +
                           ", n = " + std::to_string(n));
}

std::string csv_header_asymptotic() {
  return "k,n,mu,main_lo,main_hi,rprime_hi,exact,inside,rel_lo,rel_hi,inside_rel";
}

namespace {

std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "n/a"; }

std::string lo_str(const Interval& x) {
  const std::string s = x.to_string();
  return s.substr(1, s.find(',') - 1);
}

std::string hi_str(const Interval& x) {
  const std::string s = x.to_string();
  return s.substr(s.find(',') + 1, s.size() - s.find(',') - 2);
}

}  // namespace

std::string to_csv(const AsymptoticEstimate& e) {
  std::ostringstream os;
  os << e.k << ',' << e.n << ',' << '"' << e.mu.to_string() << '"' << ',' << lo_str(e.main) << ',' << hi_str(e.main) << ','
     << (e.remainder ? hi_str(*e.remainder) : "n/a") << ',' << e.exact.get_str() << ','
     << opt_bool(e.inside_remainder) << ',' << (e.relative_bracket ? lo_str(e.relative_bracket->lower) : "n/a")
     << ',' << (e.relative_bracket ? hi_str(e.relative_bracket->upper) : "n/a") << ','
     << opt_bool(e.inside_relative);
  return os.str();
}

nlohmann::json to_json(const AsymptoticEstimate& e) {
  auto ob = [](const std::optional<bool>& b) { return b ? nlohmann::json(*b) : nlohmann::json(nullptr); };
  nlohmann::json j;
  j["k"] = e.k;
  j["n"] = e.n;
  j["mu"] = e.mu.to_string();
  j["main_lo"] = lo_str(e.main);
  j["main_hi"] = hi_str(e.main);
  j["rprime_hi"] = e.remainder ? nlohmann::json(hi_str(*e.remainder)) : nlohmann::json(nullptr);
  j["exact"] = e.exact.get_str();
  j["inside"] = ob(e.inside_remainder);
  j["relative_lo"] = e.relative_bracket ? nlohmann::json(lo_str(e.relative_bracket->lower)) : nlohmann::json(nullptr);
  j["relative_hi"] = e.relative_bracket ? nlohmann::json(hi_str(e.relative_bracket->upper)) : nlohmann::json(nullptr);
  j["inside_relative"] = ob(e.inside_relative);
  return j;
}

}  // namespace regover
