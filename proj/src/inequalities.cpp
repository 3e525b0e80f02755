#include "regover/inequalities.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "regover/chern.hpp"
#include "regover/numerics.hpp"

namespace regover {

namespace {

void require_k_min(int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2, got " + std::to_string(k));
}

void require_n_min(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

// Exact values a[0..order] through the shared cache.
std::shared_ptr<const IntegerSeries> values(int k, std::uint64_t order) {
  require_k_min(k);
  return PkCache::global().series(k, order);
}

mpz_class gap_of(const IntegerSeries& a, std::uint64_t n) { return a[n] * a[n] - a[n - 1] * a[n + 1]; }

mpz_class turan_of(const IntegerSeries& a, std::uint64_t n) {
  const mpz_class d1 = a[n] * a[n] - a[n - 1] * a[n + 1];
  const mpz_class d2 = a[n + 1] * a[n + 1] - a[n] * a[n + 2];
  const mpz_class c = a[n] * a[n + 1] - a[n - 1] * a[n + 2];
  return 4 * d1 * d2 - c * c;
}

Rational q_of(const IntegerSeries& a, std::uint64_t n) {
  Rational q(a[n - 1] * a[n + 1], a[n] * a[n]);
  q.canonicalize();
  return q;
}

struct QBoundRow {
  std::uint64_t threshold;
  Rational a3, a4;  // coefficients of π⁴/μ³ and π⁴/μ⁴
  Rational l5, l6;  // lower bound: -l5/μ⁵ - l6/μ⁶
  Rational r5, r6;  // upper bound: -r5/μ⁵ + (r6 + r6_pi8·π⁸)/μ⁶
  Rational r6_pi8;
};

const QBoundRow& qbound_row(int k) {
  if (k < 2 || k > 9) throw std::out_of_range("Q-ratio bounds exist only for k = 2..9");
  static const QBoundRow rows[] = {
      {5652, Rational(1, 16), Rational(3, 16), 7, 130, 6, 120, Rational(1, 256)},
      {365, Rational(1, 9), Rational(1, 3), 13, 200, 6, 146, Rational(1, 81)},
      {455, Rational(9, 64), Rational(27, 64), 16, 300, 15, 150, Rational(81, 4096)},
      {1120, Rational(4, 25), Rational(12, 25), 18, 400, 17, 400, 0},
      {2055, Rational(25, 144), Rational(25, 48), 20, 441, 19, 441, 0},
      {1230, Rational(9, 49), Rational(27, 49), 21, 500, 20, 500, 0},
      {10422, Rational(49, 256), Rational(147, 256), 21, 505, 20, 505, 0},
      {8187, Rational(16, 81), Rational(16, 27), 22, 524, 21, 529, 0},
  };
  return rows[k - 2];
}

}  // namespace

bool check_subadditivity(int k, std::uint64_t a, std::uint64_t b) {
  require_k_min(k);
  if (b < 1 || a < b) throw std::invalid_argument("check_subadditivity: needs a >= b >= 1");
  if (a + b < static_cast<std::uint64_t>(k)) throw std::invalid_argument("check_subadditivity: needs a + b >= k");
  const auto s = values(k, a + b);
  return (*s)[a] * (*s)[b] > (*s)[a + b];
}

QRatio q_ratio(int k, std::uint64_t n) {
  require_n_min(n);
  return {k, n, q_of(*values(k, n + 1), n)};
}

mpz_class logconcavity_gap(int k, std::uint64_t n) {
  require_n_min(n);
  return gap_of(*values(k, n + 1), n);
}

bool check_logconcave(int k, std::uint64_t n, bool strict) {
  const mpz_class g = logconcavity_gap(k, n);
  return strict ? g > 0 : g >= 0;
}

mpz_class turan3_discriminant(int k, std::uint64_t n) {
  require_n_min(n);
  return turan_of(*values(k, n + 2), n);
}

bool check_turan3(int k, std::uint64_t n) { return turan3_discriminant(k, n) > 0; }

std::uint64_t qbounds_threshold(int k) { return qbound_row(k).threshold; }

QBounds q_bounds(int k, std::uint64_t n, long precision) {
  const QBoundRow& row = qbound_row(k);
  if (n < row.threshold)
    throw ThresholdError("q_bounds: requires n >= " + std::to_string(row.threshold) + " for k = " +
                             std::to_string(k) + " (got n = " + std::to_string(n) + ")",
                         static_cast<unsigned>(row.threshold));
  const Interval m = mu(k, n, precision).value;
  const Interval pi4 = pow_int(Interval::pi(precision), 4);
  const Interval inv = Rational(1) / m;
  const Interval i3 = pow_int(inv, 3), i4 = pow_int(inv, 4), i5 = pow_int(inv, 5), i6 = pow_int(inv, 6);
  const Interval common = Rational(1) - row.a3 * pi4 * i3 + row.a4 * pi4 * i4;
  const Interval r6 = row.r6 + row.r6_pi8 * pi4 * pi4;
  return {common - row.l5 * i5 - row.l6 * i6, common - row.r5 * i5 + r6 * i6};
}

bool check_qbounds(int k, std::uint64_t n) {
  const Rational q = q_ratio(k, n).value;
  return with_escalation<bool>([&](long p) -> std::optional<bool> {
    const QBounds b = q_bounds(k, n, p);
    if (certainly_less(b.lower, q) && certainly_less(q, b.upper)) return true;
    if (mpfr_cmp_q(b.lower.lo(), q.get_mpq_t()) >= 0 || mpfr_cmp_q(b.upper.hi(), q.get_mpq_t()) <= 0) return false;
    return std::nullopt;
  });
}

bool jia_criterion(const Rational& u, const Rational& v) {
  if (u < Rational(15, 16) || !(u < v) || !(v < 1)) return false;
  const Rational d = v - u;
  const Rational w = 1 - u;
  return d * d < w * w * w;
}

Rational jia_conclusion(const Rational& u, const Rational& v) {
  const Rational t = 1 - u * v;
  return 4 * (1 - u) * (1 - v) - t * t;
}

Property parse_property(const std::string& s) {
  static const std::map<std::string, Property> names = {{"subadd", Property::subadd},
                                                        {"logconcave", Property::logconcave},
                                                        {"turan3", Property::turan3},
                                                        {"qbounds", Property::qbounds}};
  auto it = names.find(s);
  if (it == names.end())
    throw std::invalid_argument("unknown property '" + s + "' (expected subadd, logconcave, turan3, qbounds)");
  return it->second;
}

std::string to_string(Property p) {
  switch (p) {
    case Property::subadd: return "subadd";
    case Property::logconcave: return "logconcave";
    case Property::turan3: return "turan3";
    case Property::qbounds: return "qbounds";
  }
  return "?";
}

std::uint64_t paper_threshold(int k, Property p) {
  static const std::uint64_t lc[] = {21, 4, 5, 6, 1, 1, 1, 1};
  static const std::uint64_t t3[] = {65, 23, 28, 26, 11, 22, 23, 10};
  switch (p) {
    case Property::subadd: require_k_min(k); return static_cast<std::uint64_t>(k);
    case Property::qbounds: return qbounds_threshold(k);
    case Property::logconcave:
    case Property::turan3:
      if (k < 2 || k > 9) throw std::out_of_range("thresholds are listed only for k = 2..9");
      return p == Property::logconcave ? lc[k - 2] : t3[k - 2];
  }
  return 0;
}

std::uint64_t default_horizon(int k, Property p) {
  switch (p) {
    case Property::subadd: return 200;
    case Property::qbounds: return std::max<std::uint64_t>(2000, qbounds_threshold(k) + 500);
    default: return 2000;
  }
}

namespace {

// Runs verdict(n) for n in [first, last] on up to `jobs` threads.
template <class F>
std::vector<signed char> parallel_verdicts(std::uint64_t first, std::uint64_t last, unsigned jobs, F verdict) {
  const std::uint64_t count = last >= first ? last - first + 1 : 0;
  std::vector<signed char> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(1, count))));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        // Strided assignment balances cost, which grows with n.
        for (std::uint64_t i = t; i < count; i += jobs) out[i] = verdict(first + i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

ThresholdReport scan_thresholds(int k, Property p, std::uint64_t horizon, unsigned jobs) {
  ThresholdReport rep;
  rep.k = k;
  rep.property = p;
  rep.paper_threshold = paper_threshold(k, p);
  rep.horizon = horizon;
  if (horizon < rep.paper_threshold) {
    const std::string msg = "horizon " + std::to_string(horizon) + " is below the threshold " +
                            std::to_string(rep.paper_threshold) + " for " + to_string(p) + ", k = " +
                            std::to_string(k);
    if (p == Property::qbounds) throw ThresholdError(msg, static_cast<unsigned>(rep.paper_threshold));
    throw std::invalid_argument(msg);
  }

  std::vector<signed char> v;  // 1 holds, 0 fails, 2 holds with equality (logconcave)
  switch (p) {
    case Property::subadd: {
      const auto s = values(k, horizon);
      rep.first_n = 2;
      std::vector<std::vector<std::string>> failures(horizon + 1);
      v = parallel_verdicts(2, horizon, jobs, [&](std::uint64_t sum) -> signed char {
        bool ok = true;
        for (std::uint64_t b = 1; 2 * b <= sum; ++b) {
          const std::uint64_t a = sum - b;
          if ((*s)[a] * (*s)[b] <= (*s)[sum]) {
            ok = false;
            failures[sum].push_back("a=" + std::to_string(a) + ",b=" + std::to_string(b));
          }
        }
        return ok;
      });
      for (std::uint64_t sum = 2; sum <= horizon; ++sum)
        if (sum >= rep.paper_threshold)
          for (auto& f : failures[sum]) rep.counterexamples.push_back(f);
      break;
    }
    case Property::logconcave: {
      const auto s = values(k, horizon + 1);
      rep.first_n = 1;
      v = parallel_verdicts(1, horizon, jobs, [&](std::uint64_t n) -> signed char {
        const int sign = sgn(gap_of(*s, n));
        return sign > 0 ? 1 : (sign == 0 ? 2 : 0);
      });
      break;
    }
    case Property::turan3: {
      const auto s = values(k, horizon + 2);
      rep.first_n = 1;
      v = parallel_verdicts(1, horizon, jobs, [&](std::uint64_t n) -> signed char { return turan_of(*s, n) > 0; });
      break;
    }
    case Property::qbounds: {
      values(k, horizon + 1);
      rep.first_n = rep.paper_threshold;
      v = parallel_verdicts(rep.first_n, horizon, jobs,
                            [&](std::uint64_t n) -> signed char { return check_qbounds(k, n); });
      break;
    }
  }

  rep.verdicts.assign(v.begin(), v.end());
  rep.observed_min_threshold = rep.first_n;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::uint64_t n = rep.first_n + i;
    if (v[i] == 2) rep.equality_cases.push_back(n);
    if (v[i] == 0) {
      rep.observed_min_threshold = n + 1;
      if (n < rep.paper_threshold) rep.exceptions_below.push_back(n);
      else if (p != Property::subadd) rep.counterexamples.push_back("n=" + std::to_string(n));
    }
  }
  return rep;
}

nlohmann::json to_json(const ThresholdReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["property"] = to_string(r.property);
  j["paper_threshold"] = r.paper_threshold;
  j["observed_min_threshold"] = r.observed_min_threshold;
  j["horizon"] = r.horizon;
  j["exceptions_below"] = r.exceptions_below;
  if (r.property == Property::logconcave) j["equality_cases"] = r.equality_cases;
  j["counterexamples"] = r.counterexamples;
  j["passed"] = r.passed();
  return j;
}

std::string csv_header_verdicts() { return "k,n,property,verdict"; }

std::string to_csv_verdicts(const ThresholdReport& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.verdicts.size(); ++i)
    os << r.k << ',' << r.first_n + i << ',' << to_string(r.property) << ',' << (r.verdicts[i] ? "true" : "false")
       << '\n';
  return os.str();
}

}  // namespace regover
