// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero if any criterion fails.

#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "regover/chern.hpp"
#include "regover/combinatorics.hpp"
#include "regover/inequalities.hpp"
#include "regover/numerics.hpp"
#include "regover/qseries.hpp"

using namespace regover;

namespace {

const unsigned kJobs = std::max(1u, std::thread::hardware_concurrency());

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < kJobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

struct Line {
  int id;
  std::string title;
  bool pass;
  std::vector<std::string> details;
};

std::vector<Line> g_lines;

void report(Line l, double seconds) {
  std::ostringstream t;
  t.precision(1);
  t << std::fixed << seconds;
  std::cout << "criterion " << l.id << ": " << (l.pass ? "PASS" : "FAIL") << "  " << l.title << "  (" << t.str()
            << " s)\n";
  for (const auto& d : l.details) std::cout << "    " << d << '\n';
  std::cout.flush();
  g_lines.push_back(std::move(l));
}

template <class F>
void timed(F f) {
  const auto t0 = std::chrono::steady_clock::now();
  Line l = f();
  report(std::move(l), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// 1. generating function vs brute-force enumeration
Line oracle_equivalence() {
  struct Job {
    int k;
    unsigned n;
  };
  std::vector<Job> jobs;
  for (int k = 2; k <= 9; ++k)
    for (unsigned n = 0; n <= 40; ++n) jobs.push_back({k, n});
  std::vector<char> ok(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    ok[i] = pk(jobs[i].k, jobs[i].n) == count_overpartitions(jobs[i].n, Constraint::regular(jobs[i].k));
  });
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!ok[i]) bad.push_back("k=" + std::to_string(jobs[i].k) + " n=" + std::to_string(jobs[i].n));
  Line l{1, "pk(k,n) == enumeration, k=2..9, 0<=n<=40, exact", bad.empty(), {}};
  l.details.push_back(std::to_string(jobs.size() - bad.size()) + "/" + std::to_string(jobs.size()) + " match");
  if (!bad.empty()) l.details.push_back("mismatch: " + join(bad));
  return l;
}

// 2. strict log-subadditivity sweep
Line subadditivity_sweep() {
  Line l{2, "pbar_k(a)pbar_k(b) > pbar_k(a+b), k=2..9, a>=b>=1, k<=a+b<=200, exact", true, {}};
  for (int k = 2; k <= 9; ++k) {
    const auto r = scan_thresholds(k, Property::subadd, 200, kJobs);
    if (!r.passed()) {
      l.pass = false;
      l.details.push_back("k=" + std::to_string(k) + ": " + std::to_string(r.counterexamples.size()) +
                          " counterexamples: " + join(r.counterexamples));
    }
  }
  if (l.pass) l.details.push_back("no counterexamples");
  return l;
}

// 3. injection suites
Line injection_suites() {
  Line l{3, "injection suites: f2/f3 a<=20 k=2..9, f1 k=5..9 a+b<=18, cardinality k=2..4 a+b<=18", true, {}};
  struct Suite {
    std::string name;
    Lemma lemma;
    std::vector<std::array<unsigned, 3>> grid;
  };
  std::vector<Suite> suites;
  {
    Suite f2{"f2 (a -> a+1)", Lemma::add_one, {}}, f3{"f3 (a -> a+2)", Lemma::add_two, {}};
    for (unsigned k = 2; k <= 9; ++k)
      for (unsigned a = 1; a <= 20; ++a) {
        f2.grid.push_back({k, a, 1});
        f3.grid.push_back({k, a, 2});
      }
    Suite f1{"f1 (no 1's, no 2's split)", Lemma::split_no_ones_no_twos, {}};
    Suite card{"cardinality, k=2..4", Lemma::split_no_ones_no_twos, {}};
    for (unsigned k = 2; k <= 9; ++k)
      for (unsigned a = 1; a < 18; ++a)
        for (unsigned b = 1; a + b <= 18; ++b) (k >= 5 ? f1 : card).grid.push_back({k, a, b});
    suites = {f2, f3, f1, card};
  }
  for (const auto& s : suites) {
    std::vector<VerificationReport> reps(s.grid.size());
    parallel_for(s.grid.size(), [&](std::size_t i) {
      reps[i] = verify_lemma(s.lemma, s.grid[i][0], s.grid[i][1], s.grid[i][2]);
    });
    std::size_t injection = 0, injective = 0, codomain_bad = 0, ineq_bad = 0, passed = 0;
    std::vector<std::string> failing;
    for (const auto& r : reps) {
      if (r.mode == VerificationMode::injection) {
        ++injection;
        if (r.injective.value_or(false)) ++injective;
        if (!r.in_codomain.value_or(true)) ++codomain_bad;
      }
      if (!r.holds) ++ineq_bad;
      if (r.passed()) {
        ++passed;
      } else if (failing.size() < 12) {
        failing.push_back("(k=" + std::to_string(r.k) + ",a=" + std::to_string(r.a) + ",b=" + std::to_string(r.b) + ")");
      }
    }
    const bool ok = passed == reps.size();
    l.pass = l.pass && ok;
    std::ostringstream d;
    d << s.name << ": " << (ok ? "ok" : "failing") << ", " << passed << "/" << reps.size() << " instances confirmed";
    if (injection) d << ", injective " << injective << "/" << injection << ", codomain violations " << codomain_bad;
    d << ", inequality failures " << ineq_bad;
    l.details.push_back(d.str());
    if (!ok) l.details.push_back("  first failures: " + join(failing));
  }
  return l;
}

struct BracketTally {
  std::size_t checked = 0, violations = 0, undecided = 0;
  std::vector<std::string> first;
};

// Checks containment for each (k, n) in `points` with the given bracket
// builder, escalating precision from 192 up to max_bits.
BracketTally run_brackets(const std::vector<std::pair<int, std::uint64_t>>& points,
                          const std::function<Bracket(int, std::uint64_t, long)>& build, long max_bits) {
  std::vector<int> verdict(points.size());  // 1 inside, 0 outside, -1 undecided
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [k, n] = points[i];
    const mpz_class exact = PkCache::global().get(k, n);
    verdict[i] = -1;
    for (long p = kDefaultPrecision; p <= max_bits; p *= 2)
      if (auto in = bracket_contains(build(k, n, p), exact)) {
        verdict[i] = *in ? 1 : 0;
        break;
      }
  });
  BracketTally t;
  t.checked = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (verdict[i] == 0) ++t.violations;
    if (verdict[i] < 0) ++t.undecided;
    if (verdict[i] != 1 && t.first.size() < 8)
      t.first.push_back("k=" + std::to_string(points[i].first) + " n=" + std::to_string(points[i].second));
  }
  return t;
}

std::string describe(const BracketTally& t) {
  std::string s = std::to_string(t.checked) + " points, " + std::to_string(t.violations) + " outside, " +
                  std::to_string(t.undecided) + " undecided";
  if (!t.first.empty()) s += "; first: " + join(t.first);
  return s;
}

// 4. remainder bracket, n <= 1500 with μₖ(n) >= remainder threshold
Line remainder_brackets() {
  std::vector<std::pair<int, std::uint64_t>> pts;
  for (int k = 2; k <= 9; ++k) {
    PkCache::global().series(k, 1500);
    for (std::uint64_t n = 1; n <= 1500; ++n)
      if (mu_at_least(k, n, remainder_threshold(k))) pts.emplace_back(k, n);
  }
  auto with = [](CoefficientSource src) {
    return [src](int k, std::uint64_t n, long p) { return remainder_bracket(k, n, src, p); };
  };
  const auto printed = run_brackets(pts, with(CoefficientSource::printed_table), 384);
  const auto derived = run_brackets(pts, with(CoefficientSource::chern_derived), 384);
  Line l{4, "pbar_k(n) in C_k(n)I1(mu) +- R'_k(n), printed C_k, mu>=n_k, n<=1500, decided at <=384 bits",
         printed.violations == 0 && printed.undecided == 0, {}};
  l.details.push_back("printed C_k: " + describe(printed));
  l.details.push_back("C_k from the eta-quotient invariants (library default): " + describe(derived) +
                      (derived.violations == 0 && derived.undecided == 0 ? "  [holds]" : "  [fails]"));
  return l;
}

// 5. relative bracket, all n <= 1500 and every 10th n up to 5000
Line relative_brackets() {
  std::vector<std::pair<int, std::uint64_t>> pts;
  for (int k = 2; k <= 9; ++k) {
    PkCache::global().series(k, 5000);
    for (std::uint64_t n = 1; n <= 5000; n += (n < 1500 ? 1 : 10))
      if (mu_at_least(k, n, relative_threshold(k))) pts.emplace_back(k, n);
  }
  auto with = [](CoefficientSource src) {
    return [src](int k, std::uint64_t n, long p) { return pk_bounds(k, n, src, p); };
  };
  const auto printed = run_brackets(pts, with(CoefficientSource::printed_table), kMaxPrecision);
  const auto derived = run_brackets(pts, with(CoefficientSource::chern_derived), kMaxPrecision);
  Line l{5, "pbar_k(n) in M_k(n)[1 - mu^-6, 1 + mu^-6], printed C_k, mu>=threshold, n<=1500 and every 10 to 5000",
         printed.violations == 0 && printed.undecided == 0, {}};
  l.details.push_back("printed C_k: " + describe(printed));
  l.details.push_back("C_k from the eta-quotient invariants (library default): " + describe(derived) +
                      (derived.violations == 0 && derived.undecided == 0 ? "  [holds]" : "  [fails]"));
  return l;
}

// 6. log-concavity and third-order Turán thresholds
Line turan_thresholds() {
  Line l{6, "log-concavity n>=nbar_k and Turan3 n>=nhat_k up to n=2000, exact", true, {}};
  for (Property p : {Property::logconcave, Property::turan3}) {
    std::ostringstream claimed, observed, eq;
    for (int k = 2; k <= 9; ++k) {
      const auto r = scan_thresholds(k, p, 2000, kJobs);
      l.pass = l.pass && r.passed();
      claimed << (k > 2 ? "," : "") << r.paper_threshold;
      observed << (k > 2 ? "," : "") << r.observed_min_threshold;
      if (!r.equality_cases.empty()) {
        std::vector<std::string> e;
        for (auto n : r.equality_cases) e.push_back(std::to_string(n));
        eq << " k" << k << ":" << join(e, ",");
      }
      for (const auto& c : r.counterexamples) l.details.push_back("counterexample " + to_string(p) + " k=" + std::to_string(k) + " " + c);
    }
    l.details.push_back(to_string(p) + ": claimed " + claimed.str() + "; observed " + observed.str());
    if (!eq.str().empty()) l.details.push_back(to_string(p) + " equality cases (gap = 0):" + eq.str());
  }
  return l;
}

// 7. Q-ratio bounds from ñₖ to ñₖ + 500
Line qratio_bounds() {
  std::vector<std::pair<int, std::uint64_t>> pts;
  for (int k = 2; k <= 9; ++k) {
    const auto n0 = qbounds_threshold(k);
    PkCache::global().series(k, n0 + 502);
    for (std::uint64_t n = n0; n <= n0 + 500; ++n) pts.emplace_back(k, n);
  }
  std::vector<int> verdict(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      verdict[i] = check_qbounds(pts[i].first, pts[i].second) ? 1 : 0;
    } catch (const PrecisionExhausted&) {
      verdict[i] = -1;
    }
  });
  std::size_t bad = 0, undecided = 0;
  std::vector<std::string> first;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (verdict[i] == 0) ++bad;
    if (verdict[i] < 0) ++undecided;
    if (verdict[i] != 1 && first.size() < 8)
      first.push_back("k=" + std::to_string(pts[i].first) + " n=" + std::to_string(pts[i].second));
  }
  Line l{7, "L_k(n) < Q_k(n) < R_k(n) for ntilde_k <= n <= ntilde_k + 500, definite interval comparisons",
         bad == 0 && undecided == 0, {}};
  l.details.push_back(std::to_string(pts.size()) + " points, " + std::to_string(bad) + " outside, " +
                      std::to_string(undecided) + " undecided" + (first.empty() ? "" : "; first: " + join(first)));
  return l;
}

// 8. numerics properties
Line numerics_properties() {
  std::mt19937_64 rng(20261019);
  Line l{8, "I1 bounds on 50 s in [26,500]; 100 reciprocity pairs h,j<=500; 100 precision-refinement ops", true, {}};

  // large-s bounds on s = m/1000
  std::uniform_int_distribution<long> sd(26000, 500000);
  std::size_t bessel_bad = 0;
  for (int t = 0; t < 50; ++t) {
    const Rational s(sd(rng), 1000);
    try {
      const bool ok = with_escalation<bool>([&](long p) -> std::optional<bool> {
        const auto S = Interval::from_rational(s, p);
        const auto I = bessel_i1(S);
        const auto b = bessel_i1_asymptotic_bounds(S);
        if (certainly_less(b.lower, I) && certainly_less(I, b.upper)) return true;
        if (certainly_less(I, b.lower) || certainly_less(b.upper, I)) return false;
        return std::nullopt;
      });
      if (!ok) ++bessel_bad;
    } catch (const PrecisionExhausted&) {
      ++bessel_bad;
    }
  }
  l.details.push_back("I1 between the large-s bounds: " + std::to_string(50 - bessel_bad) + "/50");

  // reciprocity s(h,j) + s(j,h) = -1/4 + (h/j + j/h + 1/(hj))/12, plus s(-h,j) = -s(h,j)
  std::uniform_int_distribution<long> hd(1, 500);
  std::size_t dedekind_bad = 0;
  for (int t = 0; t < 100;) {
    const long h = hd(rng), j = hd(rng);
    if (std::gcd(h, j) != 1) continue;
    ++t;
    const Rational rhs = Rational(-1, 4) + (Rational(h, j) + Rational(j, h) + Rational(1, h * j)) / 12;
    if (dedekind_sum(h, j) + dedekind_sum(j, h) != rhs || dedekind_sum(-h, j) != -dedekind_sum(h, j)) ++dedekind_bad;
  }
  l.details.push_back("Dedekind reciprocity and odd symmetry: " + std::to_string(100 - dedekind_bad) + "/100");

  // width at 2p <= width at p for random ops on fixed rational inputs
  std::uniform_int_distribution<long> num(1, 200000), wid(0, 50), opd(0, 8), pd(1, 4);
  std::size_t refine_bad = 0;
  std::vector<std::string> bad_ops;
  const char* names[] = {"add", "sub", "mul", "div", "sqrt", "exp", "cos", "sin", "bessel_i1"};
  for (int t = 0; t < 100; ++t) {
    const Rational a0(num(rng), 1000), b0(num(rng), 1000);
    const Rational a1 = a0 + Rational(wid(rng), 1000000), b1 = b0 + Rational(wid(rng), 1000000);
    const int op = static_cast<int>(opd(rng));
    const long p = 64 * pd(rng);
    auto eval = [&](long prec) {
      const auto A = Interval::hull(a0 / 1000, a1 / 1000, prec);
      const auto B = Interval::hull(b0 / 1000, b1 / 1000, prec);
      const auto X = Interval::hull(a0, a1, prec);
      switch (op) {
        case 0: return X + B;
        case 1: return X - B;
        case 2: return X * B;
        case 3: return X / B;
        case 4: return sqrt(X);
        case 5: return exp(A);
        case 6: return cos(X);
        case 7: return sin(X);
        default: return bessel_i1(A);
      }
    };
    const auto w1 = eval(p).width(), w2 = eval(2 * p).width();
    if (!(w2.hi_rational() <= w1.hi_rational())) {
      ++refine_bad;
      bad_ops.push_back(names[op]);
    }
  }
  l.details.push_back("doubling precision never widened: " + std::to_string(100 - refine_bad) + "/100" +
                      (bad_ops.empty() ? "" : " (widened: " + join(bad_ops) + ")"));
  l.pass = bessel_bad == 0 && dedekind_bad == 0 && refine_bad == 0;
  return l;
}

}  // namespace

int main() {
  std::cout << "acceptance run, " << kJobs << " threads\n";
  timed(oracle_equivalence);
  timed(subadditivity_sweep);
  timed(injection_suites);
  timed(remainder_brackets);
  timed(relative_brackets);
  timed(turan_thresholds);
  timed(qratio_bounds);
  timed(numerics_properties);
  std::size_t passed = 0;
  for (const auto& l : g_lines) passed += l.pass;
  std::cout << "summary: " << passed << "/" << g_lines.size() << " criteria pass\n";
  return passed == g_lines.size() ? 0 : 1;
}
