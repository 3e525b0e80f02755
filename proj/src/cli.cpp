#include "regover/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <regex>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "regover/chern.hpp"
#include "regover/combinatorics.hpp"
#include "regover/inequalities.hpp"
#include "regover/qseries.hpp"

namespace regover {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Range {
  long lo, hi;
};

// "5" or "2..9"
Range parse_range(const std::string& s, long min_value) {
  static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError("malformed range '" + s + "' (expected N or A..B)");
  Range r{std::stol(m[1]), m[2].matched ? std::stol(m[2]) : std::stol(m[1])};
  if (r.lo > r.hi) throw UsageError("empty range '" + s + "'");
  if (r.lo < min_value) throw UsageError("range '" + s + "' starts below " + std::to_string(min_value));
  return r;
}

enum class Output { csv, json, table };

Output parse_output(const std::string& s) {
  if (s == "csv") return Output::csv;
  if (s == "json") return Output::json;
  if (s == "table") return Output::table;
  throw UsageError("unknown output format '" + s + "'");
}

long default_precision() {
  if (const char* env = std::getenv("REGOVER_PRECISION")) {
    try {
      return std::stol(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("REGOVER_PRECISION is not an integer: ") + env);
    }
  }
  return kDefaultPrecision;
}

// Runs f(i) for i in [0, count) on `jobs` threads; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, F f) {
  std::vector<std::optional<T>> slots(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += jobs) slots[i].emplace(f(i));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct Config {
  std::string output = "table";
  long precision = 0;
  unsigned jobs = 0;

  std::string k = "2";
  // count
  long n = -1;
  long n_max = -1;
  // verify
  std::string property;
  long horizon = -1;
  // asym
  long n_min = -1;
  long step = 1;
  std::string coefficients = "chern";
  // lemmas
  std::string lemma_id = "2.2";
  long a_max = -1;
  long b_max = -1;
  long sum_max = 18;
};

int cmd_count(const Config& c, std::ostream& out) {
  const Range kr = parse_range(c.k, 2);
  if (c.n < 0 && c.n_max < 0) throw UsageError("count needs --n or --n-max");
  const long first = c.n >= 0 ? c.n : 0;
  const long last = c.n >= 0 ? c.n : c.n_max;
  const Output fmt = parse_output(c.output);

  if (fmt == Output::table && kr.lo == kr.hi && first == last) {
    out << pk(static_cast<int>(kr.lo), static_cast<std::size_t>(first)).get_str() << '\n';
    return 0;
  }
  nlohmann::json arr = nlohmann::json::array();
  if (fmt == Output::csv) out << "k,n,value\n";
  for (long k = kr.lo; k <= kr.hi; ++k) {
    const auto s = PkCache::global().series(static_cast<int>(k), static_cast<std::size_t>(last));
    for (long n = first; n <= last; ++n) {
      const std::string v = (*s)[static_cast<std::size_t>(n)].get_str();
      if (fmt == Output::csv) out << k << ',' << n << ',' << v << '\n';
      else if (fmt == Output::json) arr.push_back({{"k", k}, {"n", n}, {"value", v}});
      else out << std::setw(3) << k << std::setw(7) << n << "  " << v << '\n';
    }
  }
  if (fmt == Output::json) out << arr.dump(2) << '\n';
  return 0;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const Range kr = parse_range(c.k, 2);
  const Property p = parse_property(c.property);
  const Output fmt = parse_output(c.output);
  std::vector<ThresholdReport> reports;
  for (long k = kr.lo; k <= kr.hi; ++k) {
    const std::uint64_t h =
        c.horizon >= 0 ? static_cast<std::uint64_t>(c.horizon) : default_horizon(static_cast<int>(k), p);
    reports.push_back(scan_thresholds(static_cast<int>(k), p, h, c.jobs));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();

  if (fmt == Output::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else if (fmt == Output::csv) {
    out << csv_header_verdicts() << '\n';
    for (const auto& r : reports) out << to_csv_verdicts(r);
  } else {
    for (const auto& r : reports) {
      out << "k=" << r.k << ' ' << to_string(r.property) << " claimed>=" << r.paper_threshold
          << " observed>=" << r.observed_min_threshold << " horizon=" << r.horizon
          << (r.passed() ? " PASS" : " FAIL");
      if (!r.exceptions_below.empty()) {
        out << " below:";
        for (auto n : r.exceptions_below) out << ' ' << n;
      }
      if (!r.equality_cases.empty()) {
        out << " equality:";
        for (auto n : r.equality_cases) out << ' ' << n;
      }
      out << '\n';
      for (const auto& ce : r.counterexamples) out << "  counterexample " << ce << '\n';
    }
  }
  return ok ? 0 : 1;
}

int cmd_asym(const Config& c, std::ostream& out) {
  const Range kr = parse_range(c.k, 2);
  if (kr.hi > 9) throw UsageError("asym supports k = 2..9");
  if (c.step < 1) throw UsageError("--step must be >= 1");
  long first, last;
  if (c.n >= 0) {
    first = last = c.n;
  } else if (c.n_max >= 0) {
    first = c.n_min >= 0 ? c.n_min : 1;
    last = c.n_max;
  } else {
    throw UsageError("asym needs --n or --n-max");
  }
  if (first < 1) throw UsageError("asym needs n >= 1");
  const CoefficientSource src = parse_coefficient_source(c.coefficients);
  const Output fmt = parse_output(c.output);

  std::vector<std::pair<int, std::uint64_t>> grid;
  for (long k = kr.lo; k <= kr.hi; ++k)
    for (long n = first; n <= last; n += c.step) grid.emplace_back(static_cast<int>(k), n);
  for (long k = kr.lo; k <= kr.hi; ++k) PkCache::global().series(static_cast<int>(k), last);

  const auto rows = parallel_map<AsymptoticEstimate>(grid.size(), c.jobs, [&](std::size_t i) {
    return estimate(grid[i].first, grid[i].second, src, c.precision);
  });
  bool ok = true;
  for (const auto& e : rows)
    ok = ok && e.inside_remainder.value_or(true) && e.inside_relative.value_or(true);

  if (fmt == Output::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : rows) arr.push_back(to_json(e));
    out << arr.dump(2) << '\n';
  } else {
    out << csv_header_asymptotic() << '\n';
    for (const auto& e : rows) out << to_csv(e) << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_lemmas(const Config& c, std::ostream& out) {
  const Lemma lemma = parse_lemma(c.lemma_id);
  const Range kr = parse_range(c.k, 2);
  const Output fmt = parse_output(c.output);
  const long a_max = c.a_max >= 0 ? c.a_max : 20;

  struct Point {
    unsigned k, a, b;
  };
  std::vector<Point> grid;
  for (long k = kr.lo; k <= kr.hi; ++k) {
    const auto uk = static_cast<unsigned>(k);
    switch (lemma) {
      case Lemma::split_no_ones_no_twos:
        for (long a = 1; a < c.sum_max && (c.a_max < 0 || a <= c.a_max); ++a)
          for (long b = 1; a + b <= c.sum_max && (c.b_max < 0 || b <= c.b_max); ++b)
            grid.push_back({uk, static_cast<unsigned>(a), static_cast<unsigned>(b)});
        break;
      case Lemma::add_one:
      case Lemma::add_two:
        for (long a = 1; a <= a_max; ++a) grid.push_back({uk, static_cast<unsigned>(a), lemma == Lemma::add_one ? 1u : 2u});
        break;
      case Lemma::add_general: {
        const long b_max = c.b_max >= 0 ? c.b_max : 10;
        for (long a = 1; a <= a_max; ++a)
          for (long b = 3; b <= b_max; ++b)
            if (a + b >= k + 1) grid.push_back({uk, static_cast<unsigned>(a), static_cast<unsigned>(b)});
        break;
      }
    }
  }

  const auto reports = parallel_map<VerificationReport>(
      grid.size(), c.jobs, [&](std::size_t i) { return verify_lemma(lemma, grid[i].k, grid[i].a, grid[i].b); });
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();

  if (fmt == Output::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else if (fmt == Output::csv) {
    out << "lemma,k,a,b,lhs,rhs,strict,holds,mode,injective,in_codomain,witness,passed\n";
    for (const auto& r : reports) {
      auto ob = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "n/a"; };
      out << lemma_id(r.lemma) << ',' << r.k << ',' << r.a << ',' << r.b << ',' << r.lhs << ',' << r.rhs << ','
          << (r.strict ? "true" : "false") << ',' << (r.holds ? "true" : "false") << ','
          << (r.mode == VerificationMode::injection ? "injection" : "cardinality") << ',' << ob(r.injective) << ','
          << ob(r.in_codomain) << ',' << (r.unattained_witness ? r.unattained_witness->to_string() : "n/a") << ','
          << (r.passed() ? "true" : "false") << '\n';
    }
  } else {
    bool noted_cardinality = false;
    for (const auto& r : reports) {
      if (r.mode == VerificationMode::cardinality && lemma == Lemma::split_no_ones_no_twos && r.k < 5 &&
          !noted_cardinality) {
        out << "note: lemma 2.1 has no explicit map for k = 2, 3, 4; cardinality-only verification\n";
        noted_cardinality = true;
      }
      out << "lemma " << lemma_id(r.lemma) << " k=" << r.k << " a=" << r.a << " b=" << r.b << " lhs=" << r.lhs
          << " rhs=" << r.rhs << ' ' << (r.mode == VerificationMode::injection ? "injection" : "cardinality");
      if (r.injective) out << " injective=" << (*r.injective ? "yes" : "no");
      if (r.in_codomain) out << " codomain=" << (*r.in_codomain ? "yes" : "no");
      if (r.unattained_witness) out << " witness=" << r.unattained_witness->to_string() << " (" << r.witness_form << ')';
      out << (r.passed() ? " PASS" : " FAIL") << '\n';
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counts, injections, asymptotic brackets and inequality sweeps for k-regular overpartitions"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--output", c.output, "csv, json or table")->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--precision", c.precision, "working bits (>= 64); default $REGOVER_PRECISION or 192");
  app.add_option("--jobs", c.jobs, "worker threads (default: all cores)");

  auto* count = app.add_subcommand("count", "print exact p̄ₖ(n)");
  count->add_option("--k", c.k, "k or range A..B")->required();
  count->add_option("--n", c.n, "single n");
  count->add_option("--n-max", c.n_max, "all n from 0 to this value");

  auto* verify = app.add_subcommand("verify", "sweep an inequality and compare with the claimed threshold");
  verify->add_option("property", c.property, "subadd, logconcave, turan3 or qbounds")->required();
  verify->add_option("--k", c.k, "k or range A..B")->required();
  verify->add_option("--horizon", c.horizon, "largest n (subadd: largest a + b)");

  auto* asym = app.add_subcommand("asym", "certified brackets against exact values");
  asym->add_option("--k", c.k, "k or range A..B within 2..9")->required();
  asym->add_option("--n", c.n, "single n");
  asym->add_option("--n-min", c.n_min, "first n (default 1)");
  asym->add_option("--n-max", c.n_max, "last n");
  asym->add_option("--step", c.step, "stride in n");
  asym->add_option("--coefficients", c.coefficients, "main-term coefficient: chern or table")
      ->check(CLI::IsMember({"chern", "table"}));

  auto* lemmas = app.add_subcommand("lemmas", "exhaustive verification of the splitting lemmas");
  lemmas->add_option("--id", c.lemma_id, "2.1, 2.2, 2.3 or 2.4");
  lemmas->add_option("--k", c.k, "k or range A..B")->required();
  lemmas->add_option("--a-max", c.a_max, "largest a (default 20)");
  lemmas->add_option("--b-max", c.b_max, "largest b");
  lemmas->add_option("--sum-max", c.sum_max, "lemma 2.1: largest a + b (default 18)");

  // All subcommand options are also accepted before the subcommand name.
  for (auto* sub : {count, verify, asym, lemmas}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (c.precision == 0) c.precision = default_precision();
    if (c.precision < 64) throw UsageError("precision must be >= 64 bits");
    if (c.jobs == 0) c.jobs = std::max(1u, std::thread::hardware_concurrency());

    if (count->parsed()) return cmd_count(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (asym->parsed()) return cmd_asym(c, out);
    if (lemmas->parsed()) return cmd_lemmas(c, out);
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ThresholdError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace regover
