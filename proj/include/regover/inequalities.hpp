#pragma once

// Exact checks of log-subadditivity, log-concavity and the third-order
// Turán inequality for p̄ₖ(n); interval checks of the Qₖ(n) bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "regover/interval.hpp"
#include "regover/qseries.hpp"

namespace regover {

/// p̄ₖ(a)·p̄ₖ(b) > p̄ₖ(a+b). Requires k >= 2, a >= b >= 1, a + b >= k.
bool check_subadditivity(int k, std::uint64_t a, std::uint64_t b);

struct QRatio {
  int k;
  std::uint64_t n;
  Rational value;  // p̄ₖ(n-1)p̄ₖ(n+1)/p̄ₖ(n)²
};

QRatio q_ratio(int k, std::uint64_t n);

/// p̄ₖ(n)² - p̄ₖ(n-1)p̄ₖ(n+1).
mpz_class logconcavity_gap(int k, std::uint64_t n);

/// gap >= 0 (weak) or gap > 0 (strict). Requires n >= 1.
bool check_logconcave(int k, std::uint64_t n, bool strict = false);

/// 4(a_n² - a_{n-1}a_{n+1})(a_{n+1}² - a_n a_{n+2}) - (a_n a_{n+1} - a_{n-1}a_{n+2})² with a = p̄ₖ.
mpz_class turan3_discriminant(int k, std::uint64_t n);

/// discriminant > 0. Requires n >= 1.
bool check_turan3(int k, std::uint64_t n);

/// Validity thresholds of the Q-ratio bounds: ñₖ = 5652, 365, 455, 1120, 2055, 1230, 10422, 8187.
std::uint64_t qbounds_threshold(int k);

struct QBounds {
  Interval lower;  // L̃ₖ(n)
  Interval upper;  // R̃ₖ(n)
};

/// L̃ₖ(n) and R̃ₖ(n), polynomials in 1/μₖ(n). Throws ThresholdError for n < ñₖ.
QBounds q_bounds(int k, std::uint64_t n, long precision = kDefaultPrecision);

/// L̃ₖ(n) < Qₖ(n) < R̃ₖ(n), decided with precision escalation.
bool check_qbounds(int k, std::uint64_t n);

/// 15/16 <= u < v < 1 and u + √((1-u)³) > v, decided exactly as (v-u)² < (1-u)³.
bool jia_criterion(const Rational& u, const Rational& v);

/// 4(1-u)(1-v) - (1-uv)².
Rational jia_conclusion(const Rational& u, const Rational& v);

enum class Property { subadd, logconcave, turan3, qbounds };

Property parse_property(const std::string& s);
std::string to_string(Property p);

/// Threshold claimed for (k, property): a + b >= k for subadd, n̄ₖ, n̂ₖ, ñₖ.
std::uint64_t paper_threshold(int k, Property p);

/// Horizon used when none is given: 200 for subadd, 2000 for logconcave and
/// turan3, max(2000, ñₖ + 500) for qbounds.
std::uint64_t default_horizon(int k, Property p);

struct ThresholdReport {
  int k = 0;
  Property property = Property::logconcave;
  std::uint64_t paper_threshold = 0;
  std::uint64_t observed_min_threshold = 0;  // smallest n0 with the property on [n0, horizon]
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> exceptions_below;  // failing n (for subadd: failing a + b)
  std::vector<std::uint64_t> equality_cases;    // logconcave: n with gap = 0
  std::vector<std::string> counterexamples;     // failures at or above the claimed threshold
  std::uint64_t first_n = 0;                    // verdicts[i] is the verdict at first_n + i
  std::vector<bool> verdicts;
  bool passed() const { return counterexamples.empty(); }
};

/// Scans 1..horizon (subadd: all a >= b >= 1 with a + b <= horizon; qbounds:
/// ñₖ..horizon) using up to `jobs` threads. Throws std::invalid_argument
/// when horizon < claimed threshold (ThresholdError for qbounds).
ThresholdReport scan_thresholds(int k, Property p, std::uint64_t horizon, unsigned jobs = 1);

nlohmann::json to_json(const ThresholdReport& r);
/// Per-n verdict rows "k,n,property,verdict" (for subadd, n is a + b).
std::string csv_header_verdicts();
std::string to_csv_verdicts(const ThresholdReport& r);

}  // namespace regover
