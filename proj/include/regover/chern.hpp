#pragma once

// Asymptotics of eta-quotient coefficients in the Δ₁ = 0 case: invariants,
// the exponential sums Â, and certified brackets for p̄ₖ(n), k = 2..9.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "regover/interval.hpp"
#include "regover/qseries.hpp"

namespace regover {

struct ChernInvariants {
  Rational delta1;
  mpz_class delta2;
  unsigned L = 1;
  std::map<unsigned, Rational> delta3;          // l = 1..L
  std::map<unsigned, Rational> delta4_squared;  // Δ₄(l)², exact
  std::vector<unsigned> l_pos;                  // {l : Δ₃(l) > 0}

  /// Δ₄(l) = √(Δ₄(l)²) as an interval.
  Interval delta4(unsigned l, long precision = kDefaultPrecision) const;
};

ChernInvariants invariants(const EtaQuotientSpec& spec);

struct Admissibility {
  bool admissible = true;
  std::optional<unsigned> witness;  // first l where min_r gcd²(m_r,l)/m_r < Δ₃(l)/24
};

Admissibility check_admissibility(const EtaQuotientSpec& spec);

struct ComplexInterval {
  Interval re;
  Interval im;
};

/// Â_kk(n) = Σ_{0<=h<kk, gcd(h,kk)=1} exp(-2πinh/kk - πi Σ_r δ_r s(m_r h/g_r, kk/g_r)),
/// g_r = gcd(m_r, kk). Phases are reduced modulo 1 exactly before evaluation.
ComplexInterval a_hat_complex(unsigned kk, std::uint64_t n, const EtaQuotientSpec& spec,
                              long precision = kDefaultPrecision);

/// Real part of Â_kk(n). Throws std::logic_error if the imaginary enclosure excludes 0.
Interval a_hat(unsigned kk, std::uint64_t n, const EtaQuotientSpec& spec, long precision = kDefaultPrecision);

/// Truncated main sum Σ_{l∈L₊} 2πΔ₄(l)·√(Δ₃(l)/(24n+Δ₂)) Σ_{1<=kk<N, kk≡l (mod L)} I₁(π/(6kk)·√(Δ₃(l)(24n+Δ₂)))·Â_kk(n)/kk,
/// without the error term. Requires Δ₁ = 0 and an admissible spec.
Interval chern_sum(const EtaQuotientSpec& spec, std::uint64_t n, unsigned N, long precision = kDefaultPrecision);

/// Raised when n lies below the validity threshold of a bound.
class ThresholdError : public std::domain_error {
 public:
  ThresholdError(const std::string& what, unsigned threshold) : std::domain_error(what), threshold_(threshold) {}
  unsigned threshold() const { return threshold_; }

 private:
  unsigned threshold_;
};

/// Raised for specs outside the Δ₁ = 0 branch.
class UnsupportedSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which coefficient multiplies I₁(μₖ) in the main term.
enum class CoefficientSource {
  chern_derived,  // 2πΔ₄(1)√(Δ₃(1)/(24n+Δ₂)) from the invariants of build_spec(k)
  printed_table,  // the closed forms listed per k (larger by 2, 2, 4, 4, 4, 6, 8, 6 for k = 2..9)
};

CoefficientSource parse_coefficient_source(const std::string& s);
std::string to_string(CoefficientSource s);

/// μ-thresholds for the remainder bracket and for the relative bracket.
unsigned remainder_threshold(int k);  // 22, 49, 41, 58, 130, 102, 129, 268
unsigned relative_threshold(int k);   // 43, 49, 43, 58, 130, 102, 129, 268

/// True iff μₖ(n) >= t (decided with precision escalation).
bool mu_at_least(int k, std::uint64_t n, unsigned t);

/// Cₖ(n). Throws std::out_of_range for k outside 2..9, std::invalid_argument for n = 0.
Interval main_coefficient(int k, std::uint64_t n, CoefficientSource src = CoefficientSource::chern_derived,
                          long precision = kDefaultPrecision);

/// Mₖ(n) = Cₖ(n)·I₁(μₖ(n)).
Interval main_term(int k, std::uint64_t n, CoefficientSource src = CoefficientSource::chern_derived,
                   long precision = kDefaultPrecision);

/// R′ₖ(n) = aₖ π^{3/2} μₖ^{-1/2} exp(μₖ/rₖ). Throws ThresholdError when μₖ(n) < remainder_threshold(k).
Interval remainder_bound(int k, std::uint64_t n, long precision = kDefaultPrecision);

struct Bracket {
  Interval lower;
  Interval upper;
};

/// [Mₖ - R′ₖ, Mₖ + R′ₖ].
Bracket remainder_bracket(int k, std::uint64_t n, CoefficientSource src = CoefficientSource::chern_derived,
                          long precision = kDefaultPrecision);

/// [Mₖ(1 - μₖ⁻⁶), Mₖ(1 + μₖ⁻⁶)]. Throws ThresholdError when μₖ(n) < relative_threshold(k).
Bracket pk_bounds(int k, std::uint64_t n, CoefficientSource src = CoefficientSource::chern_derived,
                  long precision = kDefaultPrecision);

/// Whether an exact value lies in a bracket; nullopt when the enclosures
/// are too wide to decide.
std::optional<bool> bracket_contains(const Bracket& b, const mpz_class& value);

struct AsymptoticEstimate {
  int k = 0;
  std::uint64_t n = 0;
  Interval mu;
  Interval main;
  std::optional<Interval> remainder;  // R′ₖ(n), absent below threshold
  std::optional<Bracket> remainder_bracket;
  std::optional<Bracket> relative_bracket;
  mpz_class exact;
  std::optional<bool> inside_remainder;  // exact ∈ remainder bracket
  std::optional<bool> inside_relative;   // exact ∈ relative bracket
};

/// Evaluates both brackets where valid and compares with the exact count,
/// escalating precision until each comparison is decided.
AsymptoticEstimate estimate(int k, std::uint64_t n, CoefficientSource src = CoefficientSource::chern_derived,
                            long precision = kDefaultPrecision);

std::string csv_header_asymptotic();
std::string to_csv(const AsymptoticEstimate& e);
nlohmann::json to_json(const AsymptoticEstimate& e);

}  // namespace regover
