#pragma once

// Exact truncated power series over the integers and the eta-quotient
// generating function of k-regular overpartitions.

#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace regover {

using BigInt = mpz_class;

/// Power series c_0 + c_1 q + ... + c_N q^N with exact integer coefficients.
/// Every operation is exact up to the truncation order N.
class IntegerSeries {
 public:
  /// Zero series of the given order.
  explicit IntegerSeries(std::size_t order);
  /// Takes ownership of the coefficients; order = coeffs.size() - 1.
  explicit IntegerSeries(std::vector<BigInt> coeffs);

  static IntegerSeries unit(std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const BigInt> coeffs() const { return coeffs_; }

  const BigInt& operator[](std::size_t n) const { return coeffs_[n]; }
  BigInt& operator[](std::size_t n) { return coeffs_[n]; }

  /// Equal iff orders and all coefficients agree.
  friend bool operator==(const IntegerSeries& a, const IntegerSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Indices with non-zero coefficients, ascending.
  std::vector<std::size_t> support() const;

 private:
  std::vector<BigInt> coeffs_;
};

/// (q^m; q^m)_inf truncated at `order`, expanded with the pentagonal number
/// theorem: sum_j (-1)^j q^{m j(3j-1)/2} over all integers j.
IntegerSeries euler_series(unsigned m, std::size_t order);

/// Cauchy product truncated at the common order. Throws std::invalid_argument
/// on mismatched orders. Zero coefficients of either factor are skipped, so
/// multiplying by a sparse series costs O(N * nnz).
IntegerSeries series_mul(const IntegerSeries& a, const IntegerSeries& b);

/// 1/a by forward substitution. Requires a[0] == 1.
IntegerSeries series_invert(const IntegerSeries& a);

/// num / den by forward substitution, without forming 1/den.
/// Requires den[0] == 1 and equal orders.
IntegerSeries series_divide(const IntegerSeries& num, const IntegerSeries& den);

struct EtaFactor {
  unsigned m;  // q-step of (q^m; q^m)_inf
  int delta;   // exponent
  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// G(q) = prod_r (q^{m_r}; q^{m_r})_inf^{delta_r}.
class EtaQuotientSpec {
 public:
  /// Throws std::invalid_argument for an empty list or any m_r == 0.
  explicit EtaQuotientSpec(std::vector<EtaFactor> factors);

  std::span<const EtaFactor> factors() const { return factors_; }
  friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;

 private:
  std::vector<EtaFactor> factors_;
};

/// Eta-quotient data of sum p̄ₖ(n) q^n: m = (1, 2, k, 2k), delta = (-2, 1, 2, -1),
/// from (-q^a; q^a)_inf = (q^{2a}; q^{2a})_inf / (q^a; q^a)_inf.
EtaQuotientSpec build_spec(int k);

IntegerSeries eta_quotient_series(const EtaQuotientSpec& spec, std::size_t order);

/// Coefficients p̄ₖ(0..order).
IntegerSeries pk_series(int k, std::size_t order);

/// Read-mostly cache of one series per k. Lookups take a shared lock; growth
/// takes the unique lock and at least doubles the cached order, so sweeps
/// over consecutive n trigger O(log n) rebuilds.
class PkCache {
 public:
  /// Series for k with order >= min_order. The returned value is immutable.
  std::shared_ptr<const IntegerSeries> series(int k, std::size_t min_order);
  BigInt get(int k, std::size_t n);

  /// Process-wide instance used by pk().
  static PkCache& global();

 private:
  std::shared_mutex mutex_;
  std::map<int, std::shared_ptr<const IntegerSeries>> cache_;
};

/// Exact p̄ₖ(n), memoized in PkCache::global().
BigInt pk(int k, std::size_t n);

}  // namespace regover
