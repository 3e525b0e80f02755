#include "regover/qseries.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

namespace regover {

IntegerSeries::IntegerSeries(std::size_t order) : coeffs_(order + 1) {}

IntegerSeries::IntegerSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("IntegerSeries needs at least one coefficient");
}

IntegerSeries IntegerSeries::unit(std::size_t order) {
  IntegerSeries s(order);
  s.coeffs_[0] = 1;
  return s;
}

std::vector<std::size_t> IntegerSeries::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) idx.push_back(i);
  return idx;
}

IntegerSeries euler_series(unsigned m, std::size_t order) {
  if (m == 0) throw std::invalid_argument("euler_series: m must be >= 1");
  IntegerSeries s(order);
  s[0] = 1;
  // Generalized pentagonal exponents j(3j-1)/2 and j(3j+1)/2, sign (-1)^j.
  for (std::size_t j = 1;; ++j) {
    const std::size_t p1 = m * (j * (3 * j - 1) / 2);
    if (p1 > order) break;
    const int sign = (j % 2 == 1) ? -1 : 1;
    s[p1] += sign;
    const std::size_t p2 = m * (j * (3 * j + 1) / 2);
    if (p2 <= order) s[p2] += sign;
  }
  return s;
}

namespace {

void require_same_order(const IntegerSeries& a, const IntegerSeries& b, const char* op) {
  if (a.order() != b.order())
    throw std::invalid_argument(std::string(op) + ": order mismatch (" +
                                std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
}

}  // namespace

IntegerSeries series_mul(const IntegerSeries& a, const IntegerSeries& b) {
  require_same_order(a, b, "series_mul");
  const std::size_t order = a.order();
  // Iterate over the sparser factor's support.
  const auto sa = a.support();
  const auto sb = b.support();
  const IntegerSeries& sparse = sa.size() <= sb.size() ? a : b;
  const IntegerSeries& dense = sa.size() <= sb.size() ? b : a;
  const auto& support = sa.size() <= sb.size() ? sa : sb;

  IntegerSeries out(order);
  for (std::size_t i : support) {
    const BigInt& c = sparse[i];
    if (c == 1) {
      for (std::size_t n = i; n <= order; ++n) out[n] += dense[n - i];
    } else if (c == -1) {
      for (std::size_t n = i; n <= order; ++n) out[n] -= dense[n - i];
    } else {
      for (std::size_t n = i; n <= order; ++n) mpz_addmul(out[n].get_mpz_t(), c.get_mpz_t(), dense[n - i].get_mpz_t());
    }
  }
  return out;
}

IntegerSeries series_divide(const IntegerSeries& num, const IntegerSeries& den) {
  require_same_order(num, den, "series_divide");
  if (den[0] != 1) throw std::invalid_argument("series_divide: constant term of divisor must be 1");
  const std::size_t order = num.order();
  std::vector<std::size_t> support = den.support();
  support.erase(support.begin());  // drop index 0

  // This loop is the hot path of exact counting: each output coefficient
  // costs one add/sub per non-zero divisor coefficient below it.
  IntegerSeries out(order);
  for (std::size_t n = 0; n <= order; ++n) {
    BigInt acc = num[n];
    for (std::size_t i : support) {
      if (i > n) break;
      const BigInt& c = den[i];
      if (c == 1)
        acc -= out[n - i];
      else if (c == -1)
        acc += out[n - i];
      else
        mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), out[n - i].get_mpz_t());
    }
    out[n] = std::move(acc);
  }
  return out;
}

IntegerSeries series_invert(const IntegerSeries& a) {
  if (a[0] != 1) throw std::invalid_argument("series_invert: constant term must be 1");
  return series_divide(IntegerSeries::unit(a.order()), a);
}

EtaQuotientSpec::EtaQuotientSpec(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("EtaQuotientSpec: no factors");
  for (const auto& f : factors_)
    if (f.m == 0) throw std::invalid_argument("EtaQuotientSpec: m must be >= 1");
}

EtaQuotientSpec build_spec(int k) {
  if (k < 2) throw std::invalid_argument("build_spec: k must be >= 2, got " + std::to_string(k));
  const auto uk = static_cast<unsigned>(k);
  return EtaQuotientSpec({{1, -2}, {2, 1}, {uk, 2}, {2 * uk, -1}});
}

IntegerSeries eta_quotient_series(const EtaQuotientSpec& spec, std::size_t order) {
  IntegerSeries acc = IntegerSeries::unit(order);
  for (const auto& f : spec.factors()) {
    const IntegerSeries e = euler_series(f.m, order);
    for (int i = 0; i < f.delta; ++i) acc = series_mul(acc, e);
    for (int i = 0; i < -f.delta; ++i) acc = series_divide(acc, e);
  }
  return acc;
}

IntegerSeries pk_series(int k, std::size_t order) {
  return eta_quotient_series(build_spec(k), order);
}

std::shared_ptr<const IntegerSeries> PkCache::series(int k, std::size_t min_order) {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(k);
    if (it != cache_.end() && it->second->order() >= min_order) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto& slot = cache_[k];
  if (slot && slot->order() >= min_order) return slot;
  std::size_t target = min_order;
  if (slot) target = std::max(target, 2 * slot->order());
  slot = std::make_shared<const IntegerSeries>(pk_series(k, target));
  return slot;
}

BigInt PkCache::get(int k, std::size_t n) { return (*series(k, n))[n]; }

PkCache& PkCache::global() {
  static PkCache cache;
  return cache;
}

BigInt pk(int k, std::size_t n) {
  if (k < 2) throw std::invalid_argument("pk: k must be >= 2, got " + std::to_string(k));
  return PkCache::global().get(k, n);
}

}  // namespace regover
