// Exact arithmetic in Z[zeta_k]: integer coefficient vectors over the k-th
// roots of unity with canonical reduction mod the k-th cyclotomic polynomial,
// so that full-period character sums test equal to zero exactly.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "residua/arithmetic.hpp"

namespace residua {

namespace detail {

inline i64 checked_add_i64(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("i64 add overflow");
  return r;
}

inline i64 checked_mul_i64(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("i64 mul overflow");
  return r;
}

// multiply poly by (x^a - 1)
inline void poly_mul_binomial(std::vector<i64>& p, u64 a) {
  std::vector<i64> q(p.size() + a, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    q[i + a] = checked_add_i64(q[i + a], p[i]);
    q[i] = checked_add_i64(q[i], -p[i]);
  }
  p.swap(q);
}

// divide poly exactly by (x^a - 1); caller guarantees divisibility
inline void poly_div_binomial(std::vector<i64>& p, u64 a) {
  std::vector<i64> q(p.size() - a, 0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    i64 above = i >= a ? q[i - a] : 0;
    q[i] = checked_add_i64(above, -p[i]);
  }
  p.swap(q);
}

}  // namespace detail

// Coefficients of the k-th cyclotomic polynomial, low degree first.
inline std::vector<i64> cyclotomic_poly(u64 k) {
  if (k == 0) throw std::invalid_argument("cyclotomic_poly: k must be positive");
  Factorization f = factorize(k);
  std::vector<u64> primes;
  for (auto [p, e] : f.factors) primes.push_back(p);
  // Phi_k(x) = prod over squarefree d | k of (x^{k/d} - 1)^{mu(d)}
  std::vector<i64> poly{1};
  std::size_t np = primes.size();
  for (int sign = 0; sign < 2; ++sign) {
    for (u64 mask = 0; mask < (u64(1) << np); ++mask) {
      u64 d = 1;
      for (std::size_t i = 0; i < np; ++i)
        if (mask & (u64(1) << i)) d *= primes[i];
      bool mu_positive = (__builtin_popcountll(mask) % 2) == 0;
      if (sign == 0 && mu_positive) detail::poly_mul_binomial(poly, k / d);
      if (sign == 1 && !mu_positive) detail::poly_div_binomial(poly, k / d);
    }
  }
  return poly;
}

// Reduction tables for one order k: x^j mod Phi_k for every j in [0, k).
class CyclotomicContext {
 public:
  explicit CyclotomicContext(u64 k) : k_(k), phi_(cyclotomic_poly(k)) {
    deg_ = phi_.size() - 1;
    pow_.resize(k_);
    for (u64 j = 0; j < k_; ++j) {
      if (j < deg_) {
        pow_[j].assign(deg_, 0);
        pow_[j][j] = 1;
      } else {
        std::vector<i64> cur(deg_ + 1, 0);
        for (std::size_t t = 0; t < deg_; ++t) cur[t + 1] = pow_[j - 1][t];
        i64 lead = cur[deg_];
        if (lead != 0) {
          for (std::size_t t = 0; t <= deg_; ++t)
            cur[t] = detail::checked_add_i64(cur[t], -detail::checked_mul_i64(lead, phi_[t]));
        }
        cur.resize(deg_);
        pow_[j] = std::move(cur);
      }
    }
  }

  u64 order() const { return k_; }
  std::size_t degree() const { return deg_; }
  const std::vector<i64>& power(u64 j) const { return pow_[j]; }

 private:
  u64 k_;
  std::vector<i64> phi_;
  std::size_t deg_;
  std::vector<std::vector<i64>> pow_;
};

// Accumulator for integer combinations of k-th roots of unity. Additions are
// O(1) on the raw basis; equality tests reduce to the canonical basis.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(u64 k) : ctx_(std::make_shared<CyclotomicContext>(k)), counts_(k, 0) {}
  explicit CyclotomicSum(std::shared_ptr<const CyclotomicContext> ctx)
      : ctx_(std::move(ctx)), counts_(ctx_->order(), 0) {}

  u64 order() const { return ctx_->order(); }

  // add weight * e(num/den); den must divide the order
  void add_root(u64 num, u64 den, i64 weight = 1) {
    u64 k = ctx_->order();
    if (den == 0 || k % den != 0) throw std::invalid_argument("CyclotomicSum: denominator does not divide order");
    u64 j = (num % den) * (k / den);
    counts_[j] = detail::checked_add_i64(counts_[j], weight);
  }

  void add_integer(i64 w) { counts_[0] = detail::checked_add_i64(counts_[0], w); }

  const std::vector<i64>& raw() const { return counts_; }

  std::vector<i128> canonical() const {
    std::vector<i128> acc(ctx_->degree(), 0);
    for (u64 j = 0; j < counts_.size(); ++j) {
      if (counts_[j] == 0) continue;
      const std::vector<i64>& pj = ctx_->power(j);
      for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += i128(counts_[j]) * pj[t];
    }
    return acc;
  }

  bool is_zero() const {
    for (i128 c : canonical())
      if (c != 0) return false;
    return true;
  }

  bool equals_integer(i64 n) const {
    std::vector<i128> c = canonical();
    if (c.empty()) return n == 0;  // k = 1 handled by degree >= 1 always; defensive
    if (c[0] != i128(n)) return false;
    for (std::size_t t = 1; t < c.size(); ++t)
      if (c[t] != 0) return false;
    return true;
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    double k = static_cast<double>(ctx_->order());
    for (u64 j = 0; j < counts_.size(); ++j) {
      if (counts_[j] == 0) continue;
      double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / k;
      z += static_cast<double>(counts_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
  }

 private:
  std::shared_ptr<const CyclotomicContext> ctx_;
  std::vector<i64> counts_;
};

}  // namespace residua
