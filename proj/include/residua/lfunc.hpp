// Divisor sums r(n) = sum_{d|n} chi(d) for quadratic chi, the exact
// three-term hyperbola decomposition of sum_{n<=x} r(n), direct L(1,chi)
// estimation with a computable Abel-summation tail bound, and the
// prime-residue reciprocal-sum comparison.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "residua/arithmetic.hpp"
#include "residua/characters.hpp"

namespace residua {

namespace detail {

inline void require_quadratic(const DirichletCharacter& chi, const char* who) {
  if (chi.order() > 2) throw std::invalid_argument(std::string(who) + ": character order must divide 2");
}

}  // namespace detail

// chi(r) for r in [0, m) as -1/0/1; valid for characters of order dividing 2.
inline std::vector<signed char> quadratic_value_table(const DirichletCharacter& chi) {
  detail::require_quadratic(chi, "quadratic_value_table");
  u64 m = chi.modulus();
  std::vector<signed char> t(m, 0);
  for (u64 r = 0; r < m; ++r) {
    CharacterValue v = chi.evaluate_residue(r);
    t[r] = v.is_zero() ? 0 : (v.is_one() ? 1 : -1);
  }
  return t;
}

// sum_{d|n} chi(d) by divisor enumeration; nonnegative for quadratic chi.
inline i64 r_chi(const DirichletCharacter& chi, u64 n) {
  if (n == 0) throw std::invalid_argument("r_chi: n must be positive");
  detail::require_quadratic(chi, "r_chi");
  u64 m = chi.modulus();
  i64 sum = 0;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    sum += static_cast<i64>(chi.evaluate_residue(d % m).is_zero()
                                ? 0
                                : (chi.evaluate_residue(d % m).is_one() ? 1 : -1));
    u64 e = n / d;
    if (e != d) {
      CharacterValue v = chi.evaluate_residue(e % m);
      sum += v.is_zero() ? 0 : (v.is_one() ? 1 : -1);
    }
  }
  return sum;
}

// Same value through the factor-by-factor product
//   r(n) = prod_{l^e || n} (1 + chi(l) + ... + chi(l^e)).
inline i64 r_chi_euler(const DirichletCharacter& chi, u64 n) {
  if (n == 0) throw std::invalid_argument("r_chi_euler: n must be positive");
  detail::require_quadratic(chi, "r_chi_euler");
  u64 m = chi.modulus();
  i64 prod = 1;
  for (auto [p, e] : factorize(n).factors) {
    CharacterValue v = chi.evaluate_residue(p % m);
    if (v.is_zero()) continue;  // factor contributes 1 + 0 + ... = 1
    if (v.is_one()) {
      prod *= static_cast<i64>(e) + 1;
    } else {
      if (e % 2 == 1) return 0;  // 1 - 1 + 1 - ... ends at 0
    }
  }
  return prod;
}

// Exact three-term split of sum_{n<=x} r(n) along de <= x, with d <= y = x^v
// and e <= z = x/y, cross-checked against the direct per-n divisor sum.
struct HyperbolaBreakdown {
  u64 x = 0;
  double upsilon = 0;
  double y = 0;
  double z = 0;
  i64 term1 = 0;  // sum_{d<=y} chi(d) floor(x/d)
  i64 term2 = 0;  // sum_{e<=z} S(x/e)
  i64 term3 = 0;  // S(y) floor(z)
  i64 total = 0;  // term1 + term2 - term3
  i64 direct_total = 0;
};

inline HyperbolaBreakdown sum_r_hyperbola(const DirichletCharacter& chi, u64 x,
                                          double upsilon) {
  detail::require_quadratic(chi, "sum_r_hyperbola");
  if (x < 2 || x > 10000000) throw std::invalid_argument("sum_r_hyperbola: need 2 <= x <= 1e7");
  if (!(upsilon > 0.0) || !(upsilon < 2.0))
    throw std::invalid_argument("sum_r_hyperbola: upsilon out of range");
  u64 m = chi.modulus();
  std::vector<signed char> tbl = quadratic_value_table(chi);
  // prefix sums over one period; S(T) = floor(T/m)*prefix[m] + prefix[T mod m]
  std::vector<i64> prefix(m + 1, 0);
  for (u64 r = 1; r <= m; ++r) prefix[r] = prefix[r - 1] + tbl[r % m];
  auto big_s = [&](u64 t) -> i64 {
    return static_cast<i64>(t / m) * prefix[m] + prefix[t % m];
  };

  HyperbolaBreakdown h;
  h.x = x;
  h.upsilon = upsilon;
  h.y = std::pow(static_cast<double>(x), upsilon);
  h.z = static_cast<double>(x) / h.y;
  u64 yf = std::min<u64>(static_cast<u64>(std::floor(h.y)), x);
  u64 zf = h.z < 1.0 ? 0 : static_cast<u64>(std::floor(h.z));
  for (u64 d = 1; d <= yf; ++d) h.term1 += static_cast<i64>(tbl[d % m]) * static_cast<i64>(x / d);
  for (u64 e = 1; e <= zf; ++e) h.term2 += big_s(x / e);
  h.term3 = big_s(yf) * static_cast<i64>(zf);
  h.total = h.term1 + h.term2 - h.term3;

  // direct route: accumulate each divisor's contribution per n, then sum
  std::vector<i64> r(x + 1, 0);
  for (u64 d = 1; d <= x; ++d) {
    i64 c = tbl[d % m];
    if (c == 0) continue;
    for (u64 n = d; n <= x; n += d) r[n] += c;
  }
  for (u64 n = 1; n <= x; ++n) h.direct_total += r[n];
  return h;
}

// Truncated series sum_{d<=T} chi(d)/d with a computable tail bound
//   |tail| <= 2 tau(m/f) sqrt(m) log(m) / T    (f = conductor of chi),
// from Abel summation against the Polya-Vinogradov bound.
struct LOneEstimate {
  double value = 0;
  double tail_bound = 0;
  u64 T = 0;
};

inline LOneEstimate l_one(const DirichletCharacter& chi, u64 T) {
  detail::require_quadratic(chi, "l_one");
  if (chi.is_principal()) throw std::invalid_argument("l_one: character must be nontrivial");
  u64 m = chi.modulus();
  if (T < m) throw std::invalid_argument("l_one: T must be at least the modulus");
  std::vector<signed char> tbl = quadratic_value_table(chi);
  double sum = 0, comp = 0;  // Kahan
  for (u64 d = 1; d <= T; ++d) {
    double term = static_cast<double>(tbl[d % m]) / static_cast<double>(d);
    double t = sum + (term - comp);
    comp = (t - sum) - (term - comp);
    sum = t;
  }
  u64 f = conductor(chi);
  u64 imprimitivity = 1;
  for (auto [p, e] : factorize(m / f).factors) imprimitivity *= (e + 1);
  LOneEstimate est;
  est.value = sum;
  est.T = T;
  est.tail_bound = 2.0 * static_cast<double>(imprimitivity) *
                   std::sqrt(static_cast<double>(m)) * std::log(static_cast<double>(m)) /
                   static_cast<double>(T);
  return est;
}

// lhs = sum over primes l <= m with chi(l) = 1 of 1/l;
// rhs = (1/2) log((phi(m)/m) L(1,chi) log m). Reported side by side; the
// comparison carries an unspecified absolute O(1), so no inequality is
// asserted.
struct WolkeComparison {
  double lhs = 0;
  double rhs = 0;
  double l1 = 0;
  double l1_tail = 0;
};

inline WolkeComparison wolke_compare(const DirichletCharacter& chi) {
  detail::require_quadratic(chi, "wolke_compare");
  if (chi.is_principal()) throw std::invalid_argument("wolke_compare: character must be nontrivial");
  u64 m = chi.modulus();
  if (m > 10000000) throw std::invalid_argument("wolke_compare: m capped at 1e7");
  std::vector<signed char> tbl = quadratic_value_table(chi);
  WolkeComparison w;
  for (u64 l : primes_upto(m)) {
    if (tbl[l % m] == 1) w.lhs += 1.0 / static_cast<double>(l);
  }
  LOneEstimate est = l_one(chi, std::max<u64>(m, 1000000));
  w.l1 = est.value;
  w.l1_tail = est.tail_bound;
  double md = static_cast<double>(m);
  w.rhs = 0.5 * std::log((static_cast<double>(euler_phi(m)) / md) * est.value * std::log(md));
  return w;
}

}  // namespace residua
