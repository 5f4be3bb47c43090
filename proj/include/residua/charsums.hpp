// Partial character sums (exact in Z[zeta_k] plus a float rendering), the
// Burgess bound shape with its R_k(m) prefactor, and the Polya-Vinogradov
// sanity bound for primitive characters. No implied constants are modeled;
// bound comparisons are ratio reports.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "residua/arithmetic.hpp"
#include "residua/characters.hpp"
#include "residua/cyclotomic.hpp"

namespace residua {

struct BurgessFactors {
  u64 m = 1;
  u64 k = 1;
  u64 M = 1;  // prod p^e over p^e || m with e >= 3
  u64 Q = 1;  // prod p^e over p^e || k with e >= 2
  double R = 1.0;  // min(M^{3/4}, Q^{9/8}); 1 whenever k is squarefree
};

inline BurgessFactors burgess_factors(u64 m, u64 k) {
  if (m < 1 || k < 1) throw std::invalid_argument("burgess_factors: m, k must be positive");
  BurgessFactors b;
  b.m = m;
  b.k = k;
  for (auto [p, e] : factorize(m).factors) {
    if (e >= 3) {
      for (u32 i = 0; i < e; ++i) b.M = checked_mul(b.M, p);
    }
  }
  for (auto [p, e] : factorize(k).factors) {
    if (e >= 2) {
      for (u32 i = 0; i < e; ++i) b.Q = checked_mul(b.Q, p);
    }
  }
  b.R = std::min(std::pow(static_cast<double>(b.M), 0.75),
                 std::pow(static_cast<double>(b.Q), 1.125));
  return b;
}

// R_k(m)^{1/r} x^{1-1/r} m^{(r+1)/(4r^2)+eps}, with the R factor omitted for
// r <= 3. Bare shape only: callers apply no implied constant.
inline double burgess_bound_shape(u64 m, u64 k, unsigned r, double eps, double x) {
  if (r < 1) throw std::invalid_argument("burgess_bound_shape: r must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("burgess_bound_shape: eps must be positive");
  if (!(x > 0.0)) throw std::invalid_argument("burgess_bound_shape: x must be positive");
  double rr = static_cast<double>(r);
  double shape = std::pow(x, 1.0 - 1.0 / rr) *
                 std::pow(static_cast<double>(m), (rr + 1.0) / (4.0 * rr * rr) + eps);
  if (r > 3) shape *= std::pow(burgess_factors(m, k).R, 1.0 / rr);
  return shape;
}

// Sum_{n <= x} chi(n), accumulated exactly over the k-th roots of unity.
struct PartialCharSum {
  CyclotomicSum exact;
  std::complex<double> value;  // rendering of `exact`, within 1e-9 of it
  double abs() const { return std::abs(value); }
};

inline PartialCharSum partial_sum(const DirichletCharacter& chi, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("partial_sum: x must be nonnegative");
  auto xf = static_cast<u64>(std::floor(x));
  u64 m = chi.modulus();
  CyclotomicSum sum(chi.order());
  if (m >= 1 && xf >= 1) {
    // full periods contribute identical value multisets
    u64 periods = m > 0 ? xf / m : 0;
    u64 rest = xf % m;
    if (m == 1) {
      sum.add_root(0, 1, static_cast<i64>(xf));
    } else {
      for (u64 r = 0; r < m; ++r) {
        CharacterValue v = chi.evaluate_residue(r);
        if (v.is_zero()) continue;
        i64 w = static_cast<i64>(periods) + (r >= 1 && r <= rest ? 1 : 0);
        if (w != 0) sum.add_root(v.num, v.den, w);
      }
    }
  }
  return {sum, sum.to_complex()};
}

struct PolyaVinogradovReport {
  u64 m = 0;
  std::string chi_label;
  double bound = 0;     // sqrt(m) * log m
  double max_abs = 0;
  double max_ratio = 0;
  u64 argmax_x = 0;
  std::vector<u64> violations;  // x with |S(x)| > bound; empty for a correct build
  bool ok = true;
};

// Checks |sum_{n<=x} chi(n)| <= sqrt(m) log m on the given grid (all x <= m
// when the grid is empty). A violation indicates an implementation bug.
inline PolyaVinogradovReport polya_vinogradov_check(const DirichletCharacter& chi,
                                                    std::vector<u64> grid = {}) {
  u64 m = chi.modulus();
  if (m < 3) throw std::invalid_argument("polya_vinogradov_check: modulus must be >= 3");
  if (!is_primitive(chi))
    throw std::invalid_argument("polya_vinogradov_check: character must be primitive");
  if (grid.empty()) {
    grid.resize(m);
    for (u64 i = 0; i < m; ++i) grid[i] = i + 1;
  }
  std::sort(grid.begin(), grid.end());
  PolyaVinogradovReport rep;
  rep.m = m;
  rep.chi_label = chi.label();
  rep.bound = std::sqrt(static_cast<double>(m)) * std::log(static_cast<double>(m));
  std::complex<double> s = 0;
  u64 n = 0;
  for (u64 x : grid) {
    if (x > m) throw std::invalid_argument("polya_vinogradov_check: grid x beyond m");
    for (; n < x; ) {
      ++n;
      s += chi(static_cast<i64>(n)).to_complex();
    }
    double a = std::abs(s);
    if (a > rep.max_abs) {
      rep.max_abs = a;
      rep.argmax_x = x;
    }
    if (a > rep.bound) rep.violations.push_back(x);
  }
  rep.max_ratio = rep.bound > 0 ? rep.max_abs / rep.bound : 0;
  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace residua
