// Exact smooth-number counts Psi(x,y) and the coprime-restricted variant
// Psi_q(x,y), by linear scan of a largest-prime-factor table, plus the
// comparison report against the x*rho(u) and (phi(q)/q)*Psi main terms.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "residua/arithmetic.hpp"
#include "residua/dickman.hpp"

namespace residua {

// Largest y-smooth divisor of q (y floored).
inline u64 smooth_part(u64 q, double y) {
  if (q == 0) throw std::invalid_argument("smooth_part: q must be positive");
  u64 yf = static_cast<u64>(std::floor(y));
  u64 out = 1;
  for (auto [p, e] : factorize(q).factors) {
    if (p > yf) continue;
    for (u32 i = 0; i < e; ++i) out = checked_mul(out, p);
  }
  return out;
}

struct SmoothCountReport {
  double x = 0;
  double y = 0;
  u64 q = 1;
  u64 q_smooth_part = 1;
  u64 exact_count = 0;
  double u = 0;                     // log x / log y
  double rho_prediction = 0;        // x * rho(u)
  double tenenbaum_prediction = 0;  // (phi(q')/q') * Psi(x,y)
  double rel_err_rho = 0;           // prediction/exact - 1
  double rel_err_tenenbaum = 0;
  bool hypothesis_ok = false;       // omega(q') <= y^{1/log(1+u)}
};

class SmoothCounter {
 public:
  explicit SmoothCounter(u64 limit, u64 cap = kDefaultSieveCap)
      : limit_(limit), lpf_(lpf_sieve(limit, cap)) {}

  u64 limit() const { return limit_; }
  const std::vector<u32>& lpf() const { return lpf_; }

  // #{n <= x : P+(n) <= y}; counts depend only on floor(x), floor(y)
  u64 psi(double x, double y) const {
    auto [xf, yf] = check_args(x, y);
    u64 count = 0;
    for (u64 n = 1; n <= xf; ++n)
      if (lpf_[n] <= yf) ++count;
    return count;
  }

  // #{n <= x : gcd(n,q) = 1, P+(n) <= y}
  u64 psi_q(double x, double y, u64 q) const {
    if (q == 0) throw std::invalid_argument("psi_q: q must be positive");
    auto [xf, yf] = check_args(x, y);
    u64 count = 0;
    for (u64 n = 1; n <= xf; ++n)
      if (lpf_[n] <= yf && std::gcd(n, q) == 1) ++count;
    return count;
  }

  SmoothCountReport tenenbaum_compare(double x, double y, u64 q) const {
    SmoothCountReport r;
    r.x = x;
    r.y = y;
    r.q = q;
    r.q_smooth_part = smooth_part(q, y);
    r.exact_count = psi_q(x, y, r.q_smooth_part);
    r.u = std::log(x) / std::log(y);
    r.rho_prediction = x * rho(r.u);
    u64 qs = r.q_smooth_part;
    double coprime_factor = static_cast<double>(euler_phi(qs)) / static_cast<double>(qs);
    r.tenenbaum_prediction = coprime_factor * static_cast<double>(psi(x, y));
    if (r.exact_count > 0) {
      r.rel_err_rho = r.rho_prediction / static_cast<double>(r.exact_count) - 1.0;
      r.rel_err_tenenbaum = r.tenenbaum_prediction / static_cast<double>(r.exact_count) - 1.0;
    }
    r.hypothesis_ok =
        static_cast<double>(omega(qs)) <= std::pow(y, 1.0 / std::log(1.0 + r.u));
    return r;
  }

 private:
  std::pair<u64, u64> check_args(double x, double y) const {
    if (!(x >= 1.0)) throw std::invalid_argument("psi: x must be >= 1");
    if (!(y >= 2.0)) throw std::invalid_argument("psi: y must be >= 2");
    auto xf = static_cast<u64>(std::floor(x));
    if (xf > limit_)
      throw resource_limit_error("psi: x exceeds sieve limit " + std::to_string(limit_));
    return {xf, static_cast<u64>(std::floor(y))};
  }

  u64 limit_;
  std::vector<u32> lpf_;
};

// One-shot segmented counts: O(block) memory, same values as the table scan.
inline u64 psi_segmented(double x, double y) {
  if (!(x >= 1.0)) throw std::invalid_argument("psi_segmented: x must be >= 1");
  if (!(y >= 2.0)) throw std::invalid_argument("psi_segmented: y must be >= 2");
  auto xf = static_cast<u64>(std::floor(x));
  auto yf = static_cast<u64>(std::floor(y));
  u64 count = 0;
  for_each_lpf(xf, [&](u64, u64 lpf) {
    if (lpf <= yf) ++count;
  });
  return count;
}

inline u64 psi_q_segmented(double x, double y, u64 q) {
  if (q == 0) throw std::invalid_argument("psi_q_segmented: q must be positive");
  if (!(x >= 1.0)) throw std::invalid_argument("psi_q_segmented: x must be >= 1");
  if (!(y >= 2.0)) throw std::invalid_argument("psi_q_segmented: y must be >= 2");
  auto xf = static_cast<u64>(std::floor(x));
  auto yf = static_cast<u64>(std::floor(y));
  u64 count = 0;
  for_each_lpf(xf, [&](u64 n, u64 lpf) {
    if (lpf <= yf && std::gcd(n, q) == 1) ++count;
  });
  return count;
}

}  // namespace residua
