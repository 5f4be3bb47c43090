// Dickman's rho on a fixed grid, built by marching the delay integral
//   rho(u) = rho(w) - int_w^u rho(t-1)/t dt
// cell by cell with adaptive Simpson quadrature. Panels never straddle an
// integer u, where rho changes analytic piece. The table is immutable after
// construction; rho() and u_root() are pure.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "residua/arithmetic.hpp"

namespace residua {

class RhoTable {
 public:
  explicit RhoTable(unsigned steps_per_unit = 1024, double max_u = 50.0,
                    unsigned interp_degree = 6)
      : steps_(steps_per_unit), max_u_(max_u), degree_(interp_degree) {
    if (steps_ < degree_ + 2) throw std::invalid_argument("RhoTable: grid too coarse for degree");
    if (degree_ < 2 || degree_ > 12) throw std::invalid_argument("RhoTable: interpolation degree out of range");
    if (max_u_ < 2.0 || max_u_ > 400.0) throw std::invalid_argument("RhoTable: max_u out of range");
    build();
  }

  double step() const { return 1.0 / steps_; }
  double max_u() const { return max_u_; }
  unsigned degree() const { return degree_; }
  const std::vector<double>& values() const { return values_; }

  double rho(double u) const {
    if (u < 0.0) throw std::invalid_argument("rho: u must be nonnegative");
    if (u > max_u_) throw std::invalid_argument("rho: u beyond table range");
    return interp(u, values_.size() - 1);
  }

  double operator()(double u) const { return rho(u); }

  // Unique u > 1 with rho(u) = 1/k, by bisection on strict monotonicity.
  double u_root(double k, double tol) const {
    if (!(k > 1.0)) throw std::invalid_argument("u_root: k must exceed 1");
    check_tol(tol);
    double target = 1.0 / k;
    if (values_.back() > target)
      throw std::runtime_error("u_root: target outside table (increase max_u)");
    double lo = 1.0, hi = max_u_;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * max_u_; ++it) {
      double mid = 0.5 * (lo + hi);
      if (rho(mid) > target)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  static void check_tol(double tol) {
    if (!(tol >= 1e-12)) throw std::invalid_argument("tolerance below achievable precision (min 1e-12)");
  }

 private:
  void build() {
    std::size_t n = static_cast<std::size_t>(std::llround(max_u_ * steps_));
    values_.assign(n + 1, 1.0);  // rho = 1 on [0,1]
    double h = step();
    for (std::size_t i = steps_ + 1; i <= n; ++i) {
      double a = (i - 1) * h;
      double b = i * h;
      double cell = adaptive_simpson(a, b, i - 1);
      values_[i] = values_[i - 1] - cell;
    }
  }

  double integrand(double t, std::size_t built) const {
    return interp(t - 1.0, built) / t;
  }

  double adaptive_simpson(double a, double b, std::size_t built) const {
    double fa = integrand(a, built);
    double fb = integrand(b, built);
    double fm = integrand(0.5 * (a + b), built);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(a, b, fa, fm, fb, whole, built, 24);
  }

  double simpson_rec(double a, double b, double fa, double fm, double fb, double whole,
                     std::size_t built, int depth) const {
    double m = 0.5 * (a + b);
    double lm = integrand(0.5 * (a + m), built);
    double rm = integrand(0.5 * (m + b), built);
    double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * kCellTol)
      return left + right + delta / 15.0;
    return simpson_rec(a, m, fa, lm, fm, left, built, depth - 1) +
           simpson_rec(m, b, fm, rm, fb, right, built, depth - 1);
  }

  // Polynomial interpolation on a stencil confined to one unit interval
  // (rho is not smooth across integer u). Exact 1 on [0,1], exact at
  // integer nodes.
  double interp(double u, std::size_t built) const {
    if (u <= 1.0) return 1.0;
    auto j = static_cast<std::size_t>(u);
    if (static_cast<double>(j) == u) return values_[j * steps_];
    std::size_t lo_bound = j * steps_;
    std::size_t hi_bound = std::min<std::size_t>((j + 1) * static_cast<std::size_t>(steps_), built);
    double x = u * steps_;
    auto center = static_cast<std::size_t>(x);
    std::size_t lo = center > degree_ / 2 ? center - degree_ / 2 : 0;
    lo = std::max(lo, lo_bound);
    lo = std::min(lo, hi_bound - degree_);
    // Neville's scheme on nodes lo .. lo+degree
    double p[16];
    for (unsigned t = 0; t <= degree_; ++t) p[t] = values_[lo + t];
    for (unsigned level = 1; level <= degree_; ++level) {
      for (unsigned t = 0; t + level <= degree_; ++t) {
        double xi = static_cast<double>(lo + t);
        double xj = static_cast<double>(lo + t + level);
        p[t] = ((x - xi) * p[t + 1] + (xj - x) * p[t]) / (xj - xi);
      }
    }
    return p[0];
  }

  static constexpr double kCellTol = 1e-18;

  unsigned steps_;
  double max_u_;
  unsigned degree_;
  std::vector<double> values_;
};

inline const RhoTable& default_rho_table() {
  static const RhoTable table;
  return table;
}

// |result - rho(u)| <= tol for 0 <= u <= 50, tol >= 1e-12.
inline double rho(double u, double tol = 1e-12) {
  RhoTable::check_tol(tol);
  return default_rho_table().rho(u);
}

// Unique u_k > 1 with rho(u_k) = 1/k, for real k > 1.
inline double u_k(double k, double tol = 1e-12) {
  return default_rho_table().u_root(k, tol);
}

}  // namespace residua
