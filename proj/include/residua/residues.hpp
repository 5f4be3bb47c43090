// Nonresidue and residue measurements: least nonresidues, prime
// nonresidue/residue lists against theorem-shaped thresholds, the product-of-
// nonresidues bookkeeping, the exact k-fold identity check, and prime
// avoidance of an arbitrary proper subgroup of (Z/mZ)^*.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "residua/arithmetic.hpp"
#include "residua/characters.hpp"
#include "residua/charsums.hpp"
#include "residua/cyclotomic.hpp"
#include "residua/dickman.hpp"

namespace residua {

// Smallest n >= 2 with chi(n) not in {0,1}. Always prime, which is asserted.
inline u64 least_nonresidue(const DirichletCharacter& chi) {
  if (chi.is_principal())
    throw std::invalid_argument("least_nonresidue: principal character");
  u64 m = chi.modulus();
  for (u64 n = 2; n <= m; ++n) {
    CharacterValue v = chi.evaluate_residue(n % m);
    if (!v.is_zero() && !v.is_one()) {
      if (!is_prime(n)) throw std::logic_error("least_nonresidue: found a composite witness");
      return n;
    }
  }
  throw std::logic_error("least_nonresidue: no nonresidue below m for nontrivial character");
}

enum class ThresholdKind { T11, T12, T23, T24, T15, Gauss };

inline std::string to_string(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::T11: return "T11";
    case ThresholdKind::T12: return "T12";
    case ThresholdKind::T23: return "T23";
    case ThresholdKind::T24: return "T24";
    case ThresholdKind::T15: return "T15";
    case ThresholdKind::Gauss: return "GAUSS";
  }
  throw std::logic_error("unknown ThresholdKind");
}

inline ThresholdKind parse_threshold_kind(const std::string& s) {
  if (s == "T11") return ThresholdKind::T11;
  if (s == "T12") return ThresholdKind::T12;
  if (s == "T23") return ThresholdKind::T23;
  if (s == "T24") return ThresholdKind::T24;
  if (s == "T15") return ThresholdKind::T15;
  if (s == "GAUSS" || s == "gauss") return ThresholdKind::Gauss;
  throw std::invalid_argument("unknown threshold kind: " + s);
}

// Threshold shapes:
//   T11   m^{1/(4 u_2) + eps}          (== T12 at k0 = 2)
//   T12   m^{1/(4 u_{k0}) + eps}
//   T23   m^{1/(3 u_{k0}) + eps}
//   T24   R_k(m) m^{1/(4 u_{k0}) + eps}
//   T15   m^{1/4 + eps}
//   GAUSS 2 sqrt(m) + 1
inline double theorem_threshold(ThresholdKind kind, u64 m, double epsilon, u64 k0 = 2,
                                u64 k = 1) {
  if (m < 2) throw std::invalid_argument("theorem_threshold: m must be >= 2");
  double md = static_cast<double>(m);
  if (kind == ThresholdKind::Gauss) return 2.0 * std::sqrt(md) + 1.0;
  if (!(epsilon > 0.0)) throw std::invalid_argument("theorem_threshold: epsilon must be positive");
  switch (kind) {
    case ThresholdKind::T11:
      return std::pow(md, 1.0 / (4.0 * u_k(2.0, 1e-12)) + epsilon);
    case ThresholdKind::T12:
      if (k0 < 2) throw std::invalid_argument("theorem_threshold: k0 must be >= 2");
      return std::pow(md, 1.0 / (4.0 * u_k(static_cast<double>(k0), 1e-12)) + epsilon);
    case ThresholdKind::T23:
      if (k0 < 2) throw std::invalid_argument("theorem_threshold: k0 must be >= 2");
      return std::pow(md, 1.0 / (3.0 * u_k(static_cast<double>(k0), 1e-12)) + epsilon);
    case ThresholdKind::T24: {
      if (k0 < 2) throw std::invalid_argument("theorem_threshold: k0 must be >= 2");
      if (k < 1) throw std::invalid_argument("theorem_threshold: k must be >= 1 for T24");
      double base = std::pow(md, 1.0 / (4.0 * u_k(static_cast<double>(k0), 1e-12)) + epsilon);
      return burgess_factors(m, k).R * base;
    }
    case ThresholdKind::T15:
      return std::pow(md, 0.25 + epsilon);
    default:
      throw std::invalid_argument("theorem_threshold: invalid kind");
  }
}

// Primes l <= B with chi(l) not in {0,1}, ascending.
inline std::vector<u64> prime_nonresidues_upto(const DirichletCharacter& chi, double B) {
  if (!(B >= 2.0)) throw std::invalid_argument("prime_nonresidues_upto: B must be >= 2");
  std::vector<u64> out;
  u64 m = chi.modulus();
  for (u64 l : primes_upto(static_cast<u64>(std::floor(B)))) {
    CharacterValue v = chi.evaluate_residue(l % m);
    if (!v.is_zero() && !v.is_one()) out.push_back(l);
  }
  return out;
}

// Primes l <= B with chi(l) = 1, ascending.
inline std::vector<u64> prime_residues_upto(const DirichletCharacter& chi, double B) {
  if (!(B >= 2.0)) throw std::invalid_argument("prime_residues_upto: B must be >= 2");
  std::vector<u64> out;
  u64 m = chi.modulus();
  for (u64 l : primes_upto(static_cast<u64>(std::floor(B)))) {
    if (chi.evaluate_residue(l % m).is_one()) out.push_back(l);
  }
  return out;
}

// omega(q) and log q for q = product of the prime chi-nonresidues in [1,y].
// The log avoids materializing q, which can overflow. gcd(q, m) = 1 holds by
// construction since chi vanishes on primes dividing m.
struct QProductStats {
  u64 omega_q = 0;
  double log_q = 0.0;
};

inline QProductStats q_product_stats(const DirichletCharacter& chi, double y) {
  if (!(y >= 2.0)) throw std::invalid_argument("q_product_stats: y must be >= 2");
  QProductStats s;
  for (u64 l : prime_nonresidues_upto(chi, y)) {
    ++s.omega_q;
    s.log_q += std::log(static_cast<double>(l));
  }
  return s;
}

// Exact check of
//   sum_{n<=x, gcd(n,mq)=1} (1 + chi(n) + ... + chi(n)^{k-1})
//     = k * #{n <= x : gcd(n,mq)=1, chi(n)=1},
// with the left side accumulated in Z[zeta_k] and compared as an integer.
struct IdentityCheckResult {
  bool equal = false;
  double lhs = 0;   // float rendering of the exact left side
  i64 rhs = 0;      // k * matches
  u64 matches = 0;  // #{n <= x : gcd(n,mq)=1, chi(n)=1}
};

namespace detail {

template <class CoprimeQ>
inline IdentityCheckResult identity_check_impl(const DirichletCharacter& chi, double x,
                                               CoprimeQ&& coprime_q) {
  if (x > 1e6) throw std::invalid_argument("fund_identity_check: x capped at 1e6");
  u64 m = chi.modulus();
  u64 k = chi.order();
  u64 xf = x < 1.0 ? 0 : static_cast<u64>(std::floor(x));
  // histogram of chi values over qualifying n, indexed by j with chi(n) = e(j/k)
  std::vector<i64> hist(k, 0);
  for (u64 n = 1; n <= xf; ++n) {
    if (std::gcd(n, m) != 1 || !coprime_q(n)) continue;
    CharacterValue v = chi.evaluate_residue(n % m);
    hist[v.num * (k / v.den)] += 1;
  }
  CyclotomicSum lhs(k);
  for (u64 v = 0; v < k; ++v) {
    if (hist[v] == 0) continue;
    for (u64 j = 0; j < k; ++j) lhs.add_root(mulmod(j, v, k), k, hist[v]);
  }
  IdentityCheckResult res;
  res.matches = static_cast<u64>(hist[0]);
  res.rhs = static_cast<i64>(checked_mul(k, res.matches));
  res.equal = lhs.equals_integer(res.rhs);
  res.lhs = lhs.to_complex().real();
  return res;
}

}  // namespace detail

inline IdentityCheckResult fund_identity_check(const DirichletCharacter& chi, double x,
                                               u64 q) {
  if (q == 0) throw std::invalid_argument("fund_identity_check: q must be positive");
  return detail::identity_check_impl(chi, x, [q](u64 n) { return std::gcd(n, q) == 1; });
}

// Variant with q = product of the prime chi-nonresidues in [1, y]; q itself
// is never materialized, so it may exceed 64 bits.
inline IdentityCheckResult fund_identity_check_y(const DirichletCharacter& chi, double x,
                                                 double y) {
  std::vector<u64> ls = y >= 2.0 ? prime_nonresidues_upto(chi, y) : std::vector<u64>{};
  return detail::identity_check_impl(chi, x, [&ls](u64 n) {
    for (u64 l : ls)
      if (n % l == 0) return false;
    return true;
  });
}

// Primes l <= B with l not dividing m and (l mod m) outside the subgroup H
// generated by `generators`. Membership is by direct closure enumeration,
// capped at phi(m) <= 10^6.
inline std::vector<u64> subgroup_nonresidues(u64 m, const std::vector<u64>& generators,
                                             double B) {
  if (m < 2) throw std::invalid_argument("subgroup_nonresidues: m must be >= 2");
  if (!(B >= 2.0)) throw std::invalid_argument("subgroup_nonresidues: B must be >= 2");
  u64 phi = euler_phi(m);
  if (phi > 1000000)
    throw resource_limit_error("subgroup_nonresidues: group order exceeds closure cap 10^6");
  std::vector<u64> gens;
  for (u64 g : generators) {
    u64 r = g % m;
    if (std::gcd(r, m) != 1)
      throw std::invalid_argument("subgroup_nonresidues: generator not coprime to modulus");
    gens.push_back(r);
  }
  std::vector<char> in_h(m, 0);
  in_h[1 % m] = 1;
  std::vector<u64> queue{1 % m};
  u64 size = 1;
  while (!queue.empty()) {
    u64 a = queue.back();
    queue.pop_back();
    for (u64 g : gens) {
      u64 b = mulmod(a, g, m);
      if (!in_h[b]) {
        in_h[b] = 1;
        ++size;
        queue.push_back(b);
      }
    }
  }
  if (size == phi) throw std::invalid_argument("subgroup_nonresidues: H is not a proper subgroup");
  std::vector<u64> out;
  for (u64 l : primes_upto(static_cast<u64>(std::floor(B)))) {
    if (m % l == 0) continue;
    if (!in_h[l % m]) out.push_back(l);
  }
  return out;
}

// One survey measurement row. CSV columns follow the field order exactly.
struct SurveyRecord {
  u64 m = 0;
  std::string chi_label;
  u64 k = 0;
  double epsilon = 0;
  u64 k0 = 2;
  ThresholdKind threshold_kind = ThresholdKind::T11;
  double threshold_value = 0;
  std::optional<u64> least_nonresidue;
  u64 prime_nonresidue_count = 0;
  u64 prime_residue_count = 0;
  u64 omega_q = 0;
  double y = 0;
};

}  // namespace residua
