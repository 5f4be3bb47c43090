// Dirichlet characters mod m, built on the cyclic decomposition of (Z/mZ)^*.
// Values are exact roots of unity, so the predicates chi(n) = 1 and
// chi(n) not in {0,1} are exact integer tests.
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "residua/arithmetic.hpp"

namespace residua {

// Zero, or the exact root of unity e(num/den) with gcd(num,den)=1, num < den.
// den == 0 encodes the zero value; the value 1 is (0, 1).
struct CharacterValue {
  u64 num = 0;
  u64 den = 0;

  static CharacterValue zero() { return {0, 0}; }
  static CharacterValue one() { return {0, 1}; }
  static CharacterValue root(u64 a, u64 q) {
    if (q == 0) throw std::invalid_argument("CharacterValue: zero denominator");
    a %= q;
    u64 g = std::gcd(a, q);
    if (a == 0) return {0, 1};
    return {a / g, q / g};
  }

  bool is_zero() const { return den == 0; }
  bool is_one() const { return den == 1; }
  bool operator==(const CharacterValue&) const = default;

  CharacterValue pow(u64 j) const {
    if (is_zero()) return j == 0 ? one() : zero();
    return root(mulmod(num, j % den, den), den);
  }

  CharacterValue operator*(const CharacterValue& o) const {
    if (is_zero() || o.is_zero()) return zero();
    u64 l = std::lcm(den, o.den);
    u64 t = (mulmod(num, l / den, l) + mulmod(o.num, l / o.den, l)) % l;
    return root(t, l);
  }

  std::complex<double> to_complex() const {
    if (is_zero()) return 0.0;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
  }
};

namespace detail {

// smallest generator of (Z/pe)^* for an odd prime power pe = p^e
inline u64 smallest_primitive_root(u64 pe, u64 p, u64 order) {
  std::vector<u64> qs;
  for (auto [q, e] : factorize(order).factors) qs.push_back(q);
  for (u64 g = 2;; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (u64 q : qs) {
      if (powmod(g, order / q, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

}  // namespace detail

// Cyclic decomposition of (Z/mZ)^* with per-component discrete-log support.
// Immutable after construction; safe to share across threads.
class UnitGroup {
 public:
  enum class Kind { Cyclic, TwoSign, TwoFive };

  struct Component {
    u64 prime_power;  // CRT coordinate modulus
    u64 prime;
    u64 generator;
    u64 order;
    Kind kind;
    std::vector<u32> dlog;         // dense table when prime_power is small
    std::shared_ptr<Bsgs> bsgs;    // fallback otherwise
  };

  explicit UnitGroup(u64 m, u64 table_threshold = u64(1) << 24) : modulus_(m) {
    if (m == 0) throw std::invalid_argument("UnitGroup: modulus must be positive");
    phi_ = 1;
    exponent_ = 1;
    if (m == 1) return;
    for (auto [p, e] : factorize(m).factors) {
      u64 pe = 1;
      for (u32 i = 0; i < e; ++i) pe *= p;
      if (p == 2) {
        if (e == 1) continue;  // (Z/2)^* is trivial
        if (e == 2) {
          add_component({4, 2, 3, 2, Kind::Cyclic, {}, nullptr}, table_threshold);
        } else {
          // (Z/2^e)^* = <-1> x <5>
          add_component({pe, 2, pe - 1, 2, Kind::TwoSign, {}, nullptr}, table_threshold);
          add_component({pe, 2, 5, pe / 4, Kind::TwoFive, {}, nullptr}, table_threshold);
        }
      } else {
        u64 order = pe / p * (p - 1);
        u64 g = detail::smallest_primitive_root(pe, p, order);
        add_component({pe, p, g, order, Kind::Cyclic, {}, nullptr}, table_threshold);
      }
    }
  }

  u64 modulus() const { return modulus_; }
  u64 phi() const { return phi_; }
  u64 exponent() const { return exponent_; }  // lcm of component orders
  const std::vector<Component>& components() const { return components_; }

  // Exponent vector of n in [0, m); nullopt when gcd(n, m) > 1.
  std::optional<std::vector<u64>> exponents_of(u64 n) const {
    if (std::gcd(n, modulus_) != 1) return std::nullopt;
    std::vector<u64> xs(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const Component& c = components_[i];
      u64 r = n % c.prime_power;
      switch (c.kind) {
        case Kind::Cyclic:
          xs[i] = component_log(c, r);
          break;
        case Kind::TwoSign:
          xs[i] = (r % 4 == 1) ? 0 : 1;
          break;
        case Kind::TwoFive: {
          u64 target = (r % 4 == 1) ? r : c.prime_power - r;
          xs[i] = component_log(c, target);
          break;
        }
      }
    }
    return xs;
  }

 private:
  static u64 component_log(const Component& c, u64 target) {
    if (!c.dlog.empty()) return c.dlog[target];
    return c.bsgs->log(target);
  }

  void add_component(Component c, u64 table_threshold) {
    if (c.prime_power <= table_threshold) {
      c.dlog.assign(c.prime_power, 0);
      u64 cur = 1;
      for (u64 t = 0; t < c.order; ++t) {
        c.dlog[cur] = static_cast<u32>(t);
        cur = mulmod(cur, c.generator, c.prime_power);
      }
    } else {
      c.bsgs = std::make_shared<Bsgs>(c.generator, c.order, c.prime_power);
    }
    phi_ = checked_mul(phi_, c.order);
    exponent_ = std::lcm(exponent_, c.order);
    components_.push_back(std::move(c));
  }

  u64 modulus_;
  u64 phi_;
  u64 exponent_;
  std::vector<Component> components_;
};

inline std::shared_ptr<const UnitGroup> unit_group(u64 m, u64 table_threshold = u64(1) << 24) {
  return std::make_shared<const UnitGroup>(m, table_threshold);
}

// A character is an exponent vector against the group's canonical generators.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<u64> exponents)
      : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& comps = group_->components();
    if (exponents_.size() != comps.size())
      throw std::invalid_argument("DirichletCharacter: exponent count mismatch");
    order_ = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      u64 d = comps[i].order;
      if (exponents_[i] >= d) throw std::invalid_argument("DirichletCharacter: exponent out of range");
      order_ = std::lcm(order_, d / std::gcd(exponents_[i], d));
    }
  }

  u64 modulus() const { return group_->modulus(); }
  const UnitGroup& group() const { return *group_; }
  std::shared_ptr<const UnitGroup> group_ptr() const { return group_; }
  const std::vector<u64>& exponents() const { return exponents_; }

  u64 order() const { return order_; }
  bool is_principal() const { return order_ == 1; }
  bool is_quadratic() const { return order_ == 2; }

  CharacterValue operator()(i64 n) const {
    u64 m = group_->modulus();
    if (m == 1) return CharacterValue::one();
    i64 r = n % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return evaluate_residue(static_cast<u64>(r));
  }

  CharacterValue evaluate_residue(u64 r) const {
    if (group_->modulus() == 1) return CharacterValue::one();
    auto xs = group_->exponents_of(r);
    if (!xs) return CharacterValue::zero();
    u64 l = group_->exponent();
    u64 t = 0;
    const auto& comps = group_->components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      u64 term = mulmod(mulmod(exponents_[i] % l, l / comps[i].order, l), (*xs)[i] % l, l);
      t = (t + term) % l;
    }
    return CharacterValue::root(t, l);
  }

  // report label: exponent vector joined by '.', empty vector -> "-"
  std::string label() const {
    if (exponents_.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(exponents_[i]);
    }
    return s;
  }

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<u64> exponents_;
  u64 order_;
};

// All phi(m) characters mod m, principal first, in odometer order over the
// component exponents (rightmost fastest). Deterministic across runs.
inline std::vector<DirichletCharacter> enumerate_characters(
    std::shared_ptr<const UnitGroup> group) {
  std::vector<DirichletCharacter> chars;
  const auto& comps = group->components();
  std::vector<u64> exps(comps.size(), 0);
  for (;;) {
    chars.emplace_back(group, exps);
    std::size_t i = comps.size();
    while (i > 0) {
      --i;
      if (++exps[i] < comps[i].order) break;
      exps[i] = 0;
      if (i == 0) return chars;
    }
    if (comps.empty()) return chars;
  }
}

inline std::vector<DirichletCharacter> enumerate_characters(u64 m) {
  return enumerate_characters(unit_group(m));
}

// Kronecker symbol (a/n) for n >= 1, by reciprocity.
inline int kronecker(i64 a, i64 n) {
  if (n < 1) throw std::invalid_argument("kronecker: n must be >= 1");
  if (n == 1) return 1;
  int result = 1;
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    int twos = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++twos;
    }
    i64 a8 = ((a % 8) + 8) % 8;
    if (twos % 2 == 1 && (a8 == 3 || a8 == 5)) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// chi mod m is induced by some character mod d iff chi(n) = 1 for every
// n = 1 (mod d) coprime to m.
inline bool induced_mod(const DirichletCharacter& chi, u64 d) {
  u64 m = chi.modulus();
  for (u64 n = 1 + d; n < m; n += d) {
    if (std::gcd(n, m) != 1) continue;
    if (!chi(static_cast<i64>(n)).is_one()) return false;
  }
  return true;
}

// Primitive iff not induced from any maximal proper divisor modulus m/p.
inline bool is_primitive(const DirichletCharacter& chi) {
  u64 m = chi.modulus();
  if (m == 1) return true;
  for (auto [p, e] : factorize(m).factors) {
    if (induced_mod(chi, m / p)) return false;
  }
  return true;
}

// Smallest d | m such that chi is induced by a character mod d.
inline u64 conductor(const DirichletCharacter& chi) {
  u64 m = chi.modulus();
  std::vector<u64> divisors{1};
  for (auto [p, e] : factorize(m).factors) {
    std::size_t sz = divisors.size();
    u64 pe = 1;
    for (u32 i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * pe);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  for (u64 d : divisors) {
    if (induced_mod(chi, d)) return d;
  }
  return m;
}

}  // namespace residua
