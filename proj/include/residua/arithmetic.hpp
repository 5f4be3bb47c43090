// Integer foundations: overflow-checked 64-bit arithmetic, primality,
// factorization, multiplicative functions, prime / largest-prime-factor
// sieves, and baby-step giant-step discrete logarithms.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace residua {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Thrown when a request exceeds a configured memory/size cap.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("u64 add overflow");
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("u64 mul overflow");
  return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Brent-cycle Pollard rho; n must be composite, odd, > 1.
inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto step = [n, c](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = step(y);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

}  // namespace detail

// Ordered prime factorization (p, e) with p strictly increasing.
// n = 1 has an empty factor list.
struct Factorization {
  u64 n = 1;
  std::vector<std::pair<u64, u32>> factors;
};

inline Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.n = n;
  u64 rest = n;
  auto push = [&f](u64 p, u32 e) { f.factors.emplace_back(p, e); };
  for (u64 d = 2; d <= 1000000 && d * d <= rest; d = (d == 2 ? 3 : d + 2)) {
    if (rest % d == 0) {
      u32 e = 0;
      while (rest % d == 0) {
        rest /= d;
        ++e;
      }
      push(d, e);
    }
  }
  if (rest > 1) {
    if (is_prime(rest)) {
      push(rest, 1);
    } else {
      // remaining cofactor has all prime factors > 10^6; split with rho
      std::vector<u64> stack{rest};
      std::vector<u64> primes;
      while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
          primes.push_back(m);
          continue;
        }
        u64 d = detail::pollard_brent(m);
        stack.push_back(d);
        stack.push_back(m / d);
      }
      std::sort(primes.begin(), primes.end());
      for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        push(primes[i], static_cast<u32>(j - i));
        i = j;
      }
    }
  }
  u64 check = 1;
  for (auto [p, e] : f.factors)
    for (u32 i = 0; i < e; ++i) check = checked_mul(check, p);
  if (check != n) throw std::logic_error("factorize: recomposition mismatch");
  return f;
}

inline u64 euler_phi(u64 n) {
  Factorization f = factorize(n);
  u64 r = n;
  for (auto [p, e] : f.factors) r = r / p * (p - 1);
  return r;
}

inline unsigned omega(u64 n) { return static_cast<unsigned>(factorize(n).factors.size()); }

// P+(n); P+(1) = 1.
inline u64 largest_prime_factor(u64 n) {
  Factorization f = factorize(n);
  return f.factors.empty() ? 1 : f.factors.back().first;
}

inline std::vector<u64> primes_upto(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (!composite[p]) {
      primes.push_back(p);
      for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
    }
    if (p * p > limit) break;
  }
  // finish collecting past sqrt(limit)
  u64 start = primes.empty() ? 2 : primes.back() + 1;
  for (u64 p = start; p <= limit; ++p)
    if (!composite[p]) primes.push_back(p);
  return primes;
}

inline constexpr u64 kDefaultSieveCap = u64(1) << 27;  // ~0.5 GB of u32 entries

// Flat largest-prime-factor table: entry [n] = P+(n) for 1 <= n <= limit,
// entry [0] = 0, entry [1] = 1. Deterministic regardless of build order.
inline std::vector<u32> lpf_sieve(u64 limit, u64 cap = kDefaultSieveCap) {
  if (limit < 1) throw std::invalid_argument("lpf_sieve: limit must be >= 1");
  if (limit > cap)
    throw resource_limit_error("lpf_sieve: limit " + std::to_string(limit) +
                               " exceeds cap " + std::to_string(cap) +
                               " (raise the cap or use the segmented scan)");
  std::vector<u32> table(limit + 1, 0);
  table[1] = 1;
  for (u64 p = 2; p <= limit; ++p) {
    if (table[p] == 0) {
      for (u64 m = p; m <= limit; m += p) table[m] = static_cast<u32>(p);
    }
  }
  return table;
}

// Segmented largest-prime-factor scan: visit(n, lpf(n)) for n = 1..limit in
// order, using O(block) memory. Backs smooth counting past the flat-table cap.
template <class Visit>
inline void for_each_lpf(u64 limit, Visit&& visit, u64 block = u64(1) << 20) {
  if (limit < 1) throw std::invalid_argument("for_each_lpf: limit must be >= 1");
  u64 root = 1;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<u64> primes = primes_upto(root);
  std::vector<u64> rem(block);
  std::vector<u64> lpf(block);
  visit(u64(1), u64(1));
  for (u64 lo = 2; lo <= limit; lo += block) {
    u64 hi = std::min(limit, lo + block - 1);
    u64 len = hi - lo + 1;
    for (u64 i = 0; i < len; ++i) {
      rem[i] = lo + i;
      lpf[i] = 1;
    }
    for (u64 p : primes) {
      for (u64 m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
        u64 i = m - lo;
        while (rem[i] % p == 0) rem[i] /= p;
        lpf[i] = p;  // primes ascend, so the last hit is the largest <= root
      }
    }
    for (u64 i = 0; i < len; ++i) {
      // any leftover cofactor is a single prime > sqrt(limit)
      visit(lo + i, rem[i] > 1 ? rem[i] : lpf[i]);
    }
  }
}

// Baby-step giant-step tables for one cyclic group <g> of order d mod pe.
class Bsgs {
 public:
  Bsgs(u64 generator, u64 order, u64 modulus)
      : modulus_(modulus), generator_(generator), order_(order) {
    baby_count_ = 1;
    while (baby_count_ * baby_count_ < order) ++baby_count_;
    baby_.reserve(baby_count_);
    u64 cur = 1 % modulus;
    for (u64 j = 0; j < baby_count_; ++j) {
      baby_.emplace(cur, static_cast<u32>(j));
      cur = mulmod(cur, generator, modulus);
    }
    // g^{-baby_count} = g^{order - baby_count mod order}
    giant_ = powmod(generator, order - (baby_count_ % order), modulus);
  }

  u64 order() const { return order_; }

  // Exponent of t in [0, order); t must lie in <g>.
  u64 log(u64 t) const {
    t %= modulus_;
    u64 cur = t;
    for (u64 i = 0; i * baby_count_ < order_ + baby_count_; ++i) {
      auto it = baby_.find(cur);
      if (it != baby_.end()) {
        u64 e = i * baby_count_ + it->second;
        if (e < order_) {
          assert(powmod(generator_, e, modulus_) == t);
          return e;
        }
      }
      cur = mulmod(cur, giant_, modulus_);
    }
    throw std::logic_error("Bsgs::log: no solution (internal inconsistency)");
  }

 private:
  u64 modulus_, generator_, order_, baby_count_, giant_;
  std::unordered_map<u64, u32> baby_;
};

// Exponent x in [0, d) with g^x = t mod pe; g must generate a cyclic group
// of order d containing t. O(sqrt(d)) time and space.
inline u64 discrete_log(u64 generator, u64 order, u64 modulus, u64 target) {
  if (modulus == 0) throw std::invalid_argument("discrete_log: modulus must be positive");
  target %= modulus;
  if (std::gcd(target, modulus) != 1)
    throw std::invalid_argument("discrete_log: target not in group");
  return Bsgs(generator, order, modulus).log(target);
}

}  // namespace residua
