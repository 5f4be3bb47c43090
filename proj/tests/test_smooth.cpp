#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "residua/smooth.hpp"

using namespace residua;

namespace {

// Independent oracle: enumerate y-smooth numbers <= x as products of primes,
// never touching a largest-prime-factor table.
u64 psi_dfs(u64 x, u64 y, u64 q = 1) {
  std::vector<u64> primes = primes_upto(y);
  u64 count = 0;
  std::vector<std::pair<u64, std::size_t>> stack{{1, 0}};
  while (!stack.empty()) {
    auto [n, i] = stack.back();
    stack.pop_back();
    if (std::gcd(n, q) == 1) ++count;
    for (std::size_t j = i; j < primes.size(); ++j) {
      if (primes[j] > x / n) break;
      stack.push_back({n * primes[j], j});
    }
  }
  return count;
}

}  // namespace

TEST_CASE("psi examples") {
  SmoothCounter counter(1000);
  CHECK(counter.psi(10, 2) == 4);  // 1, 2, 4, 8
  CHECK(counter.psi(20, 3) == 10);
  for (double x : {1.0, 17.0, 100.0, 999.0}) CHECK(counter.psi(x, 2000) == static_cast<u64>(x));
  CHECK(counter.psi(10.7, 2) == counter.psi(10, 2));  // floors only
}

TEST_CASE("psi_q examples") {
  SmoothCounter counter(1000);
  CHECK(counter.psi_q(10, 2, 1) == counter.psi(10, 2));
  CHECK(counter.psi_q(10, 2, 2) == 1);  // only n = 1
  CHECK(counter.psi_q(20, 3, 3) == 5);  // 1, 2, 4, 8, 16
}

TEST_CASE("psi argument validation") {
  SmoothCounter counter(100);
  CHECK_THROWS_AS(counter.psi(0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(counter.psi(10, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(counter.psi(101, 10), resource_limit_error);
  CHECK_THROWS_AS(counter.psi_q(10, 10, 0), std::invalid_argument);
}

TEST_CASE("psi agrees with the product-enumeration oracle") {
  SmoothCounter counter(1000000);
  for (u64 y : {2ull, 3ull, 7ull, 50ull, 997ull}) {
    REQUIRE(counter.psi(1000000, static_cast<double>(y)) == psi_dfs(1000000, y));
  }
  for (u64 q : {2ull, 30ull, 1001ull}) {
    REQUIRE(counter.psi_q(1000000, 100, q) == psi_dfs(1000000, 100, q));
  }
}

TEST_CASE("segmented one-shot counts equal table counts") {
  SmoothCounter counter(200000);
  CHECK(psi_segmented(200000, 13) == counter.psi(200000, 13));
  CHECK(psi_segmented(199999.5, 500) == counter.psi(199999.5, 500));
  CHECK(psi_q_segmented(200000, 13, 6) == counter.psi_q(200000, 13, 6));
}

TEST_CASE("coprimality condition sees only the smooth part of q") {
  SmoothCounter counter(20000);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    double x = 100.0 + static_cast<double>(rng() % 19900);
    double y = 2.0 + static_cast<double>(rng() % 200);
    u64 q = 1 + rng() % 100000;
    u64 qs = smooth_part(q, y);
    REQUIRE(counter.psi_q(x, y, q) == counter.psi_q(x, y, qs));
  }
  CHECK(smooth_part(2 * 3 * 5 * 49, 6.0) == 30);   // 7 > 6 drops the 49
  CHECK(smooth_part(2 * 3 * 5 * 49, 10.0) == 1470); // 7 <= 10 keeps it
  CHECK(smooth_part(1, 10.0) == 1);
}

TEST_CASE("psi is monotone in x and y") {
  SmoothCounter counter(5000);
  u64 prev = 0;
  for (double x = 1; x <= 5000; x += 13) {
    u64 cur = counter.psi(x, 10);
    REQUIRE(cur >= prev);
    prev = cur;
  }
  prev = 0;
  for (double y = 2; y <= 300; y += 1) {
    u64 cur = counter.psi(5000, y);
    REQUIRE(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("tenenbaum_compare report fields") {
  SmoothCounter counter(100000);
  SmoothCountReport r = counter.tenenbaum_compare(100000, 100, 1);
  CHECK(r.q_smooth_part == 1);
  CHECK(r.exact_count == counter.psi(100000, 100));
  CHECK(r.rel_err_tenenbaum == 0.0);  // q = 1: main term is Psi itself
  CHECK(r.u == Catch::Approx(std::log(100000.0) / std::log(100.0)));
  CHECK(r.rho_prediction == Catch::Approx(100000.0 * rho(r.u)));
  CHECK(r.hypothesis_ok);

  SmoothCountReport r30 = counter.tenenbaum_compare(100000, 100, 30);
  CHECK(r30.q_smooth_part == 30);
  CHECK(r30.exact_count == counter.psi_q(100000, 100, 30));
  double expect = (8.0 / 30.0) * static_cast<double>(counter.psi(100000, 100));
  CHECK(r30.tenenbaum_prediction == Catch::Approx(expect));

  // q = 2^40: smooth part replacement keeps omega small and the count sane
  SmoothCountReport rbig = counter.tenenbaum_compare(10000, 10, u64(1) << 40);
  CHECK(rbig.q_smooth_part == (u64(1) << 40));
  CHECK(rbig.exact_count == counter.psi_q(10000, 10, 2));
}
