#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "residua/characters.hpp"
#include "residua/charsums.hpp"
#include "residua/cyclotomic.hpp"

using namespace residua;

TEST_CASE("cyclotomic polynomials, small and famous cases") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
  std::vector<i64> p105 = cyclotomic_poly(105);
  REQUIRE(p105.size() == 49);  // phi(105) = 48
  CHECK(p105[7] == -2);        // first cyclotomic with a coefficient beyond +-1
  CHECK(p105[48] == 1);
}

TEST_CASE("cyclotomic sums reduce exactly") {
  // sum of all k-th roots of unity vanishes
  for (u64 k : {2ull, 3ull, 6ull, 12ull, 30ull, 105ull}) {
    CyclotomicSum s(k);
    for (u64 j = 0; j < k; ++j) s.add_root(j, k);
    CHECK(s.is_zero());
  }
  CyclotomicSum s(6);
  s.add_root(1, 6);
  s.add_root(5, 6);  // zeta + conj(zeta) = 1 for k = 6
  CHECK(s.equals_integer(1));
}

TEST_CASE("partial_sum examples") {
  auto chars7 = enumerate_characters(7);
  for (const auto& chi : chars7) {
    PartialCharSum full = partial_sum(chi, 7);
    if (chi.is_principal())
      CHECK(full.exact.equals_integer(6));
    else
      CHECK(full.exact.is_zero());
  }
  const DirichletCharacter* quad = nullptr;
  for (const auto& chi : chars7)
    if (chi.order() == 2) quad = &chi;
  REQUIRE(quad);
  PartialCharSum s3 = partial_sum(*quad, 3);
  CHECK(s3.exact.equals_integer(1));  // 1 + 1 - 1
  CHECK(s3.value.real() == Catch::Approx(1.0).margin(1e-12));

  CHECK(partial_sum(*quad, 0).exact.is_zero());
  CHECK(partial_sum(*quad, 0.5).exact.is_zero());
}

TEST_CASE("partial_sum periodicity, exact for all m <= 200") {
  for (u64 m = 2; m <= 200; ++m) {
    for (const auto& chi : enumerate_characters(m)) {
      if (chi.is_principal()) continue;
      for (u64 x : {u64(0), u64(1), m / 3, m - 1}) {
        auto lhs = partial_sum(chi, static_cast<double>(x + m)).exact.canonical();
        auto rhs = partial_sum(chi, static_cast<double>(x)).exact.canonical();
        REQUIRE(lhs == rhs);  // the full period contributes exactly zero
      }
    }
  }
}

TEST_CASE("float rendering agrees with direct double accumulation") {
  for (u64 m : {7ull, 24ull, 101ull, 420ull, 9973ull}) {
    for (const auto& chi : enumerate_characters(m)) {
      if (chi.order() < 3 && m > 500) continue;  // keep the big moduli quick
      double x = static_cast<double>(m) * 0.7;
      PartialCharSum s = partial_sum(chi, x);
      std::complex<double> direct = 0;
      for (u64 n = 1; n <= static_cast<u64>(x); ++n) direct += chi(static_cast<i64>(n)).to_complex();
      REQUIRE(std::abs(s.value - direct) < 1e-6);
      if (m > 500) break;
    }
  }
}

TEST_CASE("burgess_factors examples") {
  BurgessFactors b = burgess_factors(72, 2);
  CHECK(b.M == 8);
  CHECK(b.Q == 1);
  CHECK(b.R == 1.0);

  b = burgess_factors(12, 12);
  CHECK(b.M == 1);
  CHECK(b.Q == 4);
  CHECK(b.R == 1.0);

  for (u64 m : {2ull, 7ull, 64ull, 5000ull, 777777ull}) CHECK(burgess_factors(m, 2).R == 1.0);

  // both factors nontrivial: min picks 9^{9/8} = 11.84 over 32^{3/4} = 13.45
  b = burgess_factors(32, 9);
  CHECK(b.M == 32);
  CHECK(b.Q == 9);
  CHECK(b.R == Catch::Approx(std::pow(9.0, 1.125)));
}

TEST_CASE("burgess_factors agree with a definition-based product") {
  auto power_product = [](u64 n, unsigned min_exp) {
    u64 prod = 1, rest = n;
    for (u64 p = 2; rest > 1; ++p) {
      if (rest % p != 0) continue;
      u64 pe = 1;
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        pe *= p;
        ++e;
      }
      if (e >= min_exp) prod *= pe;
    }
    return prod;
  };
  auto M_direct = [&](u64 m) { return power_product(m, 3); };
  auto Q_direct = [&](u64 k) { return power_product(k, 2); };
  u64 badM = 0, badQ = 0;
  for (u64 m = 1; m <= 10000; ++m) {
    if (burgess_factors(m, 1).M != M_direct(m)) badM = m;
    if (burgess_factors(1, m).Q != Q_direct(m)) badQ = m;
  }
  CHECK(badM == 0);
  CHECK(badQ == 0);
  // R = 1 whenever either factor is trivial
  for (u64 m : {7ull, 8ull, 500ull})
    for (u64 k : {2ull, 6ull, 30ull}) {
      BurgessFactors b = burgess_factors(m, k);
      if (b.M == 1 || b.Q == 1) CHECK(b.R == 1.0);
    }
}

TEST_CASE("burgess_bound_shape formula") {
  double got = burgess_bound_shape(10000, 2, 2, 0.01, 1000.0);
  double want = std::pow(1000.0, 0.5) * std::pow(10000.0, 3.0 / 16.0 + 0.01);
  CHECK(got == Catch::Approx(want));

  // r <= 3 omits the R factor even when R > 1
  BurgessFactors b = burgess_factors(32, 9);
  REQUIRE(b.R > 1.0);
  double r3 = burgess_bound_shape(32, 9, 3, 0.01, 100.0);
  CHECK(r3 == Catch::Approx(std::pow(100.0, 2.0 / 3.0) * std::pow(32.0, 4.0 / 36.0 + 0.01)));
  double r4 = burgess_bound_shape(32, 9, 4, 0.01, 100.0);
  double base4 = std::pow(100.0, 0.75) * std::pow(32.0, 5.0 / 64.0 + 0.01);
  CHECK(r4 == Catch::Approx(base4 * std::pow(b.R, 0.25)));

  CHECK_THROWS_AS(burgess_bound_shape(10, 2, 0, 0.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(burgess_bound_shape(10, 2, 2, -0.1, 10.0), std::invalid_argument);
}

TEST_CASE("polya_vinogradov_check small cases") {
  auto chars3 = enumerate_characters(3);
  PolyaVinogradovReport rep = polya_vinogradov_check(chars3[1]);
  CHECK(rep.ok);
  CHECK(rep.max_abs == Catch::Approx(1.0));
  CHECK(rep.bound == Catch::Approx(std::sqrt(3.0) * std::log(3.0)));

  // quadratic character mod 997: exhaustive grid stays under the bound
  auto chars997 = enumerate_characters(997);
  const DirichletCharacter* quad = nullptr;
  for (const auto& chi : chars997)
    if (chi.order() == 2) quad = &chi;
  REQUIRE(quad);
  rep = polya_vinogradov_check(*quad);
  CHECK(rep.ok);
  CHECK(rep.max_ratio < 1.0);
  CHECK(rep.max_ratio > 0.0);

  // x = m gives a zero sum, consistent with orthogonality
  PolyaVinogradovReport at_m = polya_vinogradov_check(*quad, {997});
  CHECK(at_m.max_abs < 1e-9);

  CHECK_THROWS_AS(polya_vinogradov_check(chars3[0]), std::invalid_argument);  // principal
  auto chars8 = enumerate_characters(8);
  for (const auto& chi : chars8) {
    if (!chi.is_principal() && !is_primitive(chi))
      CHECK_THROWS_AS(polya_vinogradov_check(chi), std::invalid_argument);
  }
}
