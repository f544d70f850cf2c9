#include <cmath>
#include <random>

#include "doctest.h"
#include "qsturm/contfrac.hpp"
#include "qsturm/error.hpp"

using namespace qsturm;

TEST_SUITE("contfrac") {
  TEST_CASE("approximants follow the hand recursion") {
    const ContinuedFraction golden({1, 1, 1, 1});
    CHECK(approximants(golden, 4).p == 3);
    CHECK(approximants(golden, 4).q == 5);
    const ContinuedFraction silver({2, 2, 2});
    CHECK(approximants(silver, 3).p == 5);
    CHECK(approximants(silver, 3).q == 12);
    CHECK(approximants(silver, 0).p == 0);
    CHECK(approximants(silver, 0).q == 1);
  }

  TEST_CASE("approximant errors") {
    const ContinuedFraction cf({1, 2, 3});
    CHECK_THROWS_AS(approximants(cf, 4), Error);
    try {
      approximants(cf, 4);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IndexBeyondCoefficients);
    }
    const ContinuedFraction ones(std::vector<std::int64_t>(120, 1));
    CHECK_NOTHROW(approximants(ones, 80));
    try {
      approximants(ones, 100);
      FAIL("expected overflow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IntegerOverflow);
    }
  }

  TEST_CASE("periodic generator extends coefficients") {
    const auto cf = ContinuedFraction::periodic({1, 2});
    CHECK(cf.coeff(1) == 1);
    CHECK(cf.coeff(2) == 2);
    CHECK(cf.coeff(101) == 1);
    CHECK_FALSE(cf.available().has_value());
    const ContinuedFraction mixed({3}, {1});
    CHECK(mixed.coeff(1) == 3);
    CHECK(mixed.coeff(7) == 1);
    CHECK_THROWS_AS(ContinuedFraction({1, 0, 2}), Error);
    CHECK_FALSE(ContinuedFraction(std::vector<std::int64_t>{}).has(1));
  }

  TEST_CASE("value of convergents") {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(std::fabs(value(ContinuedFraction(std::vector<std::int64_t>(20, 1)), 20) - golden) < 1e-8);
    CHECK(std::fabs(value(ContinuedFraction(std::vector<std::int64_t>(20, 2)), 20) - (std::sqrt(2.0) - 1.0)) < 1e-8);
    CHECK(value(ContinuedFraction({1}), 1) == 1.0);
    CHECK_THROWS_AS(value(ContinuedFraction({1}), 0), Error);
    // value agrees with p_n / q_n
    const ContinuedFraction cf({3, 1, 4, 1, 5, 9, 2, 6});
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto a = approximants(cf, n);
      CHECK(value(cf, n) == doctest::Approx(static_cast<double>(a.p) / static_cast<double>(a.q)).epsilon(1e-15));
    }
  }

  TEST_CASE("expand inverts value") {
    const auto g = expand(0.6180339887, 5);
    CHECK(g.cf.coeffs() == std::vector<std::int64_t>{1, 1, 1, 1, 1});
    CHECK_FALSE(g.terminated);
    const auto half = expand(0.5, 5);
    CHECK(half.cf.coeffs() == std::vector<std::int64_t>{2});
    CHECK(half.terminated);
    CHECK(expand(0.4142135624, 4).cf.coeffs() == std::vector<std::int64_t>{2, 2, 2, 2});
    CHECK_THROWS_AS(expand(1.0, 3), Error);
    CHECK_THROWS_AS(expand(0.0, 3), Error);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coeff(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::int64_t> c(12);
      for (auto& a : c) a = coeff(rng);
      c.back() = std::max<std::int64_t>(c.back(), 2);
      const ContinuedFraction cf(c);
      const auto e = expand(value(cf, 12), 8);
      CHECK(std::equal(e.cf.coeffs().begin(), e.cf.coeffs().end(), c.begin()));
    }
  }

  TEST_CASE("density score") {
    CHECK(density_score(ContinuedFraction(std::vector<std::int64_t>(100, 1)), 100) == 1.0);
    CHECK(density_score(ContinuedFraction(std::vector<std::int64_t>(50, 2)), 50) == 2.0);
    CHECK(density_score(ContinuedFraction({1, 2, 1, 2}), 4) == 1.5);
    CHECK(density_score(ContinuedFraction::periodic({1, 4}), 1000) == doctest::Approx(2.5));
    CHECK_THROWS_AS(density_score(ContinuedFraction({1, 2}), 3), Error);
  }

  TEST_CASE("determinant identity of neighbouring convergents") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coeff(1, 3);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::int64_t> c(30);
      for (auto& a : c) a = coeff(rng);
      const auto t = approximant_table(ContinuedFraction(c), 30);
      for (std::size_t n = 1; n <= 30; ++n) {
        const auto det = t[n].q * t[n - 1].p - t[n].p * t[n - 1].q;
        CHECK(det == (n % 2 == 0 ? 1 : -1));
      }
    }
  }
}
