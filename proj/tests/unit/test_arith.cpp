#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "turanlab/arith.hpp"
#include "turanlab/error.hpp"

using namespace turanlab;

namespace {
const LambdaTable& table() {
  static const LambdaTable t = LambdaTable::sieve(200'000);
  return t;
}
}  // namespace

TEST_CASE("sieve rejects tiny limits and oversized tables") {
  CHECK_THROWS_AS(LambdaTable::sieve(1), InvalidArgument);
  CHECK_THROWS_AS(LambdaTable::sieve(1'000'000, 1024), ResourceError);
  CHECK(LambdaTable::bytes_required(1000) > 1000 * 24);
}

TEST_CASE("lambda matches trial division") {
  const auto& t = table();
  CHECK(t[1] == 0.0);
  CHECK(t[2] == doctest::Approx(std::log(2.0)));
  CHECK(t[8] == t[2]);
  CHECK(t[6] == 0.0);
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    REQUIRE_MESSAGE(t[n] == oracle::lambda_trial(n), "n = " << n);
    REQUIRE((t[n] > 0) == t.is_prime_power(n));
  }
  CHECK_THROWS_AS(t[t.limit() + 1], OutOfRange);
}

TEST_CASE("psi uses the half-maximum convention") {
  const auto& t = table();
  CHECK(psi(1.5, t) == 0.0);
  CHECK(psi(2.0, t) == doctest::Approx(std::log(2.0) / 2));
  const double expected = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(psi(10.0, t) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(psi(10.0, t) == doctest::Approx(7.832015).epsilon(1e-6));
  CHECK_THROWS_AS(psi(0.0, t), Error);
  CHECK_THROWS_AS(psi(t.limit() + 1.0, t), Error);
}

TEST_CASE("psi equals the trial-division oracle bit for bit") {
  const auto& t = table();
  const auto ref = oracle::psi_trial_table(10'000);
  for (std::uint64_t n = 2; n <= 10'000; ++n) {
    REQUIRE_MESSAGE(psi(static_cast<double>(n), t) == ref[n], "x = " << n);
  }
}

TEST_CASE("varpi examples and its relation to psi") {
  const auto& t = table();
  CHECK(varpi(1.5, t) == doctest::Approx(-1.0));
  CHECK(varpi(2.0, t) == doctest::Approx(std::log(2.0) / 2 - 1.5));
  CHECK(varpi(10.5, t) == doctest::Approx(psi(10.5, t) - 10.0));
  CHECK(varpi(10.5, t) == doctest::Approx(-2.167985).epsilon(1e-6));
  for (double x : {3.0, 17.0, 1000.0, 99'991.0}) {
    CHECK(varpi(x, t) == doctest::Approx(psi(x, t) - x + 0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(varpi(0.5, t), Error);
}

TEST_CASE("crossover solves its defining equation") {
  const double x0 = solve_crossover(0);
  CHECK(std::log(x0) == doctest::Approx(4.971).epsilon(1e-3));
  CHECK(std::abs(3.1 * std::log(std::log(x0)) - std::log(x0)) <= 1e-10);
  CHECK(solve_crossover(1) > x0);
  CHECK(solve_crossover(8) > solve_crossover(1));
  CHECK_THROWS_AS(solve_crossover(-1), InvalidArgument);
}

TEST_CASE("remainder exponent branches") {
  const auto r0 = RegionExponent::make(0);
  CHECK(r0.coefficient == 3.1);
  CHECK(remainder_exponent(10.0, r0) == 0.5);
  CHECK(remainder_exponent(std::exp(100.0), r0) == doctest::Approx(3.1 * std::log(100.0) / 100.0));
  CHECK(remainder_exponent(std::exp(100.0), r0) == doctest::Approx(0.142760).epsilon(1e-5));
  CHECK(remainder_exponent(r0.crossover * (1 + 1e-12), r0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(remainder_exponent(2.0, r0), Error);
}

TEST_CASE("remainder bound report") {
  const auto& t = table();
  const auto r0 = RegionExponent::make(0);
  const double xs[] = {3.0, 1000.0, 100'000.0};
  const auto report = check_remainder_bound(t, r0, 1.0, xs);
  REQUIRE(report.samples.size() == 3);
  CHECK(report.samples[0].bound == doctest::Approx(std::sqrt(3.0) * std::pow(std::log(3.0), 2)));
  CHECK(report.samples[0].bound == doctest::Approx(2.090).epsilon(1e-3));
  CHECK(report.samples[0].varpi == doctest::Approx(std::log(2.0) + std::log(3.0) / 2 - 2.5));
  CHECK(report.flagged == 0);

  const auto degenerate = check_remainder_bound(t, r0, 0.0, xs);
  CHECK(degenerate.flagged == 3);
  CHECK(std::isinf(degenerate.samples[1].ratio));
}

TEST_CASE("log-spaced samples") {
  const auto xs = log_spaced(1e3, 1e7, 100);
  REQUIRE(xs.size() == 100);
  CHECK(xs.front() == doctest::Approx(1e3));
  CHECK(xs.back() == doctest::Approx(1e7));
  CHECK(xs[50] / xs[49] == doctest::Approx(xs[1] / xs[0]));
}
