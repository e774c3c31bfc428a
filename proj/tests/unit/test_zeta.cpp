#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "test_data.hpp"
#include "turanlab/arith.hpp"
#include "turanlab/error.hpp"
#include "turanlab/special.hpp"
#include "turanlab/zeta.hpp"

using namespace turanlab;

namespace {
const LambdaTable& table() {
  static const LambdaTable t = LambdaTable::sieve(2'000'000);
  return t;
}
}  // namespace

TEST_CASE("complex points reject non-finite components") {
  CHECK_THROWS_AS(ComplexPoint(std::nan(""), 0.0), InvalidArgument);
  CHECK_THROWS_AS(ComplexPoint(1.0, INFINITY), InvalidArgument);
  const ComplexPoint s(2.0, 3.0);
  CHECK(s.conj() == ComplexPoint(2.0, -3.0));
}

TEST_CASE("special functions") {
  CHECK(digamma(Complex(1.0)).real() == doctest::Approx(-oracle::kEulerGamma).epsilon(1e-14));
  CHECK(digamma(Complex(0.5)).real() == doctest::Approx(-oracle::kEulerGamma - 2 * std::log(2.0)).epsilon(1e-13));
  CHECK(log_gamma(Complex(5.0)).real() == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(Complex(0.5)).real() == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK(std::abs(log_gamma(Complex(0.25, 10.0)) - Complex(-15.3645927602952, 12.6341936669385)) < 1e-11);
  CHECK(bernoulli(2) == doctest::Approx(1.0 / 6));
  CHECK(bernoulli(1) == -0.5);
  CHECK(upper_incomplete_gamma_int(1, 2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(upper_incomplete_gamma_int(3, 0.0) == doctest::Approx(2.0));
  const auto& gl = gauss_legendre(24);
  double sum = 0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) sum += gl.weights[i] * std::pow(gl.nodes[i], 10);
  CHECK(sum == doctest::Approx(2.0 / 11).epsilon(1e-14));
}

TEST_CASE("Dirichlet series") {
  const auto z2 = zeta_dirichlet(ComplexPoint(2, 0), 1e-6);
  CHECK(std::abs(z2.value - oracle::kZeta2) <= z2.est_error + 1e-14);
  CHECK(z2.est_error <= 1e-6 + 1e-12);
  const auto z30 = zeta_dirichlet(ComplexPoint(30, 0), 1e-15);
  CHECK(z30.value.real() == doctest::Approx(1.00000000093133).epsilon(1e-13));
  const auto a = zeta_dirichlet(ComplexPoint(2, 3), 1e-10);
  const auto b = zeta_dirichlet(ComplexPoint(2, -3), 1e-10);
  CHECK(a.value == std::conj(b.value));
  CHECK_THROWS_AS(zeta_dirichlet(ComplexPoint(1, 5), 1e-6), DomainError);
}

TEST_CASE("integral representation") {
  const auto z2 = zeta_integral(ComplexPoint(2, 0));
  const auto d2 = zeta_dirichlet(ComplexPoint(2, 0), 1e-8);
  CHECK(std::abs(z2.value - d2.value) <= z2.est_error + d2.est_error);
  const auto half = zeta_integral(ComplexPoint(0.5, 0));
  CHECK(std::abs(half.value - oracle::kZetaHalf) <= std::max(half.est_error, 1e-14));
  CHECK(std::abs(half.value - oracle::zeta_borwein(0.5)) < 1e-12);
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto z = zeta_integral(ComplexPoint(1 + eps, 0));
    CHECK(std::abs(eps * z.value - 1.0) < 2 * eps);
  }
  const Complex mp(0.825879824315826375, -0.269033827497306311);
  CHECK(std::abs(zeta_integral(ComplexPoint(2, 30)).value - mp) < 1e-12);
  const Complex critical(0.022241142609993589, -0.103258123266450058);
  CHECK(std::abs(zeta_integral(ComplexPoint(0.5, 14)).value - critical) < 1e-12);
  CHECK_THROWS_AS(zeta_integral(ComplexPoint(1, 0)), DomainError);
  CHECK_THROWS_AS(zeta_integral(ComplexPoint(-0.5, 0)), DomainError);
}

TEST_CASE("integral agrees with the Borwein oracle off the real axis") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sig(0.2, 3.0), tt(-50.0, 50.0);
  for (int i = 0; i < 25; ++i) {
    const ComplexPoint s(sig(rng), tt(rng));
    const auto z = zeta_integral(s);
    CHECK_MESSAGE(std::abs(z.value - oracle::zeta_borwein(s.value())) <= z.est_error + 1e-11,
                  "s = " << s.sigma() << " + " << s.t() << "i");
  }
}

TEST_CASE("derivative from the integral representation") {
  // -zeta'/zeta(2) through the integral representation.
  const auto z = zeta_integral(ComplexPoint(2, 0));
  const auto zp = zeta_prime_integral(ComplexPoint(2, 0));
  CHECK((-zp.value / z.value).real() == doctest::Approx(oracle::kLogDerivAt2).epsilon(1e-12));
}

TEST_CASE("log-derivative series") {
  const auto& t = table();
  const auto r = log_deriv_zeta_series(ComplexPoint(2, 0), t, 1e-5);
  CHECK(std::abs(r.value.real() - oracle::kLogDerivAt2) <= r.est_error + 1e-12);
  const auto r4 = log_deriv_zeta_series(ComplexPoint(4, 0), t, 1e-10);
  CHECK(std::abs(r4.value.imag()) <= 1e-15);
  const auto rc = log_deriv_zeta_series(ComplexPoint(2, 30), t, 1e-5);
  CHECK(std::abs(rc.value) <= oracle::kLogDerivAt2 + rc.est_error);
}

TEST_CASE("log-derivative via zeros converges to the series value") {
  const auto& zeros = testdata::zeros();
  REQUIRE(zeros.size() >= 1000);
  const double target = oracle::kLogDerivAt2;
  double prev = INFINITY;
  for (std::size_t K : {100u, 1000u}) {
    const double diff = std::abs(log_deriv_zeta_zeros(ComplexPoint(2, 0), zeros, K).value.real() - target);
    CHECK(diff < prev);
    prev = diff;
  }
  CHECK(prev < 5e-3);
  CHECK_THROWS_AS(log_deriv_zeta_zeros(ComplexPoint(2, 0), zeros, zeros.size() + 1), InsufficientData);
}

TEST_CASE("cal Z by every representation") {
  CalZOptions opt;
  opt.table = &table();
  opt.tol = 1e-6;
  const double expected = oracle::kLogDerivAt2 - oracle::kZeta2;
  CHECK(expected == doctest::Approx(-1.0749731).epsilon(1e-7));
  const auto series = cal_Z(ComplexPoint(2, 0), ZetaMethod::Series, opt);
  CHECK(std::abs(series.value.real() - expected) <= series.est_error + 1e-12);
  const auto integral = cal_Z(ComplexPoint(2, 0), ZetaMethod::Integral, opt);
  CHECK(integral.value.real() == doctest::Approx(expected).epsilon(1e-12));
  const auto limit = cal_Z(ComplexPoint(1, 0), ZetaMethod::Limit, opt);
  CHECK(std::abs(limit.value.real() + 2 * oracle::kEulerGamma) <= 1e-6);
  const auto a = cal_Z(ComplexPoint(1.5, 7), ZetaMethod::Integral, opt);
  const auto b = cal_Z(ComplexPoint(1.5, -7), ZetaMethod::Integral, opt);
  CHECK(std::abs(a.value - std::conj(b.value)) < 1e-13);
  CHECK_THROWS_AS(cal_Z(ComplexPoint(2, 0), ZetaMethod::Series, CalZOptions{}), InvalidArgument);
}

TEST_CASE("Hardy Z") {
  CHECK(riemann_siegel_theta(30.0) == doctest::Approx(8.05780013656399).epsilon(1e-12));
  CHECK(hardy_z(10.0) == doctest::Approx(-1.54919454618102).epsilon(1e-11));
  CHECK(hardy_z(50.0) == doctest::Approx(-0.340735005955025).epsilon(1e-10));
  CHECK(std::abs(hardy_z(oracle::kFirstOrdinate)) < 1e-12);
}
