#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "test_data.hpp"
#include "turanlab/error.hpp"
#include "turanlab/experiment.hpp"
#include "turanlab/explicit_formula.hpp"
#include "turanlab/special.hpp"

using namespace turanlab;

namespace {
const LambdaTable& table() {
  static const LambdaTable t = LambdaTable::sieve(2'000'000);
  return t;
}

WeightedSumSpec base_spec() {
  WeightedSumSpec spec;
  spec.W = 1000.5;
  spec.k = 4;
  spec.s = ComplexPoint(2, 30);
  spec.N_max = 1'000'000;
  spec.K = 1000;
  spec.M_triv = 50;
  return spec;
}
}  // namespace

TEST_CASE("spec validation") {
  auto spec = base_spec();
  CHECK_NOTHROW(spec.validate());
  spec.W = 1000.0;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.W = 1000.2;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec = base_spec();
  spec.k = 3;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec = base_spec();
  spec.N_max = 4000;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
}

TEST_CASE("prime side") {
  WeightedSumSpec spec;
  spec.W = 1;
  spec.k = 1;
  spec.s = ComplexPoint(2, 0);
  spec.N_max = 2'000'000;
  const auto r = prime_side(spec, table());
  CHECK(std::abs(r.value.real() - oracle::kLogDerivAt2) <= r.tail_bound + 1e-12);
  CHECK(r.tail_bound < 1e-4);

  spec = base_spec();
  spec.s = ComplexPoint(3, 0);
  const auto real = prime_side(spec, table());
  CHECK(real.value.real() > 0);
  CHECK(real.value.imag() == 0.0);

  spec = base_spec();
  spec.N_max = 500'000;
  const auto half = prime_side(spec, table());
  spec.N_max = 1'000'000;
  const auto full = prime_side(spec, table());
  CHECK(std::abs(full.value - half.value) <= half.tail_bound);
  CHECK(full.tail_bound < half.tail_bound);

  spec.N_max = 3000;
  CHECK_THROWS_AS(prime_side(spec, table()), InvalidArgument);
  spec.N_max = 4'000'000;
  CHECK_THROWS_AS(prime_side(spec, table()), OutOfRange);
}

TEST_CASE("zero side terms") {
  auto spec = base_spec();
  spec.s = ComplexPoint(2, 0);
  const auto& zeros = testdata::zeros();
  const auto r = zero_side(spec, zeros);
  CHECK(std::abs(r.pole_term - 1.0 / 1000.5) < 1e-18);
  CHECK(std::abs(r.zero_sum.imag()) <= 1e-15 * std::abs(r.zero_sum));
  const double first_trivial = std::pow(1000.5, -4.0) / 256.0;
  CHECK(first_trivial == doctest::Approx(3.9e-15).epsilon(0.01));
  CHECK(std::abs(r.trivial_sum) == doctest::Approx(first_trivial).epsilon(1e-3));
  spec.K = zeros.size() + 1;
  CHECK_THROWS_AS(zero_side(spec, zeros), InsufficientData);
  spec.K = 0;
  CHECK_THROWS_AS(zero_side(spec, zeros), InvalidArgument);
}

TEST_CASE("the identity closes within the truncation allowance") {
  const auto& zeros = testdata::zeros();
  auto spec = base_spec();
  const auto r = explicit_residual(spec, table(), zeros);
  CHECK(r.within_allowance());
  CHECK(r.bound > 0);

  spec.K = 100;
  const auto coarse = explicit_residual(spec, table(), zeros);
  CHECK(coarse.within_allowance());
  CHECK(r.residual <= coarse.residual + 1e-12);

  WeightedSumSpec second;
  second.W = 500.5;
  second.k = 5;
  second.s = ComplexPoint(3, 50);
  second.N_max = 1'000'000;
  second.K = 1000;
  CHECK(explicit_residual(second, table(), zeros).within_allowance());

  auto conj = base_spec();
  conj.s = base_spec().s.conj();
  const auto rc = explicit_residual(conj, table(), zeros);
  CHECK(std::abs(rc.lhs - std::conj(r.lhs)) <= 1e-15 * std::abs(r.lhs));
  CHECK(std::abs(rc.rhs - std::conj(r.rhs)) <= 1e-14 * std::abs(r.rhs));

  std::ostringstream out;
  write_residual_csv_header(out);
  CHECK(out.str().rfind("W,k,sigma,t,N_max,K,M_triv,lhs_re,lhs_im,rhs_re,rhs_im,residual,allowance,analytic_bound", 0) == 0);
}

TEST_CASE("tail of F and dyadic blocks") {
  const auto f = tail_F(10000.5, ComplexPoint(1.5, 30), table());
  CHECK(f.size_condition);
  CHECK(f.holds());
  const auto g = tail_F(2000.5, ComplexPoint(2, 30), table());
  CHECK(g.bound == doctest::Approx(0.3 / 2001).epsilon(1e-14));
  CHECK_FALSE(tail_F(100.5, ComplexPoint(2, 30), table()).size_condition);
  CHECK_THROWS_AS(tail_F(100.5, ComplexPoint(2, 10), table()), DomainError);

  const auto b = dyadic_block_G(1, 1100, ComplexPoint(1.5, 30), table());
  CHECK(b.bound == doctest::Approx(9.0 / (60.0 * std::sqrt(1100.0))));
  CHECK(b.holds());
  double total = 0;
  for (int j = 1; j < 200; ++j) total += 9.0 / (60.0 * std::pow(2.0, 0.5 * (j - 1)) * std::sqrt(1100.0));
  CHECK(dyadic_bound_total(1100, ComplexPoint(1.5, 30)) == doctest::Approx(total).epsilon(1e-12));
  CHECK_THROWS_AS(dyadic_block_G(20, 1100, ComplexPoint(1.5, 30), table()), OutOfRange);
}

TEST_CASE("oscillating sums") {
  const auto r = oscillating_block_sum(1100, 2200, 30);
  CHECK(r.bound == doctest::Approx(2 * 2200 / 30.0));
  CHECK(r.holds());
  CHECK(step_difference(1'000'000, 30) <= 3e-5);
  const auto empty = oscillating_block_sum(1100, 1100, 30);
  CHECK(empty.value == Complex(0));
  try {
    oscillating_block_sum(100, 200, 30);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("N1 >= 9(t^2+1)/8") != std::string::npos);
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const double t = std::uniform_real_distribution<double>(15, 80)(rng);
    const auto n1 = static_cast<std::uint64_t>(std::ceil(9 * (t * t + 1) / 8)) + rng() % 5000;
    CHECK(oscillating_block_sum(n1, n1 + 1 + rng() % 20000, t).holds());
  }
}

TEST_CASE("smoothing identity") {
  const auto& gl = gauss_legendre(16);
  const double W = 100.5;
  double integral = 0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double u = W * std::pow(2.0, 0.5 * (gl.nodes[i] + 1));
    integral += gl.weights[i] * 0.5 * std::log(2.0) * std::pow(std::log(u / W), 2);
  }
  CHECK(integral == doctest::Approx(std::pow(std::log(2.0), 3) / 3).epsilon(1e-12));

  const auto c = smoothing_identity_check(W, 4, ComplexPoint(3, 0), table(), 8, 100'000);
  CHECK(c.residual <= c.allowance);
  CHECK(c.lhs.imag() == 0.0);
  CHECK(c.rhs.imag() == 0.0);
  const auto d = smoothing_identity_check(W, 5, ComplexPoint(2, 20), table(), 8, 20'000);
  CHECK(d.residual <= d.allowance);
}

TEST_CASE("normalized identity") {
  const auto& zeros = testdata::zeros();
  ExperimentConfig config;
  config.gamma_p = 500;
  config.beta_p = 0.9;
  config.b = 1.5;
  config.c = 1;
  WeightedSumSpec spec = base_spec();
  spec.K = 1000;
  const auto r = normalized_identity(spec, config, table(), zeros);
  const double sigma0 = 2 - 0.9;
  CHECK(std::abs(r.multiplier) ==
        doctest::Approx(std::pow(spec.W, sigma0 - 0.9) * std::pow(sigma0 - 0.9, spec.k)).epsilon(1e-12));
  CHECK(r.multiplied.residual == doctest::Approx(std::abs(r.multiplier) * r.original.residual).epsilon(1e-10));
  CHECK(r.A > 0);
  CHECK(r.right_bound > 0);
}
