#include "turanlab/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "turanlab/error.hpp"

namespace turanlab {

namespace {

// B_0 .. B_30; odd entries beyond B_1 vanish.
constexpr std::array<double, 31> kBernoulli = {
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0,
};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

bool needs_shift(Complex z) {
  return z.real() < 0.5 || (z.real() < 10.0 && std::abs(z) < 10.0);
}

}  // namespace

double bernoulli(int n) {
  if (n < 0 || n >= static_cast<int>(kBernoulli.size())) {
    throw InvalidArgument("bernoulli: index " + std::to_string(n) + " out of table");
  }
  return kBernoulli[static_cast<std::size_t>(n)];
}

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z)) throw DomainError("digamma: pole at nonpositive integer");
  Complex shift = 0.0;
  while (needs_shift(z)) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv2;
  for (int k = 1; k <= 6; ++k) {
    series += kBernoulli[2 * k] / (2.0 * k) * power;
    power *= inv2;
  }
  return shift + std::log(z) - 0.5 * inv - series;
}

Complex log_gamma(Complex z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma: requires Re z > 0");
  Complex shift = 0.0;
  while (needs_shift(z)) {
    shift -= std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

const GaussLegendreRule& gauss_legendre(std::size_t order) {
  if (order == 0) throw InvalidArgument("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (slot) return *slot;

  auto rule = std::make_unique<GaussLegendreRule>();
  rule->nodes.resize(order);
  rule->weights.resize(order);
  const std::size_t n = order;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[n - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  if (n == 1) {
    rule->nodes[0] = 0.0;
    rule->weights[0] = 2.0;
  }
  slot = std::move(rule);
  return *slot;
}

double upper_incomplete_gamma_int(int m, double x) {
  if (m < 1) throw InvalidArgument("upper_incomplete_gamma_int: m must be >= 1");
  if (x < 0) throw InvalidArgument("upper_incomplete_gamma_int: x must be >= 0");
  // (m-1)! e^{-x} sum_{i<m} x^i / i!
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < m; ++i) {
    term *= x / i;
    sum += term;
  }
  return factorial(m - 1) * std::exp(-x) * sum;
}

double factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of negative number");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return std::round(b);
}

}  // namespace turanlab
