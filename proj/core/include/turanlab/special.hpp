#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace turanlab {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286;

// Digamma Gamma'/Gamma for complex z away from the poles 0, -1, -2, ...
// Shifts Re z up to at least 10 with the recurrence, then sums six terms of
// the asymptotic series.
Complex digamma(Complex z);

// Principal branch of log Gamma(z), Re z > 0.
Complex log_gamma(Complex z);

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(std::size_t order);

// Bernoulli number B_n (n <= 30), B_1 = -1/2.
double bernoulli(int n);

// Upper incomplete gamma Gamma(m, x) for integer m >= 1, x >= 0.
double upper_incomplete_gamma_int(int m, double x);

// Binomial coefficient as a double.
double binomial(int n, int k);

double factorial(int n);

}  // namespace turanlab
