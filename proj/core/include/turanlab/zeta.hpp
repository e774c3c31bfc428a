#pragma once

#include <cstddef>
#include <cstdint>

#include "turanlab/arith.hpp"
#include "turanlab/special.hpp"

namespace turanlab {

class ZeroDataset;

// s = sigma + i t. Construction rejects non-finite components.
class ComplexPoint {
 public:
  ComplexPoint(double sigma, double t);
  explicit ComplexPoint(Complex s) : ComplexPoint(s.real(), s.imag()) {}

  double sigma() const noexcept { return sigma_; }
  double t() const noexcept { return t_; }
  Complex value() const noexcept { return {sigma_, t_}; }
  ComplexPoint conj() const noexcept { return ComplexPoint(sigma_, -t_); }

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

 private:
  double sigma_;
  double t_;
};

struct EvalResult {
  Complex value;
  double est_error = 0.0;  // bound on truncation + quadrature error
  std::int64_t terms_used = 1;
};

// Partial sum of the Dirichlet series, N chosen from the integral tail bound
// N^{1-sigma}/(sigma-1) <= tol (capped at max_terms; est_error is the bound at
// the N actually used). Pre: sigma > 1.
EvalResult zeta_dirichlet(ComplexPoint s, double tol, std::int64_t max_terms = 2'000'000);

// s/(s-1) - s * int_1^inf {v} v^{-s-1} dv, Gauss-Legendre on every unit
// segment up to a cutoff V and an Euler-Maclaurin tail beyond it.
// Pre: sigma > 0, s != 1.
EvalResult zeta_integral(ComplexPoint s, int quad_nodes = 24);

// zeta'(s) from the same representation (differentiated under the integral).
EvalResult zeta_prime_integral(ComplexPoint s, int quad_nodes = 24);

// -zeta'/zeta(s) = sum Lambda(n) n^{-s}; tail bounded through psi(u) <= 2u.
// Pre: sigma > 1.
EvalResult log_deriv_zeta_series(ComplexPoint s, const LambdaTable& table, double tol);

// -zeta'/zeta(s) from the zero expansion over the first K conjugate pairs
// rho = 1/2 +- i gamma, with the pole, digamma and constant terms. est_error
// is not a rigorous tail bound; it reports the magnitude of the last pair.
EvalResult log_deriv_zeta_zeros(ComplexPoint s, const ZeroDataset& zeros, std::size_t K);

enum class ZetaMethod {
  Series,    // Dirichlet series for zeta and Lambda series for -zeta'/zeta
  Integral,  // integral representation for zeta and zeta'
  Limit,     // symmetric limit about s with Richardson extrapolation
};

struct CalZOptions {
  double tol = 1e-10;
  int quad_nodes = 24;
  double limit_step = 1e-2;
  const LambdaTable* table = nullptr;  // required by Series
};

// cal Z(s) = -zeta'/zeta(s) - zeta(s).
EvalResult cal_Z(ComplexPoint s, ZetaMethod method, const CalZOptions& options = {});

// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + i t), real on the critical line.
double riemann_siegel_theta(double t);
double hardy_z(double t, int quad_nodes = 24);

}  // namespace turanlab
