#include "turanlab/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "turanlab/error.hpp"
#include "turanlab/experiment.hpp"
#include "turanlab/special.hpp"
#include "turanlab/summation.hpp"

namespace turanlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double size_threshold(double t) { return 9.0 * (t * t + 1.0) / 8.0; }

void require_sigma_gt_one(ComplexPoint s, const char* what) {
  if (!(s.sigma() > 1.0)) {
    throw DomainError(std::string(what) + ": requires sigma > 1, got " + std::to_string(s.sigma()));
  }
}

void require_t_ge_15(ComplexPoint s, const char* what) {
  if (!(std::abs(s.t()) >= 15.0)) {
    throw DomainError(std::string(what) + ": requires |t| >= 15, got " + std::to_string(s.t()));
  }
}

// Majorant of sum_{n > N} log(n) n^{-sigma} log^{k-1}(n/W), valid once the
// summand is decreasing on [N, inf).
double prime_tail_integral(double W, int k, double sigma, double N) {
  const double a = sigma - 1.0;
  const double v0 = std::log(N / W);
  const double lw = std::log(W);
  const double head = std::pow(W, 1.0 - sigma);
  return head * (lw * upper_incomplete_gamma_int(k, a * v0) / std::pow(a, k) +
                 upper_incomplete_gamma_int(k + 1, a * v0) / std::pow(a, k + 1));
}

// d/du log(u^{-sigma} log^{k-1}(u/W) log u) < 0
bool summand_decreasing(double W, int k, double sigma, double u) {
  if (k == 1) return 1.0 / std::log(u) < sigma;
  return 1.0 / std::log(u) + (k - 1) / std::log(u / W) < sigma;
}

double prime_tail_bound(double W, int k, double sigma, std::uint64_t N_max) {
  // Walk forward until the summand decreases, bounding the gap term by term.
  CompensatedSum gap;
  std::uint64_t n = N_max;
  const double lw = std::log(W);
  while (!summand_decreasing(W, k, sigma, static_cast<double>(n))) {
    ++n;
    const double ln = std::log(static_cast<double>(n));
    gap.add(ln * std::exp(-sigma * ln) * std::pow(ln - lw, k - 1));
    if (n - N_max > 100'000'000ULL) {
      throw DomainError("prime-side tail: summand not decreasing below 1e8 beyond N_max");
    }
  }
  return gap.value() + prime_tail_integral(W, k, sigma, static_cast<double>(n));
}

}  // namespace

void WeightedSumSpec::validate() const {
  if (!(W > 0) || !std::isfinite(W)) throw InvalidArgument("W must be positive and finite");
  const double frac = W - std::floor(W);
  if (std::min(frac, 1.0 - frac) < 0.25) {
    throw InvalidArgument("W must stay at least 0.25 from every integer, got " +
                          std::to_string(W));
  }
  if (k < 4) throw InvalidArgument("k must be >= 4, got " + std::to_string(k));
  if (!(s.sigma() > 1.0)) throw InvalidArgument("sigma must exceed 1");
  if (static_cast<double>(N_max) < 4.0 * W) throw InvalidArgument("N_max must be >= 4W");
  if (M_triv < 0) throw InvalidArgument("M_triv must be >= 0");
}

PrimeSideResult prime_side(const WeightedSumSpec& spec, const LambdaTable& table) {
  require_sigma_gt_one(spec.s, "prime_side");
  if (spec.k < 1) throw InvalidArgument("prime_side requires k >= 1");
  if (!(spec.W > 0)) throw InvalidArgument("prime_side requires W > 0");
  if (static_cast<double>(spec.N_max) < 4.0 * spec.W) {
    throw InvalidArgument("prime_side: N_max = " + std::to_string(spec.N_max) +
                          " is below 4W = " + std::to_string(4.0 * spec.W));
  }
  if (spec.N_max > table.limit()) {
    throw OutOfRange("prime_side: N_max exceeds the sieve limit " + std::to_string(table.limit()));
  }
  const Complex s = spec.s.value();
  const double lw = std::log(spec.W);
  ComplexCompensatedSum sum;
  CompensatedSum magnitude;
  const auto first = static_cast<std::uint64_t>(std::floor(spec.W)) + 1;
  for (std::uint64_t n = first; n <= spec.N_max; ++n) {
    const double lam = table[n];
    if (lam == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    const Complex term = lam * std::exp(-s * ln) * std::pow(ln - lw, spec.k - 1);
    sum.add(term);
    magnitude.add(std::abs(term));
  }
  PrimeSideResult r;
  r.value = sum.value();
  r.magnitude = magnitude.value();
  r.tail_bound = prime_tail_bound(spec.W, spec.k, spec.s.sigma(), spec.N_max);
  return r;
}

double zero_tail_bound(double W, int k, ComplexPoint s, double gamma_K) {
  require_sigma_gt_one(s, "zero_tail_bound");
  if (k < 2) throw InvalidArgument("zero_tail_bound requires k >= 2");
  if (!(gamma_K >= std::numbers::e)) throw InvalidArgument("zero_tail_bound requires gamma_K >= e");
  const double c = s.sigma() - 0.5;
  const double t = std::abs(s.t());
  const double scale = std::pow(W, 0.5 - s.sigma());
  const double A = gamma_K;

  // Decreasing majorant of the pair weight: the near term is frozen at its
  // peak c^{-k} for T <= t. The integrand is -d/dT of that majorant times the
  // count envelope N(T) - N(A) <= M(T) - M(A) + Q(T) + Q(A).
  auto neg_derivative = [&](double T) {
    double d = 0.0;
    if (T > t) {
      const double x = T - t;
      d += k * x * std::pow(c * c + x * x, -0.5 * k - 1.0);
    }
    const double y = T + t;
    d += k * y * std::pow(c * c + y * y, -0.5 * k - 1.0);
    return d;
  };
  const double MA = main_term_M(A);
  const double QA = q_bound(A);
  auto envelope = [&](double T) { return std::max(0.0, main_term_M(T) - MA + q_bound(T) + QA); };

  const auto& rule = gauss_legendre(16);
  CompensatedSum total;
  auto integrate = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double T = mid + half * rule.nodes[i];
      total.add(half * rule.weights[i] * neg_derivative(T) * envelope(T));
    }
  };
  // Below the peak only the far term contributes and the integrand is smooth.
  double lo = A;
  if (t > A) {
    double h = std::min(1.0, t - A);
    while (lo < t) {
      const double hi = std::min(t, lo + h);
      integrate(lo, hi);
      lo = hi;
      h *= 1.25;
    }
  }
  const double start = lo;
  const double X_end = 1.0e9 * std::max(1.0, std::max(t, A));
  double h = std::min(0.25, 0.25 * c);
  while (lo - start < X_end) {
    const double hi = lo + h;
    integrate(lo, hi);
    lo = hi;
    h *= 1.2;
  }
  // Beyond T_e = lo: boundary term f(T_e) S(T_e) plus int f dS with
  // f <= 2 x^{-k}, dS <= log T <= log(2x), x = T_e - t >= t.
  const double X = lo - t;
  const double f_end = std::pow(c * c + X * X, -0.5 * k) + std::pow(c * c + (lo + t) * (lo + t), -0.5 * k);
  const double remainder =
      f_end * envelope(lo) +
      2.0 * std::pow(X, 1.0 - k) * (std::log(2.0 * X) / (k - 1) + 1.0 / ((k - 1.0) * (k - 1.0)));
  return scale * (total.value() * (1.0 + 1e-10) + remainder);
}

ZeroSideResult zero_side(const WeightedSumSpec& spec, const ZeroDataset& zeros) {
  require_sigma_gt_one(spec.s, "zero_side");
  if (spec.k < 2) throw InvalidArgument("zero_side requires k >= 2");
  if (spec.K > zeros.size()) {
    throw InsufficientData("zero_side: K = " + std::to_string(spec.K) + " exceeds the " +
                           std::to_string(zeros.size()) + " ordinates available");
  }
  if (spec.K == 0) throw InvalidArgument("zero_side requires K >= 1");
  const Complex s = spec.s.value();
  const double lw = std::log(spec.W);
  const int k = spec.k;
  const double fact = factorial(k - 1);
  CompensatedSum magnitude;

  ZeroSideResult r;
  r.pole_term = std::exp((1.0 - s) * lw) / ipow(s - 1.0, k);
  magnitude.add(std::abs(r.pole_term));

  ComplexCompensatedSum zsum;
  for (std::size_t i = 0; i < spec.K; ++i) {
    const double g = zeros[i];
    for (const Complex rho : {Complex(0.5, g), Complex(0.5, -g)}) {
      const Complex term = std::exp((rho - s) * lw) / ipow(s - rho, k);
      zsum.add(term);
      magnitude.add(std::abs(term));
    }
  }
  r.zero_sum = zsum.value();

  ComplexCompensatedSum tsum;
  for (int n = 1; n <= spec.M_triv; ++n) {
    const Complex term = std::exp((-2.0 * n - s) * lw) / ipow(s + 2.0 * n, k);
    tsum.add(term);
    magnitude.add(std::abs(term));
  }
  r.trivial_sum = tsum.value();

  r.value = fact * (r.pole_term - r.zero_sum - r.trivial_sum);
  r.magnitude = fact * magnitude.value();
  r.zero_tail = zero_tail_bound(spec.W, k, spec.s, zeros[spec.K - 1]);
  const double sigma = spec.s.sigma();
  const double m1 = spec.M_triv + 1.0;
  r.trivial_tail = std::pow(spec.W, -sigma - 2.0 * m1) / std::pow(sigma + 2.0 * m1, k) /
                   (1.0 - 1.0 / (spec.W * spec.W));
  return r;
}

double weighted_sum_bound(double W, int k, ComplexPoint s) {
  require_sigma_gt_one(s, "weighted_sum_bound");
  const double sigma = s.sigma();
  const double t = std::abs(s.t());
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  const double p = std::pow(2.0, sigma - 1.0);
  return 9.0 * factorial(k - 1) * p * std::pow(W, 1.0 - sigma) /
         (2.0 * t * (p - 1.0) * std::pow(sigma - 1.0, k - 1));
}

ResidualReport explicit_residual(const WeightedSumSpec& spec, const LambdaTable& table,
                                 const ZeroDataset& zeros) {
  spec.validate();
  const PrimeSideResult p = prime_side(spec, table);
  const ZeroSideResult z = zero_side(spec, zeros);
  ResidualReport r;
  r.lhs = p.value;
  r.rhs = z.value;
  r.residual = std::abs(r.lhs - r.rhs);
  r.bound = weighted_sum_bound(spec.W, spec.k, spec.s);
  r.truncation_allowance = p.tail_bound + factorial(spec.k - 1) * (z.zero_tail + z.trivial_tail) +
                           16.0 * kEps * (p.magnitude + z.magnitude);
  return r;
}

void write_residual_csv_header(std::ostream& out) {
  out << "W,k,sigma,t,N_max,K,M_triv,lhs_re,lhs_im,rhs_re,rhs_im,residual,allowance,analytic_bound\n";
}

void write_residual_csv_row(std::ostream& out, const WeightedSumSpec& spec, const ResidualReport& r) {
  const auto old = out.precision(17);
  out << spec.W << ',' << spec.k << ',' << spec.s.sigma() << ',' << spec.s.t() << ',' << spec.N_max
      << ',' << spec.K << ',' << spec.M_triv << ',' << r.lhs.real() << ',' << r.lhs.imag() << ','
      << r.rhs.real() << ',' << r.rhs.imag() << ',' << r.residual << ',' << r.truncation_allowance
      << ',' << r.bound << '\n';
  out.precision(old);
}

BoundedValue tail_F(double W, ComplexPoint s, const LambdaTable& table) {
  require_sigma_gt_one(s, "tail_F");
  require_t_ge_15(s, "tail_F");
  if (!(W > 0)) throw InvalidArgument("tail_F requires W > 0");
  const auto N = static_cast<std::uint64_t>(std::floor(W)) + 1;
  if (N > table.limit()) throw OutOfRange("tail_F: floor(W)+1 exceeds the sieve limit");
  const Complex sv = s.value();
  const double sigma = s.sigma();
  const double t = std::abs(s.t());
  ComplexCompensatedSum sum;
  for (std::uint64_t n = N; n <= table.limit(); ++n) {
    const double lam = table[n];
    if (lam != 0.0) sum.add(lam * std::exp(-sv * std::log(static_cast<double>(n))));
  }
  BoundedValue r;
  r.value = sum.value();
  const double p = std::pow(2.0, sigma - 1.0);
  r.bound = 9.0 * p / (2.0 * t * (p - 1.0) * std::pow(static_cast<double>(N), sigma - 1.0));
  // psi(x) < 1.04 x and partial summation.
  const double L = static_cast<double>(table.limit());
  r.truncation_tail = 1.04 * sigma * std::pow(L, 1.0 - sigma) / (sigma - 1.0);
  r.size_condition = static_cast<double>(N) >= size_threshold(t);
  return r;
}

BoundedValue dyadic_block_G(int j, std::uint64_t N, ComplexPoint s, const LambdaTable& table) {
  require_sigma_gt_one(s, "dyadic_block_G");
  require_t_ge_15(s, "dyadic_block_G");
  if (j < 1) throw InvalidArgument("dyadic_block_G requires j >= 1");
  if (N < 1) throw InvalidArgument("dyadic_block_G requires N >= 1");
  if (j > 62 || (N << (j - 1)) >> (j - 1) != N || (N << j) > table.limit()) {
    throw OutOfRange("dyadic_block_G: block 2^j N exceeds the sieve limit " +
                     std::to_string(table.limit()));
  }
  const std::uint64_t lo = N << (j - 1);
  const std::uint64_t hi = (N << j) - 1;
  const Complex sv = s.value();
  ComplexCompensatedSum sum;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const double lam = table[n];
    if (lam != 0.0) sum.add(lam * std::exp(-sv * std::log(static_cast<double>(n))));
  }
  const double sigma = s.sigma();
  const double t = std::abs(s.t());
  BoundedValue r;
  r.value = sum.value();
  r.bound = 9.0 / (2.0 * t * std::pow(2.0, (sigma - 1.0) * (j - 1)) *
                   std::pow(static_cast<double>(N), sigma - 1.0));
  r.size_condition = static_cast<double>(N) >= size_threshold(t);
  return r;
}

double dyadic_bound_total(std::uint64_t N, ComplexPoint s) {
  require_sigma_gt_one(s, "dyadic_bound_total");
  require_t_ge_15(s, "dyadic_bound_total");
  const double p = std::pow(2.0, s.sigma() - 1.0);
  return 9.0 * p /
         (2.0 * std::abs(s.t()) * (p - 1.0) * std::pow(static_cast<double>(N), s.sigma() - 1.0));
}

double step_difference(std::uint64_t n, double t) {
  if (n < 1) throw InvalidArgument("step_difference requires n >= 1");
  const double phase = t * std::log1p(1.0 / static_cast<double>(n));
  return 2.0 * std::abs(std::sin(0.5 * phase));
}

OscillatingSumResult oscillating_block_sum(std::uint64_t N1, std::uint64_t N2, double t) {
  if (!(t >= 15.0)) throw DomainError("oscillating_block_sum: t >= 15 failed, t = " + std::to_string(t));
  if (!(static_cast<double>(N1) >= size_threshold(t))) {
    throw DomainError("oscillating_block_sum: N1 >= 9(t^2+1)/8 failed, N1 = " + std::to_string(N1) +
                      " < " + std::to_string(size_threshold(t)));
  }
  if (N2 < N1) throw DomainError("oscillating_block_sum: N2 >= N1 failed");
  ComplexCompensatedSum sum;
  for (std::uint64_t n = N1; n < N2; ++n) {
    sum.add(std::polar(1.0, -t * std::log(static_cast<double>(n))));
  }
  OscillatingSumResult r;
  r.value = sum.value();
  r.bound = 2.0 * static_cast<double>(N2) / t;
  if (N2 > N1) {
    constexpr int kSamples = 33;
    for (int i = 0; i < kSamples; ++i) {
      const auto n = N1 + static_cast<std::uint64_t>(static_cast<double>(N2 - N1 - 1) * i / (kSamples - 1));
      r.worst_step_ratio =
          std::max(r.worst_step_ratio, step_difference(n, t) / (t / static_cast<double>(n)));
    }
  }
  return r;
}

SmoothingCheck smoothing_identity_check(double W, int k, ComplexPoint s, const LambdaTable& table,
                                        int quad_nodes, std::uint64_t U_max) {
  require_sigma_gt_one(s, "smoothing_identity_check");
  if (k < 4) throw InvalidArgument("smoothing_identity_check requires k >= 4");
  if (!(W > 1)) throw InvalidArgument("smoothing_identity_check requires W > 1");
  if (quad_nodes < 4) throw InvalidArgument("smoothing_identity_check requires quad_nodes >= 4");
  if (U_max > table.limit()) throw OutOfRange("smoothing_identity_check: U_max exceeds the sieve limit");
  const auto first = static_cast<std::uint64_t>(std::floor(W)) + 1;
  if (U_max < first) throw InvalidArgument("smoothing_identity_check requires U_max > W");

  const Complex sv = s.value();
  const double lw = std::log(W);
  std::vector<Complex> terms(U_max - first + 1);
  ComplexCompensatedSum lhs;
  CompensatedSum magnitude;
  for (std::uint64_t n = first; n <= U_max; ++n) {
    const double lam = table[n];
    Complex term = 0.0;
    if (lam != 0.0) term = lam * std::exp(-sv * std::log(static_cast<double>(n)));
    terms[n - first] = term;
    const Complex weighted = term * std::pow(std::log(static_cast<double>(n)) - lw, k - 1);
    lhs.add(weighted);
    magnitude.add(std::abs(weighted));
  }

  // On [u_m, m+1) with u_m = max(m, W) the truncated F_u(s) is the suffix sum
  // over n in [m+1, U_max], constant in u.
  const auto& fine = gauss_legendre(static_cast<std::size_t>(quad_nodes));
  const auto& coarse = gauss_legendre(static_cast<std::size_t>(quad_nodes / 2));
  auto segment = [&](const GaussLegendreRule& rule, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = mid + half * rule.nodes[i];
      acc += rule.weights[i] * std::pow(std::log(u) - lw, k - 2) / u;
    }
    return half * acc;
  };

  ComplexCompensatedSum suffix;
  ComplexCompensatedSum rhs;
  CompensatedSum quad_error;
  double worst_err = -1.0;
  SmoothingCheck r;
  for (std::uint64_t n = U_max; n >= first; --n) {
    suffix.add(terms[n - first]);
    const Complex F = suffix.value();
    const double lo = (n == first) ? W : static_cast<double>(n - 1);
    const double hi = static_cast<double>(n);
    const double I = segment(fine, lo, hi);
    const double err = std::abs(I - segment(coarse, lo, hi));
    if (err > 1e-8 * std::max(1.0, std::abs(I))) {
      throw NumericalError("smoothing_identity_check: quadrature did not converge on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const double scaled_err = (k - 1) * std::abs(F) * err;
    if (scaled_err > worst_err) {
      worst_err = scaled_err;
      r.worst_segment = lo;
    }
    quad_error.add(scaled_err);
    const Complex contribution = static_cast<double>(k - 1) * F * I;
    rhs.add(contribution);
    magnitude.add(std::abs(contribution));
  }
  r.lhs = lhs.value();
  r.rhs = rhs.value();
  r.residual = std::abs(r.lhs - r.rhs);
  r.allowance = quad_error.value() + 64.0 * kEps * magnitude.value();
  return r;
}

NormalizedReport normalized_identity(const WeightedSumSpec& spec, const ExperimentConfig& config,
                                     const LambdaTable& table, const ZeroDataset& zeros) {
  config.validate();
  const DerivedParams dp = derived_params(config);
  WeightedSumSpec at_s0 = spec;
  at_s0.s = ComplexPoint(dp.s0);

  NormalizedReport r;
  r.original = explicit_residual(at_s0, table, zeros);

  const Complex s0 = dp.s0;
  const Complex rho_p(config.beta_p, config.gamma_p);
  const double lw = std::log(spec.W);
  const int k = spec.k;
  const Complex gap = s0 - rho_p;
  r.multiplier = std::exp(gap * lw) * ipow(gap, k);

  r.pole_term = std::exp((1.0 - rho_p) * lw) * ipow(gap / (s0 - 1.0), k);
  ComplexCompensatedSum zsum;
  for (std::size_t i = 0; i < spec.K; ++i) {
    const double g = zeros[i];
    for (const Complex rho : {Complex(0.5, g), Complex(0.5, -g)}) {
      zsum.add(std::exp((rho - rho_p) * lw) * ipow(gap / (s0 - rho), k));
    }
  }
  r.zero_term = zsum.value();
  ComplexCompensatedSum tsum;
  for (int n = 1; n <= spec.M_triv; ++n) {
    tsum.add(std::exp((-2.0 * n - rho_p) * lw) * ipow(gap / (s0 + 2.0 * n), k));
  }
  r.trivial_term = tsum.value();

  r.multiplied.lhs = r.multiplier * r.original.lhs;
  r.multiplied.rhs = r.multiplier * r.original.rhs;
  r.multiplied.residual = std::abs(r.multiplied.lhs - r.multiplied.rhs);
  const double mod = std::abs(r.multiplier);
  r.multiplied.bound = mod * r.original.bound;
  r.multiplied.truncation_allowance = mod * r.original.truncation_allowance;

  const double sigma0 = dp.sigma0;
  const double p = std::pow(2.0, sigma0 - 1.0);
  r.A = 9.0 * (sigma0 - 1.0) * p / (2.0 * (p - 1.0));
  r.tau = exponent_table(config).tau;
  r.right_bound = r.A * std::pow(spec.W, 1.0 - config.beta_p) / std::pow(config.gamma_p, r.tau);
  return r;
}

}  // namespace turanlab
