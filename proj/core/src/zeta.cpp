#include "turanlab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "turanlab/error.hpp"
#include "turanlab/summation.hpp"
#include "turanlab/zeros.hpp"

namespace turanlab {

ComplexPoint::ComplexPoint(double sigma, double t) : sigma_(sigma), t_(t) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) {
    throw InvalidArgument("ComplexPoint components must be finite");
  }
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_half_plane(ComplexPoint s, double bound, const char* what) {
  if (!(s.sigma() > bound)) {
    throw DomainError(std::string(what) + ": requires sigma > " + std::to_string(bound) +
                      ", got sigma = " + std::to_string(s.sigma()));
  }
}

// Pochhammer magnitude |(s+1)(s+2)...(s+r)|.
double rising_abs(Complex s, int r) {
  double p = 1.0;
  for (int i = 1; i <= r; ++i) p *= std::abs(s + static_cast<double>(i));
  return p;
}

Complex rising(Complex s, int r) {
  Complex p = 1.0;
  for (int i = 1; i <= r; ++i) p *= s + static_cast<double>(i);
  return p;
}

// int_V^inf log^m(v) v^{-a-1} dv for real a > 0, m in {0, 1}.
double log_power_integral(double V, double a, int m) {
  const double base = std::pow(V, -a);
  if (m == 0) return base / a;
  return base * (std::log(V) / a + 1.0 / (a * a));
}

// r-th derivative of f(v) = log^m(v) v^{-s-1} at v, m in {0, 1}.
Complex log_power_derivative(Complex s, int m, int r, double v) {
  // g^{(q)}(v) = (-1)^q (s+1)_q v^{-s-1-q}
  auto g = [&](int q) {
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    return sign * rising(s, q) * std::exp(-(s + 1.0 + static_cast<double>(q)) * std::log(v));
  };
  if (m == 0) return g(r);
  Complex total = std::log(v) * g(r);
  for (int i = 1; i <= r; ++i) {
    // (log v)^{(i)} = (-1)^{i-1} (i-1)! v^{-i}
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    total += binomial(r, i) * sign * factorial(i - 1) * std::pow(v, -i) * g(r - i);
  }
  return total;
}

// Majorant for int_V^inf |f^{(r)}(v)| dv.
double log_power_derivative_mass(Complex s, int m, int r, double V) {
  const double a = s.real() + static_cast<double>(r);
  if (m == 0) return rising_abs(s, r) * log_power_integral(V, a, 0);
  double mass = rising_abs(s, r) * log_power_integral(V, a, 1);
  for (int i = 1; i <= r; ++i) {
    mass += binomial(r, i) * factorial(i - 1) * rising_abs(s, r - i) * log_power_integral(V, a, 0);
  }
  return mass;
}

struct TailResult {
  Complex value;
  double bound;
};

constexpr int kTailPairs = 10;

// int_V^inf {v} log^m(v) v^{-s-1} dv by Euler-Maclaurin at integer V.
TailResult fractional_tail(Complex s, int m, double V) {
  Complex half;
  if (m == 0) {
    half = std::exp(-s * std::log(V)) / s;
  } else {
    half = std::exp(-s * std::log(V)) * (std::log(V) / s + 1.0 / (s * s));
  }
  Complex value = 0.5 * half;
  for (int j = 1; j <= kTailPairs; ++j) {
    const int k = 2 * j;
    value -= bernoulli(k) / factorial(k) * log_power_derivative(s, m, k - 2, V);
  }
  const int K = 2 * kTailPairs;
  const double bound =
      std::abs(bernoulli(K)) / factorial(K) * log_power_derivative_mass(s, m, K - 1, V);
  return {value, bound};
}

struct SegmentIntegral {
  Complex value;
  double quad_error;
};

// sum_{n=1}^{V-1} int_0^1 w log^m(n+w) (n+w)^{-s-1} dw.
SegmentIntegral segment_sum(Complex s, int m, int V, int quad_nodes) {
  const auto& fine = gauss_legendre(static_cast<std::size_t>(quad_nodes));
  const auto& coarse = gauss_legendre(static_cast<std::size_t>(std::max(2, quad_nodes / 2)));
  const Complex exponent = -(s + 1.0);
  const double freq = std::abs(s + 1.0);
  auto integrand = [&](double n, double w) {
    const double v = n + w;
    const double lv = std::log(v);
    Complex val = w * std::exp(exponent * lv);
    if (m == 1) val *= lv;
    return val;
  };
  auto panel = [&](const GaussLegendreRule& rule, double n, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * integrand(n, mid + half * rule.nodes[i]);
    }
    return acc * half;
  };

  ComplexCompensatedSum total;
  double err = 0.0;
  for (int n = 1; n < V; ++n) {
    const double nd = static_cast<double>(n);
    const double phase = freq * std::log1p(1.0 / nd);
    const int panels = 1 + static_cast<int>(phase / 4.0);
    for (int p = 0; p < panels; ++p) {
      const double a = static_cast<double>(p) / panels;
      const double b = static_cast<double>(p + 1) / panels;
      const Complex hi = panel(fine, nd, a, b);
      const Complex lo = panel(coarse, nd, a, b);
      total.add(hi);
      err += std::abs(hi - lo);
    }
  }
  return {total.value(), err};
}

int tail_cutoff(Complex s) {
  return static_cast<int>(std::ceil(std::max(24.0, std::abs(s) + 2.0 * kTailPairs + 4.0)));
}

// int_1^inf {v} log^m(v) v^{-s-1} dv with its error bound.
SegmentIntegral fractional_integral(Complex s, int m, int quad_nodes) {
  const int V = tail_cutoff(s);
  const SegmentIntegral body = segment_sum(s, m, V, quad_nodes);
  const TailResult tail = fractional_tail(s, m, static_cast<double>(V));
  return {body.value + tail.value, body.quad_error + tail.bound};
}

}  // namespace

EvalResult zeta_dirichlet(ComplexPoint s, double tol, std::int64_t max_terms) {
  require_half_plane(s, 1.0, "zeta_dirichlet");
  if (!(tol > 0)) throw InvalidArgument("zeta_dirichlet: tol must be positive");
  if (max_terms < 1) throw InvalidArgument("zeta_dirichlet: max_terms must be positive");
  const double sigma = s.sigma();
  // N^{1-sigma}/(sigma-1) <= tol  <=>  N >= (tol (sigma-1))^{-1/(sigma-1)}
  const double n_real = std::pow(tol * (sigma - 1.0), -1.0 / (sigma - 1.0));
  std::int64_t N = max_terms;
  if (std::isfinite(n_real) && n_real < static_cast<double>(max_terms)) {
    N = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n_real)));
  }
  const Complex sv = s.value();
  ComplexCompensatedSum acc;
  double magnitude = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const Complex term = std::exp(-sv * ln);
    acc.add(term);
    magnitude += std::abs(term);
  }
  EvalResult out;
  out.value = acc.value();
  out.terms_used = N;
  out.est_error = std::pow(static_cast<double>(N), 1.0 - sigma) / (sigma - 1.0) + 8 * kEps * magnitude;
  return out;
}

EvalResult zeta_integral(ComplexPoint s, int quad_nodes) {
  require_half_plane(s, 0.0, "zeta_integral");
  if (s.sigma() == 1.0 && s.t() == 0.0) throw DomainError("zeta_integral: pole at s = 1");
  if (quad_nodes < 4) throw InvalidArgument("zeta_integral: quad_nodes must be >= 4");
  const Complex sv = s.value();
  const SegmentIntegral I = fractional_integral(sv, 0, quad_nodes);
  EvalResult out;
  out.value = sv / (sv - 1.0) - sv * I.value;
  out.est_error = std::abs(sv) * I.quad_error + 16 * kEps * (std::abs(sv / (sv - 1.0)) + 1.0);
  out.terms_used = tail_cutoff(sv);
  return out;
}

EvalResult zeta_prime_integral(ComplexPoint s, int quad_nodes) {
  require_half_plane(s, 0.0, "zeta_prime_integral");
  if (s.sigma() == 1.0 && s.t() == 0.0) throw DomainError("zeta_prime_integral: pole at s = 1");
  if (quad_nodes < 4) throw InvalidArgument("zeta_prime_integral: quad_nodes must be >= 4");
  const Complex sv = s.value();
  const SegmentIntegral I = fractional_integral(sv, 0, quad_nodes);
  const SegmentIntegral J = fractional_integral(sv, 1, quad_nodes);
  // d/ds [s/(s-1) - s I(s)] with I'(s) = -J(s)
  EvalResult out;
  const Complex pole = 1.0 / ((sv - 1.0) * (sv - 1.0));
  out.value = -pole - I.value + sv * J.value;
  out.est_error = I.quad_error + std::abs(sv) * J.quad_error + 16 * kEps * (std::abs(pole) + 1.0);
  out.terms_used = tail_cutoff(sv);
  return out;
}

EvalResult log_deriv_zeta_series(ComplexPoint s, const LambdaTable& table, double tol) {
  require_half_plane(s, 1.0, "log_deriv_zeta_series");
  if (!(tol > 0)) throw InvalidArgument("log_deriv_zeta_series: tol must be positive");
  const double sigma = s.sigma();
  // Tail via partial summation with psi(u) <= 2u: 2 sigma N^{1-sigma}/(sigma-1).
  const double n_real = std::pow(tol * (sigma - 1.0) / (2.0 * sigma), -1.0 / (sigma - 1.0));
  std::uint64_t N = table.limit();
  if (std::isfinite(n_real) && n_real < static_cast<double>(table.limit())) {
    N = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(n_real)));
  }
  const Complex sv = s.value();
  ComplexCompensatedSum acc;
  double magnitude = 0.0;
  const auto values = table.values();
  for (std::uint64_t n = 2; n <= N; ++n) {
    const double lam = values[n];
    if (lam == 0.0) continue;
    const Complex term = lam * std::exp(-sv * std::log(static_cast<double>(n)));
    acc.add(term);
    magnitude += std::abs(term);
  }
  EvalResult out;
  out.value = acc.value();
  out.terms_used = static_cast<std::int64_t>(N);
  out.est_error = 2.0 * sigma * std::pow(static_cast<double>(N), 1.0 - sigma) / (sigma - 1.0) +
                  8 * kEps * magnitude;
  return out;
}

EvalResult log_deriv_zeta_zeros(ComplexPoint s, const ZeroDataset& zeros, std::size_t K) {
  if (K > zeros.size()) {
    throw InsufficientData("log_deriv_zeta_zeros: K = " + std::to_string(K) + " but dataset has " +
                           std::to_string(zeros.size()) + " ordinates");
  }
  const Complex sv = s.value();
  if (sv == Complex(1.0, 0.0)) throw DomainError("log_deriv_zeta_zeros: pole at s = 1");
  ComplexCompensatedSum pairs;
  Complex last = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    const double g = zeros[i];
    const Complex rho(0.5, g);
    const Complex rho_bar(0.5, -g);
    if (sv == rho || sv == rho_bar) throw DomainError("log_deriv_zeta_zeros: s is a zero");
    last = 1.0 / (sv - rho) + 1.0 / (sv - rho_bar) + 1.0 / rho + 1.0 / rho_bar;
    pairs.add(last);
  }
  const Complex gamma_term = 0.5 * digamma(0.5 * sv + 1.0);
  EvalResult out;
  out.value = 1.0 / (sv - 1.0) - pairs.value() + gamma_term + 1.0 + kEulerGamma / 2.0 -
              std::log(std::numbers::pi) - std::log(2.0);
  out.terms_used = static_cast<std::int64_t>(std::max<std::size_t>(K, 1));
  if (K > 0) {
    // Omitted pairs behave like 2s/gamma^2 against density log(gamma/2pi)/2pi.
    const double gK = zeros[K - 1];
    out.est_error = std::abs(sv) / std::numbers::pi * (std::log(gK / (2 * std::numbers::pi)) + 1.0) / gK;
  } else {
    out.est_error = std::numeric_limits<double>::infinity();
  }
  return out;
}

namespace {

EvalResult cal_Z_direct(ComplexPoint s, ZetaMethod method, const CalZOptions& options) {
  if (method == ZetaMethod::Series) {
    if (options.table == nullptr) throw InvalidArgument("cal_Z: Series method needs a LambdaTable");
    const EvalResult ld = log_deriv_zeta_series(s, *options.table, options.tol);
    const EvalResult z = zeta_dirichlet(s, options.tol);
    return {ld.value - z.value, ld.est_error + z.est_error, std::max(ld.terms_used, z.terms_used)};
  }
  const EvalResult z = zeta_integral(s, options.quad_nodes);
  const EvalResult zp = zeta_prime_integral(s, options.quad_nodes);
  const double mod = std::abs(z.value);
  if (mod == 0.0) throw DomainError("cal_Z: s is a zero of zeta");
  const Complex ld = -zp.value / z.value;
  const double err = zp.est_error / mod + std::abs(zp.value) * z.est_error / (mod * mod) + z.est_error;
  return {ld - z.value, err, std::max(z.terms_used, zp.terms_used)};
}

}  // namespace

EvalResult cal_Z(ComplexPoint s, ZetaMethod method, const CalZOptions& options) {
  if (method != ZetaMethod::Limit) return cal_Z_direct(s, method, options);
  const double h = options.limit_step;
  if (!(h > 0)) throw InvalidArgument("cal_Z: limit_step must be positive");
  auto symmetric = [&](double step) {
    const EvalResult up = cal_Z_direct(ComplexPoint(s.sigma() + step, s.t()), ZetaMethod::Integral, options);
    const EvalResult dn = cal_Z_direct(ComplexPoint(s.sigma() - step, s.t()), ZetaMethod::Integral, options);
    return EvalResult{0.5 * (up.value + dn.value), 0.5 * (up.est_error + dn.est_error),
                      up.terms_used + dn.terms_used};
  };
  const EvalResult coarse = symmetric(h);
  const EvalResult fine = symmetric(h / 2);
  EvalResult out;
  out.value = (4.0 * fine.value - coarse.value) / 3.0;
  out.est_error = std::abs(fine.value - coarse.value) / 3.0 + (4.0 * fine.est_error + coarse.est_error) / 3.0;
  out.terms_used = coarse.terms_used + fine.terms_used;
  return out;
}

double riemann_siegel_theta(double t) {
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(std::numbers::pi);
}

double hardy_z(double t, int quad_nodes) {
  const EvalResult z = zeta_integral(ComplexPoint(0.5, t), quad_nodes);
  const Complex rotated = std::polar(1.0, riemann_siegel_theta(t)) * z.value;
  return rotated.real();
}

}  // namespace turanlab
