#include "turanlab/power_sum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "turanlab/error.hpp"

namespace turanlab {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kSeparation = 1e-8;
// max |z| >= 1 is accepted up to rounding in |z|.
constexpr double kUnitSlack = 1e-12;

std::string sci(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << v;
  return out.str();
}

double ratio_or_zero(double x, double bound) { return bound > 0 ? x / bound : 0.0; }

Complex int_power(Complex z, long n) {
  Complex result = 1.0;
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// Highest-degree-first Horner.
Complex horner_desc(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc = 0.0;
  for (const Complex c : coeffs) acc = acc * z + c;
  return acc;
}

double min_pairwise_distance(const std::vector<Complex>& zs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = i + 1; j < zs.size(); ++j) best = std::min(best, std::abs(zs[i] - zs[j]));
  }
  return best;
}

void require_disc_parameter(double U) {
  if (!(U > 0.0 && U < 1.0 / (4.0 * kE))) {
    throw InvalidArgument("U must lie in (0, 1/(4e)), got " + std::to_string(U));
  }
}

std::vector<Complex> unit_circle(std::size_t samples) {
  std::vector<Complex> unit(samples);
  for (std::size_t m = 0; m < samples; ++m) {
    unit[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples));
  }
  return unit;
}

// min over the angular samples of sum_{i in idx} log |r e^{i theta} - z_i|.
// Up to 16 squared moduli are multiplied directly; longer products are
// accumulated in logarithms block by block.
double log_min_on_circle(const std::vector<Complex>& zs, const std::vector<std::size_t>& idx, double r,
                         const std::vector<Complex>& unit) {
  constexpr std::size_t kBlock = 16;
  if (idx.size() <= kBlock) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex u : unit) {
      const Complex w = r * u;
      double prod = 1.0;
      for (const std::size_t i : idx) prod *= std::norm(w - zs[i]);
      best = std::min(best, prod);
    }
    return 0.5 * std::log(best);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Complex u : unit) {
    const Complex w = r * u;
    double acc = 0.0;
    double prod = 1.0;
    std::size_t n = 0;
    for (const std::size_t i : idx) {
      prod *= std::norm(w - zs[i]);
      if (++n % kBlock == 0) {
        acc += std::log(prod);
        prod = 1.0;
      }
    }
    acc += std::log(prod);
    best = std::min(best, acc);
  }
  return 0.5 * best;
}

#if defined(__SIZEOF_FLOAT128__)
using WideReal = __float128;
#else
using WideReal = long double;
#endif
using ComplexWide = std::complex<WideReal>;

template <class To, class From>
std::vector<To> convert(const std::vector<From>& v) {
  std::vector<To> out;
  out.reserve(v.size());
  for (const From x : v) {
    out.emplace_back(static_cast<typename To::value_type>(x.real()), static_cast<typename To::value_type>(x.imag()));
  }
  return out;
}

struct NewtonExtended {
  std::vector<ComplexWide> b;
  std::size_t nodes = 0;
  double last_change = 0.0;
};

double wide_abs(ComplexWide z) {
  return std::hypot(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

ComplexWide wide_pow(ComplexWide base, std::uint64_t e) {
  ComplexWide out(1);
  for (; e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

// exp(2 pi i / n) to working precision: the long double value polished by
// Newton steps on w^n = 1.
ComplexWide root_of_unity(std::size_t n) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
  ComplexWide w(static_cast<WideReal>(std::cos(angle)), static_cast<WideReal>(std::sin(angle)));
  for (int it = 0; it < 2; ++it) {
    const ComplexWide p = wide_pow(w, n);
    w -= (p - ComplexWide(1)) * w / (static_cast<WideReal>(n) * p);
  }
  return w;
}

// Trapezoid estimates of the Newton contour integrals with node doubling.
// The integrand is of size r^{-D} while R is checked to 1e-9 after heavy
// cancellation, so everything runs in the wide type.
NewtonExtended newton_extended(const std::vector<ComplexWide>& head, const std::vector<ComplexWide>& P, long D,
                               double r, std::size_t quad_nodes, std::size_t L) {
  if (head.empty()) throw InvalidArgument("newton_coeffs requires at least one interpolation point");
  if (P.empty()) throw InvalidArgument("newton_coeffs requires a nonzero polynomial P");
  if (D < 0) throw InvalidArgument("newton_coeffs requires D >= 0");
  if (!(r > 0)) throw InvalidArgument("newton_coeffs requires r > 0");
  for (const ComplexWide z : head) {
    if (!(wide_abs(z) > r)) throw InvalidArgument("newton_coeffs requires every |z_j| > r");
  }
  const auto min_nodes = static_cast<std::size_t>(64 * (D + static_cast<long>(L)));
  if (quad_nodes < min_nodes) {
    throw InvalidArgument("newton_coeffs requires quad_nodes >= 64 (D + L) = " + std::to_string(min_nodes));
  }
  const std::size_t l = head.size();
  const auto rw = static_cast<WideReal>(r);
  const ComplexWide r_D = wide_pow(ComplexWide(rw), static_cast<std::uint64_t>(D));
  // Adds the integrand at the nodes r u0 step^m, m < count, to sums.
  auto accumulate = [&](std::vector<ComplexWide>& sums, std::size_t count, ComplexWide u0, ComplexWide step) {
    const ComplexWide step_D = wide_pow(step, static_cast<std::uint64_t>(D));
    ComplexWide u = u0;
    ComplexWide u_D = wide_pow(u0, static_cast<std::uint64_t>(D));
    for (std::size_t m = 0; m < count; ++m) {
      const ComplexWide z = rw * u;
      ComplexWide p(0);
      for (const ComplexWide c : P) p = p * z + c;
      ComplexWide denom = r_D * u_D * p;
      for (std::size_t j = 0; j < l; ++j) {
        denom *= z - head[j];
        const WideReal nd = denom.real() * denom.real() + denom.imag() * denom.imag();
        sums[j] += ComplexWide(denom.real() / nd, -denom.imag() / nd);
      }
      u *= step;
      u_D *= step_D;
    }
  };
  auto normalized = [&](const std::vector<ComplexWide>& sums, std::size_t n) {
    std::vector<ComplexWide> out(sums);
    for (auto& v : out) v /= -static_cast<WideReal>(n);
    return out;
  };

  // Doubling keeps the old nodes and adds the midpoints between them.
  std::size_t n = std::max<std::size_t>(quad_nodes, 8);
  std::vector<ComplexWide> raw(l, ComplexWide(0));
  ComplexWide step = root_of_unity(n);
  accumulate(raw, n, ComplexWide(1), step);
  std::vector<ComplexWide> prev = normalized(raw, n);
  for (int doubling = 0; doubling < 12; ++doubling) {
    const ComplexWide half = root_of_unity(2 * n);
    accumulate(raw, n, half, step);
    step = half;
    n *= 2;
    std::vector<ComplexWide> next = normalized(raw, n);
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < l; ++j) {
      change = std::max(change, wide_abs(next[j] - prev[j]));
      scale = std::max(scale, wide_abs(next[j]));
    }
    if (change <= 1e-12 * scale) return {std::move(next), n, change};
    prev = std::move(next);
  }
  throw NumericalError("newton_coeffs: trapezoid estimates still disagree after " + std::to_string(n) +
                       " nodes");
}

// c_j = sum_{m >= j} b_m (-1)^{m-j} e_{m-j}(z_1, ..., z_m).
template <class C>
std::vector<C> newton_to_monomial(const std::vector<C>& b, const std::vector<C>& zs) {
  const std::size_t l = b.size();
  std::vector<C> c(l, C(0));
  // e[k] holds e_k(z_1, ..., z_m) for the current m.
  std::vector<C> e(l, C(0));
  e[0] = C(1);
  for (std::size_t m = 0; m < l; ++m) {
    if (m > 0) {
      for (std::size_t k = m; k >= 1; --k) e[k] += zs[m - 1] * e[k - 1];
    }
    for (std::size_t j = 0; j <= m; ++j) {
      const C term = b[m] * e[m - j];
      c[j] += ((m - j) % 2 == 0) ? term : -term;
    }
  }
  return c;
}

// The Newton integrals take the same value on every circle between the
// inner and outer points. Quadrature runs on the circle where the smallest
// modulus of w^D P(w) prod (w - z_k) is largest, which keeps the integrand,
// and with it the rounding noise, as small as possible.
double quadrature_radius(const std::vector<Complex>& head, const std::vector<Complex>& P, long D,
                         double inner, double outer) {
  constexpr int kRadii = 65;
  const std::vector<Complex> unit = unit_circle(512);
  double best_r = 0.5 * (inner + outer);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kRadii; ++i) {
    const double r = inner + (outer - inner) * (i + 0.5) / kRadii;
    double worst = std::numeric_limits<double>::infinity();
    for (const Complex u : unit) {
      const Complex w = r * u;
      double v = static_cast<double>(D) * std::log(r) + std::log(std::abs(horner_desc(P, w)));
      for (const Complex z : head) v += std::log(std::abs(w - z));
      worst = std::min(worst, v);
    }
    if (worst > best) {
      best = worst;
      best_r = r;
    }
  }
  return best_r;
}

InterpolationResult build_R_impl(const std::vector<Complex>& zs, long D, std::size_t l, double U,
                                 std::optional<double> given_r) {
  const std::size_t L = zs.size();
  require_disc_parameter(U);
  if (D < 0) throw InvalidArgument("build_R requires D >= 0");
  if (l < 1 || l > L) {
    throw InvalidArgument("build_R requires 1 <= l <= L, got l = " + std::to_string(l));
  }
  if (L >= 2 && min_pairwise_distance(zs) < kSeparation) {
    throw InvalidArgument("build_R requires pairwise distinct points (distance >= 1e-8)");
  }
  double outer_min = std::numeric_limits<double>::infinity();
  double inner_max = 0.0;
  for (std::size_t j = 0; j < L; ++j) {
    if (std::abs(zs[j]) > 1.0 + 1e-12) throw InvalidArgument("build_R requires |z| <= 1");
    if (j < l) outer_min = std::min(outer_min, std::abs(zs[j]));
    else inner_max = std::max(inner_max, std::abs(zs[j]));
  }
  double r = 0.0;
  if (given_r) {
    r = *given_r;
    if (!(outer_min > r && r > inner_max)) {
      throw InvalidArgument("build_R ordering violated: need |z_1..z_l| > r > |z_{l+1}..z_L| with r = " +
                            std::to_string(r));
    }
  } else {
    if (!(outer_min > inner_max)) {
      throw InvalidArgument("build_R ordering violated: min |z_1..z_l| = " + std::to_string(outer_min) +
                            " does not exceed max |z_{l+1}..z_L| = " + std::to_string(inner_max));
    }
    r = cartan_disc_radius(zs, U, std::make_pair(inner_max, outer_min)).r;
  }

  InterpolationResult res;
  res.l = l;
  res.D = D;
  res.r = r;
  res.U = U;

  // The Newton integrals and the basis changes run in quadruple precision:
  // R has coefficients of size up to (4/U)^L while it is checked to 1e-9 on
  // |z| <= 1. a, b, c and d are exported rounded to double; the
  // interpolation check uses the wide values.
  const std::vector<ComplexWide> z_w = convert<ComplexWide>(zs);
  std::vector<ComplexWide> a_w{ComplexWide(1)};
  for (std::size_t j = l; j < L; ++j) {
    std::vector<ComplexWide> next(a_w.size() + 1, ComplexWide(0));
    for (std::size_t i = 0; i < a_w.size(); ++i) {
      next[i] += a_w[i];
      next[i + 1] -= z_w[j] * a_w[i];
    }
    a_w = std::move(next);
  }
  res.a = convert<Complex>(a_w);

  const std::vector<Complex> head(zs.begin(), zs.begin() + static_cast<std::ptrdiff_t>(l));
  const auto nodes = static_cast<std::size_t>(64 * (D + static_cast<long>(L)));
  res.quad_r = quadrature_radius(head, res.a, D, inner_max, outer_min);
  const NewtonExtended newton =
      newton_extended(convert<ComplexWide>(head), a_w, D, res.quad_r, nodes, L);
  res.b = convert<Complex>(newton.b);
  res.b_bound = std::pow(r, -static_cast<double>(D)) * std::pow(2.0 / U, static_cast<double>(L));
  res.newton_nodes = newton.nodes;
  res.newton_change = newton.last_change;
  const std::vector<ComplexWide> head_w(z_w.begin(), z_w.begin() + static_cast<std::ptrdiff_t>(l));
  const std::vector<ComplexWide> c_w = newton_to_monomial(newton.b, head_w);
  res.c = convert<Complex>(c_w);

  // P ascending times Q ascending.
  std::vector<ComplexWide> d_w(L, ComplexWide(0));
  for (std::size_t i = 0; i < a_w.size(); ++i) {
    for (std::size_t j = 0; j < c_w.size(); ++j) d_w[i + j] += a_w[a_w.size() - 1 - i] * c_w[j];
  }
  res.d = convert<Complex>(d_w);

  for (std::size_t j = 0; j < L; ++j) {
    ComplexWide acc(0);
    for (std::size_t i = L; i-- > 0;) acc = acc * z_w[j] + d_w[i];
    ComplexWide power(1);
    for (long q = 0; q <= D; ++q) power *= z_w[j];
    const ComplexWide miss = power * acc - ComplexWide(j < l ? 1 : 0);
    const double err = std::hypot(static_cast<double>(miss.real()), static_cast<double>(miss.imag()));
    if (err > res.interpolation_error || j == 0) {
      res.interpolation_error = err;
      res.worst_point = j;
    }
  }
  if (res.interpolation_error > 1e-9) {
    throw NumericalError("build_R: R misses its interpolation value by " +
                         sci(res.interpolation_error) + " at point " +
                         std::to_string(res.worst_point + 1));
  }

  for (std::size_t j = 0; j < res.a.size(); ++j) {
    res.a_ratio = std::max(res.a_ratio, std::abs(res.a[j]) / binomial(static_cast<int>(L - l), static_cast<int>(j)));
  }
  for (const Complex bj : res.b) res.b_ratio = std::max(res.b_ratio, ratio_or_zero(std::abs(bj), res.b_bound));
  const double m = 1.0 - 4.0 * kE * U;
  const double base_bound = std::pow(m, -static_cast<double>(D)) * std::pow(2.0 / U, static_cast<double>(L));
  for (std::size_t j = 0; j < res.c.size(); ++j) {
    const double bound = binomial(static_cast<int>(l), static_cast<int>(j + 1)) * base_bound;
    res.c_ratio = std::max(res.c_ratio, std::abs(res.c[j]) / bound);
  }
  for (const Complex dj : res.d) res.d_sum += std::abs(dj);
  res.d_bound = std::pow(m, -static_cast<double>(D)) * std::pow(4.0 / U, static_cast<double>(L));
  return res;
}

}  // namespace

PowerSumSystem::PowerSumSystem(std::vector<Complex> zs, double D) : zs_(std::move(zs)), D_(D) {
  if (zs_.empty()) throw InvalidArgument("PowerSumSystem requires at least one point");
  for (const Complex z : zs_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("PowerSumSystem entries must be finite");
    }
  }
  if (!(D_ > 0.0) || !std::isfinite(D_)) throw InvalidArgument("PowerSumSystem requires finite D > 0");
}

double PowerSumSystem::max_modulus() const noexcept {
  double m = 0.0;
  for (const Complex z : zs_) m = std::max(m, std::abs(z));
  return m;
}

double PowerSumSystem::min_modulus() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const Complex z : zs_) m = std::min(m, std::abs(z));
  return m;
}

WindowMax brute_max_window(const std::vector<Complex>& zs, long nu_lo, long nu_hi) {
  if (nu_lo < 0 || nu_hi < nu_lo) throw InvalidArgument("brute_max_window requires 0 <= nu_lo <= nu_hi");
  for (const Complex z : zs) {
    const double lz = std::log(std::abs(z));
    if (static_cast<double>(nu_hi) * lz > 700.0) {
      throw NumericalError("power sum overflows at nu = " + std::to_string(nu_hi) +
                           "; divide the system by its largest modulus first");
    }
  }
  std::vector<Complex> powers(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) powers[i] = int_power(zs[i], nu_lo);
  WindowMax best;
  best.nu = nu_lo;
  best.value = -1.0;
  for (long nu = nu_lo; nu <= nu_hi; ++nu) {
    Complex sum = 0.0;
    for (const Complex p : powers) sum += p;
    if (std::abs(sum) > best.value) {
      best.value = std::abs(sum);
      best.nu = nu;
    }
    for (std::size_t i = 0; i < zs.size(); ++i) {
      powers[i] *= zs[i];
      // Refresh from scratch now and then so rounding cannot drift.
      if ((nu - nu_lo) % 64 == 63) powers[i] = int_power(zs[i], nu + 1);
    }
  }
  return best;
}

double brute_max(const PowerSumSystem& sys, int span) {
  if (span < 1) throw InvalidArgument("brute_max requires span >= 1");
  const auto lo = static_cast<long>(std::ceil(sys.D()));
  return brute_max_window(sys.zs(), lo, lo + span).value;
}

WindowMax brute_max_lemma(const PowerSumSystem& sys) {
  const auto lo = static_cast<long>(std::ceil(sys.D()));
  const auto hi = static_cast<long>(std::floor(sys.D() + static_cast<double>(sys.L())));
  return brute_max_window(sys.zs(), lo, hi);
}

double turan_first_bound(const PowerSumSystem& sys) {
  if (!(sys.D() >= 1.0)) throw InvalidArgument("turan_first_bound requires D >= 1");
  const double M = sys.min_modulus();
  if (M == 0.0) return 0.0;
  const double L = static_cast<double>(sys.L());
  const double D = sys.D();
  return std::pow(M, D) * std::pow(M * L / (kE * (M + 1.0) * (D + L)), L);
}

double turan_second_bound(const PowerSumSystem& sys) {
  const double L = static_cast<double>(sys.L());
  if (!(sys.max_modulus() >= 1.0 - kUnitSlack)) {
    throw DomainError("turan_second_bound requires max |z| >= 1, got " + std::to_string(sys.max_modulus()));
  }
  if (!(sys.D() >= L / 40.0)) {
    throw DomainError("turan_second_bound requires D >= L/40, got D = " + std::to_string(sys.D()));
  }
  return std::pow(L / (16.0 * kE * kE * (sys.D() + L)), L);
}

CartanResult cartan_disc_radius(const std::vector<Complex>& zs, double U,
                                std::optional<std::pair<double, double>> bracket, std::uint64_t seed) {
  require_disc_parameter(U);
  if (zs.empty()) throw InvalidArgument("cartan_disc_radius requires at least one point");
  for (const Complex z : zs) {
    if (std::abs(z) > 1.0 + 1e-12) throw InvalidArgument("cartan_disc_radius requires |z| <= 1");
  }
  double lo = 1.0 - 4.0 * kE * U;
  double hi = 1.0;
  if (bracket) {
    lo = std::max(lo, bracket->first);
    hi = std::min(hi, bracket->second);
  }
  if (!(lo < hi)) {
    throw DomainError("cartan_disc_radius: radius interval [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] is empty");
  }
  const std::size_t L = zs.size();
  const std::size_t samples = 4096 * L;
  const std::vector<Complex> dense = unit_circle(samples);
  const std::vector<Complex> coarse = unit_circle(256 * L);
  std::vector<std::size_t> all(L);
  for (std::size_t i = 0; i < L; ++i) all[i] = i;

  auto excluded = [&](double r) {
    for (const Complex z : zs) {
      if (std::abs(std::abs(z) - r) < 1e-9) return true;
    }
    return false;
  };
  // Scan and refine on a coarse angular grid, then verify on the dense one.
  constexpr int kCandidates = 257;
  const double step = (hi - lo) / kCandidates;
  std::vector<std::pair<double, double>> scanned;  // (coarse value, r)
  for (int i = 0; i < kCandidates; ++i) {
    const double r = lo + (i + 0.5) * step;
    if (excluded(r)) continue;
    scanned.emplace_back(log_min_on_circle(zs, all, r, coarse), r);
  }
  if (scanned.empty()) throw NumericalError("cartan_disc_radius: every candidate radius is excluded");
  std::sort(scanned.begin(), scanned.end(), std::greater<>());
  double best_r = scanned.front().second;
  double best_coarse = scanned.front().first;

  double a = std::max(lo, best_r - step);
  double b = std::min(hi, best_r + step);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = log_min_on_circle(zs, all, x1, coarse);
  double f2 = log_min_on_circle(zs, all, x2, coarse);
  for (int it = 0; it < 40 && b - a > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = log_min_on_circle(zs, all, x2, coarse);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = log_min_on_circle(zs, all, x1, coarse);
    }
  }
  for (const auto& [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (f > best_coarse && !excluded(x)) {
      best_coarse = f;
      best_r = x;
    }
  }

  const double log_target = static_cast<double>(L) * std::log(U);
  double best_val = log_min_on_circle(zs, all, best_r, dense);
  for (std::size_t i = 0; best_val < log_target && i < std::min<std::size_t>(scanned.size(), 16); ++i) {
    const double v = log_min_on_circle(zs, all, scanned[i].second, dense);
    if (v > best_val) {
      best_val = v;
      best_r = scanned[i].second;
    }
  }

  CartanResult res;
  res.r = best_r;
  res.samples = samples;
  res.sampled_min = std::exp(best_val);
  res.target = std::pow(U, static_cast<double>(L));
  if (best_val < log_target) {
    throw NumericalError("cartan_disc_radius: best sampled minimum " + std::to_string(res.sampled_min) +
                         " at r = " + std::to_string(best_r) + " is below U^L = " +
                         std::to_string(res.target) + "; sampling may be too coarse");
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const double subset_target = static_cast<double>(L) * std::log(U / 2.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < L; ++i) {
      if (coin(rng)) idx.push_back(i);
    }
    if (idx.empty()) idx.push_back(static_cast<std::size_t>(trial) % L);
    worst = std::min(worst, log_min_on_circle(zs, idx, best_r, coarse) - subset_target);
  }
  res.subset_min_ratio = std::exp(std::min(worst, 700.0));
  res.subsets_ok = worst >= 0.0;
  return res;
}

NewtonResult newton_coeffs(const std::vector<Complex>& zs_head, const std::vector<Complex>& P, long D,
                           double r, std::size_t quad_nodes, double U, std::size_t L) {
  const NewtonExtended ext =
      newton_extended(convert<ComplexWide>(zs_head), convert<ComplexWide>(P), D, r, quad_nodes, L);
  NewtonResult res;
  res.b = convert<Complex>(ext.b);
  res.nodes = ext.nodes;
  res.last_change = ext.last_change;
  res.bound = std::pow(r, -static_cast<double>(D)) * std::pow(2.0 / U, static_cast<double>(L));
  return res;
}

std::vector<Complex> monomial_from_newton(const std::vector<Complex>& b, const std::vector<Complex>& zs) {
  if (zs.size() + 1 < b.size()) throw InvalidArgument("monomial_from_newton needs l - 1 nodes");
  return newton_to_monomial(b, zs);
}

InterpolationResult build_R(const PowerSumSystem& sys, std::size_t l, double U, std::optional<double> r) {
  const double D = sys.D();
  if (D != std::floor(D)) throw InvalidArgument("build_R requires an integer D");
  return build_R_impl(sys.zs(), static_cast<long>(D), l, U, r);
}

CertificateReport second_lemma_certificate(const PowerSumSystem& sys, double lambda, std::uint64_t seed) {
  if (!(lambda >= 1.0 / 40.0)) throw InvalidArgument("second_lemma_certificate requires lambda >= 1/40");
  const double M0 = sys.max_modulus();
  if (!(M0 >= 1.0 - kUnitSlack)) {
    throw DomainError("second_lemma_certificate requires max |z| >= 1, got " + std::to_string(M0));
  }
  CertificateReport rep;
  rep.L = sys.L();
  rep.D_input = sys.D();
  rep.D = static_cast<long>(std::floor(sys.D()));
  rep.lambda = lambda;
  rep.U = 1.0 / (4.0 * kE * (1.0 + lambda));
  rep.scale = M0;
  rep.seed = seed;
  const double L = static_cast<double>(rep.L);

  std::vector<Complex> zs = sys.zs();
  for (auto& z : zs) z /= M0;
  const std::vector<Complex> normalized = zs;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    std::size_t copies = 0;
    for (std::size_t k = 0; k < i; ++k) {
      if (std::abs(normalized[k] - normalized[i]) < kSeparation) ++copies;
    }
    if (copies == 0) continue;
    const double shift = static_cast<double>(copies) * 1e-7;
    const double mod = std::abs(zs[i]);
    zs[i] = mod > 0.0 ? zs[i] * std::polar(1.0, shift / mod) : Complex(shift, 0.0);
    ++rep.perturbed;
  }

  rep.brute_max = brute_max_window(zs, rep.D + 1, rep.D + static_cast<long>(rep.L)).value;
  rep.brute_max_unperturbed = brute_max_window(normalized, rep.D + 1, rep.D + static_cast<long>(rep.L)).value;
  rep.final_bound = std::pow(L / (16.0 * kE * kE * (rep.D_input + L)), L);

  const double m = 1.0 - 4.0 * kE * rep.U;
  const CartanResult cartan = cartan_disc_radius(zs, rep.U, std::make_pair(m, 1.0 - 1e-9), seed);
  rep.r = cartan.r;

  std::vector<Complex> ordered = zs;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  rep.l = static_cast<std::size_t>(
      std::count_if(ordered.begin(), ordered.end(), [&](Complex z) { return std::abs(z) > rep.r; }));
  const double Dd = static_cast<double>(rep.D);
  if (rep.l == rep.L) {
    rep.which = CertificateCase::I;
    rep.certified = std::pow(m, Dd) * std::pow(m * L / (2.0 * kE * (1.0 - 2.0 * kE * rep.U) * (Dd + L)), L);
  } else {
    rep.which = CertificateCase::II;
    rep.interpolation = build_R_impl(ordered, rep.D, rep.l, rep.U, rep.r);
    rep.certified = std::pow(m, Dd) * std::pow(rep.U / 4.0, L);
    rep.constructive = 1.0 / rep.interpolation->d_sum;
  }
  return rep;
}

}  // namespace turanlab
