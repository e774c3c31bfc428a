#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "turanlab/special.hpp"

namespace turanlab {

// Power sums s_nu = z_1^nu + ... + z_L^nu with an exponent window starting
// at D.
class PowerSumSystem {
 public:
  // Throws InvalidArgument for an empty list, non-finite entries or D <= 0.
  // The lemmas need L >= 2; L = 1 is accepted for smoke tests.
  PowerSumSystem(std::vector<Complex> zs, double D);

  std::size_t L() const noexcept { return zs_.size(); }
  double D() const noexcept { return D_; }
  const std::vector<Complex>& zs() const noexcept { return zs_; }
  double max_modulus() const noexcept;
  double min_modulus() const noexcept;

 private:
  std::vector<Complex> zs_;
  double D_;
};

struct WindowMax {
  double value = 0.0;
  long nu = 0;  // first exponent attaining the maximum
};

// max over integer nu in [nu_lo, nu_hi] of |sum z^nu|. Throws NumericalError
// when some |z|^nu leaves the double range (normalize the system first).
WindowMax brute_max_window(const std::vector<Complex>& zs, long nu_lo, long nu_hi);

// nu in [ceil(D), ceil(D) + span]. Pre: span >= 1.
double brute_max(const PowerSumSystem& sys, int span);

// Integer nu in [D, D + L]: the lemma window restricted to integers.
WindowMax brute_max_lemma(const PowerSumSystem& sys);

// M^D (M L / (e (M+1) (D+L)))^L with M = min |z|. Pre: D >= 1. Returns 0
// when M == 0.
double turan_first_bound(const PowerSumSystem& sys);

// (L / (16 e^2 (D+L)))^L. Pre: max |z| >= 1, D >= L/40.
double turan_second_bound(const PowerSumSystem& sys);

struct CartanResult {
  double r = 0.0;
  double sampled_min = 0.0;  // min over the angular samples of |prod (w - z)|
  double target = 0.0;       // U^L
  std::size_t samples = 0;
  double subset_min_ratio = 0.0;  // min over checked subsets of product / (U/2)^L
  bool subsets_ok = false;
};

// Radius r in [1 - 4eU, 1] (intersected with `bracket` when given) whose
// circle keeps |prod (w - z_l)| >= U^L on >= 4096 L sampled angles; 257
// scanned radii, then golden-section refinement. Also checks 100 random index
// subsets against (U/2)^L. Pre: |z| <= 1, 0 < U < 1/(4e).
CartanResult cartan_disc_radius(const std::vector<Complex>& zs, double U,
                                std::optional<std::pair<double, double>> bracket = std::nullopt,
                                std::uint64_t seed = 1);

struct NewtonResult {
  std::vector<Complex> b;
  std::size_t nodes = 0;      // trapezoid nodes of the accepted estimate
  double last_change = 0.0;   // max |b_j| change in the final doubling
  double bound = 0.0;         // r^{-D} (2/U)^L
};

// Newton coefficients of the degree l-1 polynomial Q with
// Q(z_j) = 1/(z_j^{D+1} P(z_j)), j <= l, as divided differences
//   b_j = -(1/2 pi i) int_{|z|=r} dz / (z^{D+1} P(z) prod_{k<=j+1} (z - z_k)).
// P is given by monomial coefficients, highest degree first. Pre: |z_j| > r,
// quad_nodes >= 64 (D + L); doubles until successive estimates agree to 1e-12
// relative to max(1, max |b_j|).
NewtonResult newton_coeffs(const std::vector<Complex>& zs_head, const std::vector<Complex>& P, long D,
                           double r, std::size_t quad_nodes, double U, std::size_t L);

// c_j = sum_{m=j}^{l-1} b_m (-1)^{m-j} e_{m-j}(z_1, ..., z_m).
std::vector<Complex> monomial_from_newton(const std::vector<Complex>& b, const std::vector<Complex>& zs);

struct InterpolationResult {
  std::size_t l = 0;
  long D = 0;
  std::vector<Complex> a;  // P(w) = sum a_j w^{L-l-j}
  std::vector<Complex> b;  // Newton coefficients of Q
  std::vector<Complex> c;  // Q(w) = sum c_j w^j
  std::vector<Complex> d;  // R(w) = sum d_i w^{D+1+i}, i = 0..L-1
  double r = 0.0;
  double U = 0.0;
  double quad_r = 0.0;  // circle the Newton integrals are evaluated on
  std::size_t newton_nodes = 0;
  double newton_change = 0.0;  // max |b_j| change under the last node doubling
  double interpolation_error = 0.0;  // max_j |R(z_j) - [j <= l]|
  std::size_t worst_point = 0;
  double a_ratio = 0.0;    // max |a_j| / binom(L-l, j)
  double b_bound = 0.0;    // r^{-D} (2/U)^L
  double b_ratio = 0.0;    // max |b_j| / b_bound
  double c_ratio = 0.0;    // max |c_j| / (binom(l, j+1) (1-4eU)^{-D} (2/U)^L)
  double d_sum = 0.0;      // sum |d_i|
  double d_bound = 0.0;    // (1-4eU)^{-D} (4/U)^L
  bool bounds_hold() const noexcept {
    return a_ratio <= 1.0 + 1e-12 && b_ratio <= 1.0 && c_ratio <= 1.0 && d_sum <= d_bound;
  }
};

// R(w) = w^{D+1} P(w) Q(w) for the split z_1..z_l outside |w| = r and
// z_{l+1}..z_L inside. D must be an integer, entries pairwise >= 1e-8 apart.
// Without r, the Cartan radius is searched between the two groups. Throws
// InvalidArgument on ordering violations and NumericalError (naming the
// worst point) when R misses the interpolation values by more than 1e-9.
InterpolationResult build_R(const PowerSumSystem& sys, std::size_t l, double U,
                            std::optional<double> r = std::nullopt);

enum class CertificateCase { I, II };

struct CertificateReport {
  std::size_t L = 0;
  double D_input = 0.0;
  long D = 0;                 // floor of the input D
  double lambda = 0.0;
  double U = 0.0;             // 1 / (4 e (1 + lambda))
  double scale = 1.0;         // M0 = max |z| of the input
  std::size_t perturbed = 0;  // entries moved to separate duplicates
  double r = 0.0;
  CertificateCase which = CertificateCase::I;
  std::size_t l = 0;
  double certified = 0.0;     // case bound for the normalized system
  double constructive = 0.0;  // 1 / sum |d_i| in case II, else 0
  double final_bound = 0.0;   // (L / (16 e^2 (D+L)))^L at the input D
  double brute_max = 0.0;     // max over nu in [D+1, D+L] of the normalized system
  double brute_max_unperturbed = 0.0;  // same window before separating duplicates
  std::uint64_t seed = 0;
  std::optional<InterpolationResult> interpolation;

  bool brute_ge_certified() const noexcept { return brute_max >= certified; }
  bool brute_ge_final() const noexcept { return brute_max >= final_bound; }
  bool certified_ge_final() const noexcept { return certified >= final_bound; }
  double margin() const noexcept { return brute_max - certified; }
  bool valid() const noexcept { return brute_ge_certified() && brute_ge_final(); }
};

// Normalizes by max |z|, floors D, separates duplicates by rotating the j-th
// copy through j * 1e-7 / |z| radians, picks the Cartan radius for
// U = 1/(4e(1+lambda)) and certifies the matching case. Pre: max |z| >= 1,
// lambda >= 1/40.
CertificateReport second_lemma_certificate(const PowerSumSystem& sys, double lambda,
                                           std::uint64_t seed = 1);

}  // namespace turanlab
