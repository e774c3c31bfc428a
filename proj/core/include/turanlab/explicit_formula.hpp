#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "turanlab/arith.hpp"
#include "turanlab/zeros.hpp"
#include "turanlab/zeta.hpp"

namespace turanlab {

struct ExperimentConfig;

// Parameters of the weighted prime sum
//   sum_{n > W} Lambda(n) n^{-s} log^{k-1}(n/W)
// and of the truncations used on each side of its zero expansion.
struct WeightedSumSpec {
  double W = 1000.5;
  int k = 4;
  ComplexPoint s{2.0, 30.0};
  std::uint64_t N_max = 1'000'000;  // prime side: n <= N_max
  std::size_t K = 10'000;           // zero side: first K conjugate pairs
  int M_triv = 50;                  // trivial zeros -2, ..., -2 M_triv

  // Full contract for the identity: dist(W, Z) >= 0.25, k >= 4, sigma > 1,
  // N_max >= 4W. Throws InvalidArgument naming the first failure.
  void validate() const;
};

struct PrimeSideResult {
  Complex value;
  double tail_bound = 0.0;  // sum over n > N_max, via Lambda(n) <= log n
  double magnitude = 0.0;   // sum of |terms|, for rounding allowances
};

// Pre: sigma > 1, k >= 1, W > 0, N_max >= 4W, N_max <= table.limit().
PrimeSideResult prime_side(const WeightedSumSpec& spec, const LambdaTable& table);

struct ZeroSideResult {
  Complex value;         // (k-1)! [pole - zeros - trivial]
  Complex pole_term;     // W^{1-s}/(s-1)^k
  Complex zero_sum;      // over the first K conjugate pairs
  Complex trivial_sum;   // over n = 1..M_triv
  double zero_tail = 0.0;     // omitted pairs, unscaled
  double trivial_tail = 0.0;  // omitted trivial zeros, unscaled
  double magnitude = 0.0;     // sum of |terms|, scaled by (k-1)!
};

ZeroSideResult zero_side(const WeightedSumSpec& spec, const ZeroDataset& zeros);

// Rigorous bound on sum_{gamma > gamma_K} W^{1/2-sigma} (|s-rho|^{-k} + |s-rho_bar|^{-k})
// from the Schoenfeld envelope, by partial summation against N(T) - N(gamma_K).
double zero_tail_bound(double W, int k, ComplexPoint s, double gamma_K);

struct ResidualReport {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double bound = 0.0;  // analytic bound on |lhs| for the full prime side
  double truncation_allowance = 0.0;
  bool within_allowance() const noexcept { return residual <= truncation_allowance; }
};

ResidualReport explicit_residual(const WeightedSumSpec& spec, const LambdaTable& table,
                                 const ZeroDataset& zeros);

// 9 (k-1)! 2^{sigma-1} W^{1-sigma} / (2 t (2^{sigma-1} - 1) (sigma-1)^{k-1})
double weighted_sum_bound(double W, int k, ComplexPoint s);

void write_residual_csv_header(std::ostream& out);
void write_residual_csv_row(std::ostream& out, const WeightedSumSpec& spec, const ResidualReport& r);

struct BoundedValue {
  Complex value;
  double bound = 0.0;
  // Truncation at the sieve limit; only tail_F fills this in.
  double truncation_tail = 0.0;
  // Size hypothesis N >= 9(t^2+1)/8 under which the bound is derived.
  bool size_condition = false;
  double ratio() const noexcept { return bound > 0 ? std::abs(value) / bound : 0.0; }
  bool holds() const noexcept { return std::abs(value) + truncation_tail <= bound; }
};

// F_W(s) = sum_{n >= floor(W)+1} Lambda(n) n^{-s}, truncated at the sieve
// limit, against 9 2^{sigma-1} / (2 t (2^{sigma-1}-1) N^{sigma-1}).
// Pre: sigma > 1, t >= 15, floor(W) + 1 <= table.limit().
BoundedValue tail_F(double W, ComplexPoint s, const LambdaTable& table);

// G_j(s) over [2^{j-1} N, 2^j N - 1] against 9 / (2 t 2^{(sigma-1)(j-1)} N^{sigma-1}).
// Pre: sigma > 1, t >= 15, j >= 1, 2^j N <= table.limit().
BoundedValue dyadic_block_G(int j, std::uint64_t N, ComplexPoint s, const LambdaTable& table);

// Sum of the dyadic block bounds over j >= 1 (a geometric series).
double dyadic_bound_total(std::uint64_t N, ComplexPoint s);

struct OscillatingSumResult {
  Complex value;
  double bound = 0.0;           // 2 N2 / t
  double worst_step_ratio = 0.0;  // max over sampled n of |n^{-it} - (n+1)^{-it}| / (t/n)
  bool holds() const noexcept { return std::abs(value) <= bound && worst_step_ratio <= 1.0; }
};

// |n^{-it} - (n+1)^{-it}|.
double step_difference(std::uint64_t n, double t);

// sum_{n=N1}^{N2-1} n^{-it}. Pre: t >= 15, N1 >= 9(t^2+1)/8, N2 >= N1.
OscillatingSumResult oscillating_block_sum(std::uint64_t N1, std::uint64_t N2, double t);

struct SmoothingCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double allowance = 0.0;
  double worst_segment = 0.0;  // left end of the segment with the largest quadrature error
};

// Compares sum_{W < n <= U_max} Lambda(n) n^{-s} log^{k-1}(n/W) with
// (k-1) int_W^{U_max} F_u(s) log^{k-2}(u/W)/u du, both truncated at U_max.
SmoothingCheck smoothing_identity_check(double W, int k, ComplexPoint s, const LambdaTable& table,
                                        int quad_nodes, std::uint64_t U_max);

struct NormalizedReport {
  ResidualReport original;   // at s = s0
  Complex multiplier;        // W^{s0-rho'} (s0-rho')^k
  Complex pole_term;         // W^{1-rho'} ((s0-rho')/(s0-1))^k
  Complex zero_term;         // sum_rho W^{rho-rho'} ((s0-rho')/(s0-rho))^k
  Complex trivial_term;      // sum_n W^{-2n-rho'} ((s0-rho')/(s0+2n))^k
  ResidualReport multiplied;
  double A = 0.0;            // 9 (sigma0-1) 2^{sigma0-1} / (2 (2^{sigma0-1}-1))
  double tau = 0.0;
  double right_bound = 0.0;  // A W^{1-beta'} / gamma'^tau
};

// The identity at s = s0 = sigma0 + i gamma' (from the config), multiplied by
// W^{s0-rho'} (s0-rho')^k. The spec supplies W, k and truncations.
NormalizedReport normalized_identity(const WeightedSumSpec& spec, const ExperimentConfig& config,
                                     const LambdaTable& table, const ZeroDataset& zeros);

}  // namespace turanlab
