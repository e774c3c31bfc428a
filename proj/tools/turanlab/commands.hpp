#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "run.hpp"
#include "turanlab/experiment.hpp"

namespace turanlab::cli {

struct PsiOptions {
  std::uint64_t limit = 1'000'000;
  std::size_t samples = 100;
  double from = 10.0;
  double B = 1.0;
  double H = 0.5;
  int region = -1;  // >= 0 selects the piecewise exponent of that region instead of H
  double memory_cap_mb = 3072.0;
};

struct ZerosOptions {
  std::string zeros;
  double t_min = 15.0;
  double t_max = 9000.0;
  std::size_t samples = 1000;
  int j = 0;
  double theta = 3.0;
};

struct ExplicitOptions {
  std::string zeros;
  double W = 1000.5;
  int k = 4;
  double sigma = 2.0;
  double t = 30.0;
  std::uint64_t n_max = 1'000'000;
  std::vector<std::size_t> K{1000, 10000};
  int m_triv = 50;
  std::size_t oscillating = 50;
};

struct PowerSumOptions {
  std::size_t trials = 10000;
  std::size_t L_max = 10;
  double D_max = 40.0;
  double lambda_min = 1.0 / 40.0;
  double lambda_max = 2.025;
};

struct ExperimentOptions {
  std::string grid;
  std::string zeros;
  bool bounds = false;
  int k = 0;             // 0 picks ceil(k_min)
  double log_W = 0.0;    // 0 picks the derived k * omega
  ExperimentConfig base;
};

struct ZetaOptions {
  std::string zeros;
  std::vector<double> sigma{2.0};
  std::vector<double> t{30.0};
  double tol = 1e-10;
  std::size_t K = 0;
  std::uint64_t sieve = 2'000'000;
};

void run_psi(RunContext& ctx, const PsiOptions& opt);
void run_zeros(RunContext& ctx, const ZerosOptions& opt);
void run_explicit(RunContext& ctx, const ExplicitOptions& opt);
void run_powersum(RunContext& ctx, const PowerSumOptions& opt);
void run_experiment(RunContext& ctx, const ExperimentOptions& opt);
void run_zeta(RunContext& ctx, const ZetaOptions& opt);

}  // namespace turanlab::cli
