#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "turanlab/special.hpp"
#include "turanlab/zeros.hpp"

namespace turanlab {

class KeyValueConfig;

// Constant table of the zero-free-region argument. Defaults are a point that
// satisfies every structural constraint; they are not claimed to close the
// argument (see feasibility_search).
struct ExperimentConfig {
  double a = 2.0;
  double b = 2.0;
  double c = 1.0;
  double u = 1.0;
  double x_cut = 3.0;
  double y = 2.0;
  double lambda = 1.0 / 40.0;
  double delta = 17.0 / 19.0;
  double theta = 3.0;
  int j = 0;
  double B = 1.0;           // remainder constant in |varpi(x)| <= B x^{1-H} log^2 x
  double beta_p = 0.9;      // beta' of the hypothetical zero rho'
  double gamma_p = 30000.0; // gamma' of the hypothetical zero rho'
  double T0 = 1.0e6;        // tau^(0) = log log T0 / log T0

  // Constants that are illegible or blank in the source derivation; exposed
  // so the bound report can be re-run with other readings.
  double const_S0 = 1.0;
  double const_S2_stage1 = 7800.0;
  double const_S2_stage2 = 8990.0;
  double const_S2_final = 9900.0;
  double const_S3_stage1 = 720.0;

  // Constraints every computation relies on (a > 1, 0 < c < b < log gamma'/4,
  // c (log a - log(a-1)) < 1, x > max(2, u a (1-beta')), ...). One message
  // per violated constraint.
  std::vector<std::string> structural_violations() const;
  // Hypotheses of the contradiction argument itself: beta' > 1/2,
  // gamma' > t_j, theta >= 3. Reported, not enforced by the sums.
  std::vector<std::string> hypothesis_flags() const;
  // Throws InvalidArgument listing every structural violation.
  void validate() const;

  // Reads keys named like the fields (a, b, c, u, x, y, lambda, delta, theta,
  // j, B, beta_p, gamma_p, T0, const_*). Unknown keys are rejected.
  static ExperimentConfig from_kv(const KeyValueConfig& kv, ExperimentConfig base);
  static ExperimentConfig from_kv(const KeyValueConfig& kv);
};

struct DerivedParams {
  double sigma0 = 0.0;  // a - (a-1) beta'
  Complex s0;           // sigma0 + i gamma'
  double omega = 0.0;   // gamma'^theta / (19.328 (3.1 + j/8) theta log gamma')
  double k_min = 0.0;   // min(b, c) log gamma'
  double k_max = 0.0;   // max(b, c) log gamma'
  // log W = k omega; W itself overflows for any admissible gamma'.
  double log_W(double k) const noexcept { return k * omega; }
};

DerivedParams derived_params(const ExperimentConfig& config);

struct ExponentTable {
  double tau = 0.0;
  double tau_p = 0.0;
  double tau0 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double tau_sup0 = 0.0;  // log log T0 / log T0
  double iota = 0.0;
  double kappa_case1 = 0.0;  // (21 a (1-delta)/22)(4 log 2 + 2 + log(1+lambda))
  double kappa_case2 = 0.0;  // (21 a/44)(1 + log(1+lambda) + log(1 + 1/M''))
  double kappa = 0.0;
  double M_pp = 0.0;
  // 0 < kappa <= iota - 1/32
  bool closes() const noexcept { return kappa > 0 && kappa <= iota - 1.0 / 32.0; }
};

ExponentTable exponent_table(const ExperimentConfig& config);

struct GridSpec {
  std::vector<double> a, b, c, u, x_cut, y, lambda;

  std::size_t size() const noexcept;
  // The default sweep used by the CLI.
  static GridSpec defaults();
  // Keys a, b, c, u, x, y, lambda with comma-separated values.
  static GridSpec from_kv(const KeyValueConfig& kv);
};

struct FeasibilityRow {
  ExperimentConfig config;
  std::optional<ExponentTable> table;  // empty when skipped
  std::string skip_reason;
  bool feasible = false;
};

struct FeasibilityReport {
  std::vector<FeasibilityRow> rows;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t feasible = 0;
  // Index of the evaluated row maximising iota - kappa.
  std::optional<std::size_t> best;
};

// Enumerates the grid over a, b, c, u, x, y, lambda; every other field comes
// from `base`.
FeasibilityReport feasibility_search(const GridSpec& grid, const ExperimentConfig& base);

void write_feasibility_csv(std::ostream& out, const FeasibilityReport& report);

enum class ZeroSet { H, H1, H2, H3 };

const char* to_string(ZeroSet set);

// Membership of rho = beta + i gamma. H1: |gamma - gamma'| >= x;
// H2: u g < |gamma - gamma'| < x; H3: |gamma - gamma'| <= u g and
// beta <= 1 - y g; H: the remaining near zeros (beta > 1 - y g), with
// g = sigma0 - beta'.
ZeroSet classify_zero(Complex rho, const ExperimentConfig& config);

// The printed near-set rule beta > 1 - x g; differs from the complement of
// H3 whenever x != y.
bool in_printed_H(Complex rho, const ExperimentConfig& config);

// z = e^{log_base (rho - rho')} (s0 - rho')/(s0 - rho); exactly 1 at rho'.
Complex power_sum_base(Complex rho, const ExperimentConfig& config, double log_base);

struct PartitionResult {
  Complex S, S0, S1, S2, S3;
  Complex S0_direct;  // recomputed over all zeros in one pass
  std::size_t count_H = 0, count_H1 = 0, count_H2 = 0, count_H3 = 0;
  // Both conjugates of every ingested ordinate, plus rho', its conjugate and
  // (off the critical line) their reflections when rho' is not a dataset zero.
  std::size_t total = 0;
  std::size_t printed_rule_mismatches = 0;
  double relative_discrepancy = 0.0;  // |S0_direct - (S + S1 + S2 + S3)| / |S0_direct|
  double lupper = 0.0;                // (21 a (1-beta')/22) log gamma'
  double chain_count_bound = 0.0;     // Schoenfeld chain bound on |H| count
  std::vector<Complex> near_bases;    // z_l for rho in H, in ordinate order
  bool partition_exact() const noexcept {
    return count_H + count_H1 + count_H2 + count_H3 == total;
  }
  bool identity_holds(double tol = 1e-9) const noexcept { return relative_discrepancy <= tol; }
};

// Pre: structural constraints except the hypothesis flags; gamma' + x within
// the dataset coverage. W enters only through log W.
PartitionResult partition_sums(const ZeroDataset& zeros, const ExperimentConfig& config, int k,
                               double log_W);

struct BoundRow {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double constant = 0.0;
  std::string constant_source;  // "paper", "reconstructed", "blank", "derived"
  std::string hypotheses;       // conditions the bound is derived under
  bool lower = false;           // value >= bound is the claim
  bool holds() const noexcept { return lower ? value >= bound : value <= bound; }
};

struct BoundReport {
  PartitionResult partition;
  ExponentTable exponents;
  std::vector<BoundRow> rows;
};

BoundReport bound_comparison_report(const ZeroDataset& zeros, const ExperimentConfig& config, int k,
                                    double log_W);

void write_bound_csv(std::ostream& out, const BoundReport& report);

}  // namespace turanlab
