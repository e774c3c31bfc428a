// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "turanlab/arith.hpp"
#include "turanlab/error.hpp"
#include "turanlab/experiment.hpp"
#include "turanlab/explicit_formula.hpp"
#include "turanlab/power_sum.hpp"
#include "turanlab/zeros.hpp"
#include "turanlab/zeta.hpp"

using namespace turanlab;

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::string data_path;
  std::uint64_t seed = 20240611;
  std::optional<ZeroDataset> zeros;
  std::optional<LambdaTable> table;  // sieved to 2e6, shared by criteria 5 and 10

  const ZeroDataset& dataset() {
    if (!zeros) zeros = load_zeros(data_path);
    return *zeros;
  }
  const LambdaTable& lambda() {
    if (!table) table = LambdaTable::sieve(2'000'000);
    return *table;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// Criterion 1
Outcome sieve_correctness(Context&) {
  const auto table = LambdaTable::sieve(10'000);
  const auto ref = oracle::psi_trial_table(10'000);
  std::size_t mismatches = 0;
  for (std::uint64_t n = 2; n <= 10'000; ++n) {
    if (psi(static_cast<double>(n), table) != ref[n]) ++mismatches;
  }
  return {mismatches == 0, "psi(n) == trial-division oracle for n in [2, 1e4], mismatches = " +
                               std::to_string(mismatches)};
}

// Criterion 2
Outcome pnt_remainder(Context&) {
  const auto table = LambdaTable::sieve(10'000'000);
  const auto xs = log_spaced(1e3, 1e7, 100);
  const auto report = check_remainder_bound(
      table, [](double) { return 0.5; }, 1.0, xs);
  const bool ok = report.flagged == 0 && report.worst_ratio < 0.05;
  return {ok, "100 x in [1e3, 1e7]: flagged = " + std::to_string(report.flagged) +
                  ", max |varpi|/(sqrt(x) log^2 x) = " + fmt(report.worst_ratio) + " at x = " +
                  fmt(report.worst_x) + " (needs < 0.05)"};
}

// Criterion 3
Outcome schoenfeld_sweep(Context& ctx) {
  const auto& zeros = ctx.dataset();
  if (zeros.size() < 10'000) {
    return {false, "dataset holds " + std::to_string(zeros.size()) + " ordinates, need 1e4"};
  }
  const auto first = zeros.first(10'000);
  std::size_t violations = 0;
  double worst = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const double T = 15.0 + (9000.0 - 15.0) * i / 999.0;
    const auto r = check_schoenfeld(first, T);
    if (r.violated()) ++violations;
    worst = std::min(worst, r.slack);
  }
  return {violations == 0, "1000 T in [15, 9000]: violations = " + std::to_string(violations) +
                               ", min slack = " + fmt(worst)};
}

// Criterion 4
Outcome zero_oracle(Context& ctx) {
  const auto& zeros = ctx.dataset();
  const auto located = locate_zero_signchange(14, 100, 860);
  const std::size_t expected = count_N(zeros, 100);
  double worst = 0.0;
  bool ok = expected == 29 && located.ordinates.size() == expected && located.unresolved.empty();
  for (std::size_t i = 0; ok && i < expected; ++i) worst = std::max(worst, std::abs(located.ordinates[i] - zeros[i]));
  ok = ok && worst <= 1e-6;
  return {ok, "located " + std::to_string(located.ordinates.size()) + " of " + std::to_string(expected) +
                  " ordinates on [14, 100], max deviation = " + fmt(worst)};
}

// Criterion 5
Outcome explicit_identity(Context& ctx) {
  const auto& zeros = ctx.dataset();
  const auto& table = ctx.lambda();
  WeightedSumSpec spec;
  spec.W = 1000.5;
  spec.k = 4;
  spec.s = ComplexPoint(2, 30);
  spec.N_max = 1'000'000;
  spec.M_triv = 50;
  spec.K = 10'000;
  const auto fine = explicit_residual(spec, table, zeros);
  spec.K = 1'000;
  const auto coarse = explicit_residual(spec, table, zeros);
  const bool identity = fine.within_allowance() && fine.residual <= coarse.residual + 1e-12;

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> tdist(15, 60), sdist(1.3, 3.0);
  std::size_t violations = 0, with_tail = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = tdist(rng);
    const double sigma = sdist(rng);
    const double size = std::max(1621.0, 9 * (t * t + 1) / 8);
    const double W = std::floor(size * std::uniform_real_distribution<double>(1, 8)(rng)) + 0.5;
    const auto f = tail_F(W, ComplexPoint(sigma, t), table);
    if (!f.size_condition || !(std::abs(f.value) <= f.bound)) ++violations;
    // The absolute tail past the sieve limit swamps the bound near sigma = 1.3.
    if (f.holds()) ++with_tail;
    worst = std::max(worst, std::abs(f.value) / f.bound);
  }
  return {identity && violations == 0,
          "residual(K=1e4) = " + fmt(fine.residual) + " <= allowance " + fmt(fine.truncation_allowance) +
              ", residual(K=1e3) = " + fmt(coarse.residual) + "; tail_F on 20 points: violations = " +
              std::to_string(violations) + ", max ratio = " + fmt(worst) + ", also within bound with the " +
              "sieve-limit tail added: " + std::to_string(with_tail)};
}

// Criterion 6
Outcome oscillating_sums(Context& ctx) {
  std::mt19937_64 rng(ctx.seed + 6);
  std::uniform_real_distribution<double> tdist(15, 200);
  std::size_t violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t = tdist(rng);
    const auto floor_n = static_cast<std::uint64_t>(std::ceil(9 * (t * t + 1) / 8));
    const std::uint64_t N1 = floor_n + rng() % (4 * floor_n);
    const std::uint64_t N2 = N1 + 1 + rng() % (8 * floor_n);
    const auto r = oscillating_block_sum(N1, N2, t);
    if (std::abs(r.value) > r.bound) ++violations;
    worst = std::max(worst, std::abs(r.value) / r.bound);
  }
  return {violations == 0, "50 random (t, N1, N2): violations = " + std::to_string(violations) +
                               ", max |sum|/(2 N2/t) = " + fmt(worst)};
}

std::vector<Complex> random_unit_disc(std::mt19937_64& rng, std::size_t L) {
  std::uniform_real_distribution<double> mod(0.1, 1.0), arg(0, 2 * kPi);
  std::vector<Complex> zs;
  zs.push_back(std::polar(1.0, arg(rng)));
  for (std::size_t i = 1; i < L; ++i) zs.push_back(std::polar(mod(rng), arg(rng)));
  std::shuffle(zs.begin(), zs.end(), rng);
  return zs;
}

// Criterion 7
Outcome power_sum_dominance(Context& ctx) {
  std::mt19937_64 rng(ctx.seed + 7);
  std::size_t first_violations = 0, second_violations = 0;
  double first_margin = INFINITY, second_margin = INFINITY;
  for (int i = 0; i < 10'000; ++i) {
    const std::size_t L = 2 + rng() % 7;
    const double D = std::uniform_real_distribution<double>(1, 40)(rng);
    const PowerSumSystem sys(random_unit_disc(rng, L), D);
    const double brute = brute_max_lemma(sys).value;
    const double bound = turan_first_bound(sys);
    if (brute < bound) ++first_violations;
    first_margin = std::min(first_margin, brute / bound);
  }
  for (int i = 0; i < 10'000; ++i) {
    const std::size_t L = 2 + rng() % 7;
    const double D = std::uniform_real_distribution<double>(L / 40.0, 40)(rng);
    const PowerSumSystem sys(random_unit_disc(rng, L), D);
    const double brute = brute_max(sys, static_cast<int>(L));
    const double bound = turan_second_bound(sys);
    if (brute < bound) ++second_violations;
    second_margin = std::min(second_margin, brute / bound);
  }
  return {first_violations + second_violations == 0,
          "1e4 systems each: first-lemma violations = " + std::to_string(first_violations) +
              " (min brute/bound = " + fmt(first_margin) + "), second-lemma violations = " +
              std::to_string(second_violations) + " (min brute/bound = " + fmt(second_margin) + ")"};
}

// Criterion 8
Outcome interpolation_construction(Context& ctx) {
  std::mt19937_64 rng(ctx.seed + 8);
  std::uniform_real_distribution<double> unit(0, 1), arg(0, 2 * kPi);
  std::size_t failures = 0, bound_failures = 0, unstable = 0, errors = 0;
  double worst_residual = 0.0, worst_change = 0.0;
  std::string first_error;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t L = 2 + rng() % 9;
    const std::size_t l = 1 + rng() % L;
    const double lambda = 1.0 / 40 + 2 * unit(rng);
    const double U = 1 / (4 * kE * (1 + lambda));
    const double inner = 1 - 4 * kE * U;
    // Outer points above a gap over 1 - 4eU, inner points below it.
    const double gap_hi = inner + (1 - inner) * (0.3 + 0.4 * unit(rng));
    std::vector<Complex> zs;
    for (std::size_t j = 0; j < l; ++j) zs.push_back(std::polar(gap_hi + (1 - gap_hi) * unit(rng), arg(rng)));
    for (std::size_t j = l; j < L; ++j) zs.push_back(std::polar(0.9 * inner * unit(rng), arg(rng)));
    const double D = static_cast<double>(rng() % 21);
    try {
      const PowerSumSystem sys(zs, std::max(D, 1.0));
      const auto r = build_R(sys, l, U);
      worst_residual = std::max(worst_residual, r.interpolation_error);
      const double scale = std::max(1.0, std::abs(*std::max_element(
                                             r.b.begin(), r.b.end(),
                                             [](Complex x, Complex y) { return std::abs(x) < std::abs(y); })));
      worst_change = std::max(worst_change, r.newton_change / scale);
      if (r.interpolation_error > 1e-9) ++failures;
      if (!r.bounds_hold()) ++bound_failures;
      if (r.newton_change > 1e-12 * scale) ++unstable;
    } catch (const Error& e) {
      ++errors;
      if (first_error.empty()) first_error = e.what();
    }
  }
  std::string detail = "1000 systems: residual failures = " + std::to_string(failures) +
                       " (max " + fmt(worst_residual) + "), bound failures = " +
                       std::to_string(bound_failures) + ", Newton unstable = " + std::to_string(unstable) +
                       " (max rel change " + fmt(worst_change) + "), errors = " + std::to_string(errors);
  if (!first_error.empty()) detail += " [" + first_error + "]";
  return {failures + bound_failures + unstable + errors == 0, detail};
}

// Criterion 9
Outcome partition_identity(Context& ctx) {
  const auto& zeros = ctx.dataset();
  if (zeros.size() < 10'000) {
    return {false, "dataset holds " + std::to_string(zeros.size()) + " ordinates, need 1e4"};
  }
  std::mt19937_64 rng(ctx.seed + 9);
  std::uniform_real_distribution<double> unit(0, 1);
  std::size_t checked = 0, failures = 0;
  double worst = 0.0;
  while (checked < 20) {
    ExperimentConfig c;
    c.a = 1.25 + 2.75 * unit(rng);
    c.beta_p = 0.5 + 0.49 * unit(rng);
    c.gamma_p = 100 + (zeros.coverage() - 200) * unit(rng);
    const double c_max = std::min(1.0 / (std::log(c.a) - std::log(c.a - 1)), std::log(c.gamma_p) / 4);
    c.c = c_max * (0.1 + 0.8 * unit(rng));
    c.b = c.c + (std::log(c.gamma_p) / 4 - c.c) * (0.1 + 0.8 * unit(rng));
    c.u = 0.5 + 40 * unit(rng);
    c.x_cut = std::max(2.0, c.u * c.a * (1 - c.beta_p)) + 1 + 40 * unit(rng);
    c.y = 1 + 4 * unit(rng);
    if (!c.structural_violations().empty()) continue;
    const auto d = derived_params(c);
    const int k = static_cast<int>(std::ceil(d.k_min + (d.k_max - d.k_min) * unit(rng)));
    // The derived W drives every term except rho' to underflow, so each
    // config is also run at a moderate log W where all terms contribute.
    for (const double log_W : {d.log_W(k), 5 + 35 * unit(rng)}) {
      const auto p = partition_sums(zeros, c, k, log_W);
      worst = std::max(worst, p.relative_discrepancy);
      if (!p.partition_exact() || !p.identity_holds(1e-9)) ++failures;
    }
    ++checked;
  }
  return {failures == 0, "20 configs x 2 scales: failures = " + std::to_string(failures) +
                             ", max relative discrepancy = " + fmt(worst)};
}

// Criterion 10
Outcome zeta_agreement(Context& ctx) {
  const auto& zeros = ctx.dataset();
  const auto& table = ctx.lambda();
  std::mt19937_64 rng(ctx.seed + 10);
  std::uniform_real_distribution<double> sdist(1.0, 3.0), tdist(-50, 50);
  std::size_t disagreements = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double sigma = sdist(rng);
    if (sigma <= 1.0) sigma = std::nextafter(1.0, 2.0);
    const ComplexPoint s(sigma, tdist(rng));
    const auto a = zeta_dirichlet(s, 1e-8);
    const auto b = zeta_integral(s);
    const double diff = std::abs(a.value - b.value);
    if (diff > a.est_error + b.est_error) ++disagreements;
    worst = std::max(worst, diff / (a.est_error + b.est_error));
  }
  const double series = log_deriv_zeta_series(ComplexPoint(2, 0), table, 1e-6).value.real();
  std::vector<double> diffs;
  bool monotone = zeros.size() >= 10'000;
  for (std::size_t K : {100u, 1000u, 10000u}) {
    if (K > zeros.size()) break;
    diffs.push_back(std::abs(log_deriv_zeta_zeros(ComplexPoint(2, 0), zeros, K).value.real() - series));
  }
  for (std::size_t i = 1; i < diffs.size(); ++i) monotone = monotone && diffs[i] < diffs[i - 1];
  CalZOptions opt;
  opt.table = &table;
  const double limit = cal_Z(ComplexPoint(1, 0), ZetaMethod::Limit, opt).value.real();
  const double limit_err = std::abs(limit + 2 * kEulerGamma);
  std::string ks;
  for (double d : diffs) ks += (ks.empty() ? "" : ", ") + fmt(d);
  return {disagreements == 0 && monotone && limit_err <= 1e-6,
          "100 s: disagreements = " + std::to_string(disagreements) + " (max diff/err = " + fmt(worst) +
              "); zero expansion at s=2 vs series over K=1e2,1e3,1e4: [" + ks + "]; |calZ(1) + 2 gamma0| = " +
              fmt(limit_err)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome(Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turanlab acceptance run"};
  Context ctx;
  ctx.data_path = std::string(TURANLAB_DEFAULT_ZEROS);
  std::vector<int> only;
  app.add_option("--data", ctx.data_path, "zero ordinate table");
  app.add_option("--seed", ctx.seed, "seed for the randomized criteria");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "sieve correctness", 10, sieve_correctness},
      {2, "PNT remainder at desk scale", 60, pnt_remainder},
      {3, "Schoenfeld sweep", 5, schoenfeld_sweep},
      {4, "zero oracle", 60, zero_oracle},
      {5, "explicit-formula identity", 120, explicit_identity},
      {6, "oscillating-sum bound", 60, oscillating_sums},
      {7, "power-sum oracle dominance", 120, power_sum_dominance},
      {8, "R-polynomial construction", 120, interpolation_construction},
      {9, "partition identity", 120, partition_identity},
      {10, "cross-representation zeta agreement", 120, zeta_agreement},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(ctx);
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
