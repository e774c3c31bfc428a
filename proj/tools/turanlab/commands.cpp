#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

#include <json.hpp>

#include "turanlab/arith.hpp"
#include "turanlab/error.hpp"
#include "turanlab/explicit_formula.hpp"
#include "turanlab/kv_config.hpp"
#include "turanlab/power_sum.hpp"
#include "turanlab/zeros.hpp"
#include "turanlab/zeta.hpp"

namespace turanlab::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Csv {
  std::ofstream& out;
  bool first = true;
  Csv& operator<<(double x) { return field(format_double(x)); }
  Csv& operator<<(std::uint64_t n) { return field(std::to_string(n)); }
  Csv& operator<<(const std::string& s) { return field(s); }
  Csv& field(const std::string& s) {
    if (!first) out << ',';
    out << s;
    first = false;
    return *this;
  }
  void end() {
    out << '\n';
    first = true;
  }
};

ZeroDataset load_dataset(RunContext& ctx, const std::string& path) {
  ctx.param("zeros", path);
  auto zeros = load_zeros(path);
  ctx.summary("zeros_loaded", static_cast<double>(zeros.size()));
  return zeros;
}

}  // namespace

void run_psi(RunContext& ctx, const PsiOptions& opt) {
  if (opt.limit < 2) throw InvalidArgument("psi: limit must be at least 2, got " + std::to_string(opt.limit));
  if (opt.samples == 0) throw InvalidArgument("psi: samples must be positive");
  if (!(opt.from >= 2.0) || !(opt.from < static_cast<double>(opt.limit))) {
    throw InvalidArgument("psi: need 2 <= from < limit");
  }
  if (!(opt.B > 0)) throw InvalidArgument("psi: B must be positive");
  ctx.param("limit", std::to_string(opt.limit));
  ctx.param("samples", std::to_string(opt.samples));
  ctx.param("from", opt.from);
  ctx.param("B", opt.B);
  if (opt.region >= 0) {
    ctx.param("region", std::to_string(opt.region));
  } else {
    ctx.param("H", opt.H);
  }

  const auto cap = static_cast<std::size_t>(opt.memory_cap_mb * 1024.0 * 1024.0);
  if (LambdaTable::bytes_required(opt.limit) > cap) {
    throw InvalidArgument("psi: limit " + std::to_string(opt.limit) + " needs " +
                          std::to_string(LambdaTable::bytes_required(opt.limit) >> 20) +
                          " MiB, over the memory cap of " + format_double(opt.memory_cap_mb) + " MiB");
  }
  const auto table = LambdaTable::sieve(opt.limit, cap);
  const auto xs = opt.samples == 1 ? std::vector<double>{static_cast<double>(opt.limit)}
                                   : log_spaced(opt.from, static_cast<double>(opt.limit), opt.samples);
  const RemainderReport report =
      opt.region >= 0 ? check_remainder_bound(table, RegionExponent::make(opt.region), opt.B, xs)
                      : check_remainder_bound(table, [h = opt.H](double) { return h; }, opt.B, xs);

  auto out = ctx.open("psi.csv");
  Csv csv{out};
  csv << "x" << "psi" << "varpi" << "exponent" << "bound" << "ratio";
  csv.end();
  for (const auto& s : report.samples) {
    csv << s.x << psi(s.x, table) << s.varpi << s.exponent << s.bound << s.ratio;
    csv.end();
  }
  ctx.summary("worst_ratio", report.worst_ratio);
  ctx.summary("worst_x", report.worst_x);
  ctx.summary("flagged", static_cast<double>(report.flagged));
}

void run_zeros(RunContext& ctx, const ZerosOptions& opt) {
  if (opt.samples == 0) throw InvalidArgument("zeros: samples must be positive");
  if (!(opt.t_min > 0) || !(opt.t_max >= opt.t_min)) throw InvalidArgument("zeros: need 0 < t-min <= t-max");
  const ZeroDataset zeros = load_dataset(ctx, opt.zeros);
  ctx.param("t_min", opt.t_min);
  ctx.param("t_max", opt.t_max);
  ctx.param("samples", std::to_string(opt.samples));
  ctx.param("j", std::to_string(opt.j));
  ctx.param("theta", opt.theta);

  auto counts = ctx.open("counts.csv");
  write_count_csv_header(counts);
  std::size_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const double T = opt.samples == 1 ? opt.t_max
                                      : opt.t_min + (opt.t_max - opt.t_min) * static_cast<double>(i) /
                                                        static_cast<double>(opt.samples - 1);
    const CountReport row = check_schoenfeld(zeros, T);
    write_count_csv_row(counts, row);
    if (row.violated()) ++violations;
    min_slack = std::min(min_slack, row.slack);
  }

  const ZeroFreeReport zf = zero_free_consistency(zeros, opt.j, opt.theta);
  auto region = ctx.open("zero_free.csv");
  Csv csv{region};
  csv << "j" << "theta" << "t_j" << "min_margin" << "argmin" << "violations" << "above_t_j";
  csv.end();
  csv << std::to_string(opt.j) << opt.theta << zf.t_j << zf.min_margin << zf.argmin
      << static_cast<std::uint64_t>(zf.violations) << static_cast<std::uint64_t>(zf.above_t_j);
  csv.end();

  ctx.summary("schoenfeld_violations", static_cast<double>(violations));
  ctx.summary("min_slack", min_slack);
  ctx.summary("zero_free_violations", static_cast<double>(zf.violations));
  ctx.violation(violations + zf.violations);
}

void run_explicit(RunContext& ctx, const ExplicitOptions& opt) {
  WeightedSumSpec spec;
  spec.W = opt.W;
  spec.k = opt.k;
  spec.s = ComplexPoint(opt.sigma, opt.t);
  spec.N_max = opt.n_max;
  spec.M_triv = opt.m_triv;
  if (opt.K.empty()) throw InvalidArgument("explicit: at least one K is required");
  spec.K = opt.K.front();
  spec.validate();

  ctx.param("W", opt.W);
  ctx.param("k", std::to_string(opt.k));
  ctx.param("sigma", opt.sigma);
  ctx.param("t", opt.t);
  ctx.param("n_max", std::to_string(opt.n_max));
  ctx.param("m_triv", std::to_string(opt.m_triv));
  std::string ks;
  for (const auto K : opt.K) ks += (ks.empty() ? "" : " ") + std::to_string(K);
  ctx.param("K", ks);
  ctx.param("oscillating", std::to_string(opt.oscillating));

  const ZeroDataset zeros = load_dataset(ctx, opt.zeros);
  const auto tail_limit = static_cast<std::uint64_t>(std::floor(opt.W)) + 1;
  const auto table = LambdaTable::sieve(std::max(opt.n_max, tail_limit));

  auto residuals = ctx.open("explicit.csv");
  write_residual_csv_header(residuals);
  std::size_t violations = 0;
  for (const auto K : opt.K) {
    spec.K = K;
    const ResidualReport r = explicit_residual(spec, table, zeros);
    write_residual_csv_row(residuals, spec, r);
    if (!r.within_allowance()) ++violations;
  }

  auto tail = ctx.open("tail_F.csv");
  Csv tcsv{tail};
  tcsv << "W" << "sigma" << "t" << "abs_value" << "truncation_tail" << "bound" << "size_condition" << "holds";
  tcsv.end();
  if (std::abs(opt.t) >= 15) {
    const BoundedValue f = tail_F(opt.W, spec.s, table);
    tcsv << opt.W << opt.sigma << opt.t << std::abs(f.value) << f.truncation_tail << f.bound
         << std::string(f.size_condition ? "1" : "0") << std::string(f.holds() ? "1" : "0");
    tcsv.end();
    if (f.size_condition && !f.holds()) ++violations;
  }

  std::mt19937_64 rng(ctx.seed());
  std::uniform_real_distribution<double> tdist(15, 200);
  auto osc = ctx.open("oscillating.csv");
  Csv ocsv{osc};
  ocsv << "t" << "N1" << "N2" << "abs_sum" << "bound" << "worst_step_ratio" << "holds";
  ocsv.end();
  for (std::size_t i = 0; i < opt.oscillating; ++i) {
    const double t = tdist(rng);
    const auto floor_n = static_cast<std::uint64_t>(std::ceil(9 * (t * t + 1) / 8));
    const std::uint64_t N1 = floor_n + rng() % (4 * floor_n);
    const std::uint64_t N2 = N1 + 1 + rng() % (8 * floor_n);
    const auto r = oscillating_block_sum(N1, N2, t);
    ocsv << t << N1 << N2 << std::abs(r.value) << r.bound << r.worst_step_ratio
         << std::string(r.holds() ? "1" : "0");
    ocsv.end();
    if (!r.holds()) ++violations;
  }
  ctx.summary("violations", static_cast<double>(violations));
  ctx.violation(violations);
}

namespace {

struct Trial {
  std::vector<Complex> zs;
  double D = 0;
  double lambda = 0;
};

Trial random_trial(std::uint64_t seed, std::size_t index, const PowerSumOptions& opt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0, 1);
  Trial t;
  const std::size_t L = 1 + rng() % opt.L_max;
  t.zs.push_back(std::polar(1.0, kTwoPi * unit(rng)));
  for (std::size_t i = 1; i < L; ++i) t.zs.push_back(std::polar(0.1 + 0.9 * unit(rng), kTwoPi * unit(rng)));
  std::shuffle(t.zs.begin(), t.zs.end(), rng);
  const double D_lo = static_cast<double>(L) / 40.0;
  t.D = D_lo + (opt.D_max - D_lo) * unit(rng);
  t.lambda = opt.lambda_min + (opt.lambda_max - opt.lambda_min) * unit(rng);
  return t;
}

nlohmann::ordered_json certificate_json(std::size_t index, const Trial& trial, const CertificateReport& c) {
  nlohmann::ordered_json j;
  j["trial"] = index;
  j["L"] = c.L;
  j["D_input"] = c.D_input;
  j["D"] = c.D;
  j["lambda"] = c.lambda;
  j["U"] = c.U;
  j["scale"] = c.scale;
  j["perturbed"] = c.perturbed;
  j["r"] = c.r;
  j["case"] = c.which == CertificateCase::I ? "I" : "II";
  j["l"] = c.l;
  j["certified"] = c.certified;
  j["constructive"] = c.constructive;
  j["final_bound"] = c.final_bound;
  j["brute_max"] = c.brute_max;
  j["brute_max_unperturbed"] = c.brute_max_unperturbed;
  j["margin"] = c.margin();
  j["valid"] = c.valid();
  if (c.interpolation) {
    const auto& ip = *c.interpolation;
    j["interpolation"] = {{"error", ip.interpolation_error}, {"d_sum", ip.d_sum},
                          {"d_bound", ip.d_bound},          {"newton_nodes", ip.newton_nodes},
                          {"newton_change", ip.newton_change}, {"bounds_hold", ip.bounds_hold()}};
  }
  auto& zs = j["z"] = nlohmann::ordered_json::array();
  for (const Complex z : trial.zs) zs.push_back({z.real(), z.imag()});
  return j;
}

}  // namespace

void run_powersum(RunContext& ctx, const PowerSumOptions& opt) {
  if (opt.trials == 0) throw InvalidArgument("powersum: trials must be positive");
  if (opt.L_max == 0) throw InvalidArgument("powersum: L-max must be positive");
  if (!(opt.D_max >= static_cast<double>(opt.L_max) / 40.0)) throw InvalidArgument("powersum: D-max too small");
  if (!(opt.lambda_min >= 1.0 / 40.0) || !(opt.lambda_max >= opt.lambda_min)) {
    throw InvalidArgument("powersum: need 1/40 <= lambda-min <= lambda-max");
  }
  ctx.param("trials", std::to_string(opt.trials));
  ctx.param("L_max", std::to_string(opt.L_max));
  ctx.param("D_max", opt.D_max);
  ctx.param("lambda_min", opt.lambda_min);
  ctx.param("lambda_max", opt.lambda_max);

  std::vector<std::string> lines(opt.trials);
  std::vector<char> bad(opt.trials, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < opt.trials; i = next++) {
      const Trial trial = random_trial(ctx.seed(), i, opt);
      try {
        const PowerSumSystem sys(trial.zs, trial.D);
        const auto cert = second_lemma_certificate(sys, trial.lambda, ctx.seed() + i);
        const bool dominance = brute_max(sys, static_cast<int>(trial.zs.size())) >= turan_second_bound(sys);
        auto j = certificate_json(i, trial, cert);
        j["oracle_dominance"] = dominance;
        bad[i] = !(cert.valid() && dominance);
        lines[i] = j.dump();
      } catch (const NumericalError& e) {
        nlohmann::ordered_json j;
        j["trial"] = i;
        j["error"] = e.what();
        bad[i] = 1;
        lines[i] = j.dump();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < ctx.threads(); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  auto out = ctx.open("certificates.jsonl");
  for (const auto& line : lines) out << line << '\n';
  const auto violations = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
  ctx.summary("violations", static_cast<double>(violations));
  ctx.violation(violations);
}

void run_experiment(RunContext& ctx, const ExperimentOptions& opt) {
  GridSpec grid = GridSpec::defaults();
  if (!opt.grid.empty()) {
    ctx.param("grid", opt.grid);
    grid = GridSpec::from_kv(KeyValueConfig::load(opt.grid));
  }
  ctx.param("grid_points", std::to_string(grid.size()));

  const FeasibilityReport report = feasibility_search(grid, opt.base);
  auto out = ctx.open("feasibility.csv");
  write_feasibility_csv(out, report);
  ctx.summary("evaluated", static_cast<double>(report.evaluated));
  ctx.summary("skipped", static_cast<double>(report.skipped));
  ctx.summary("feasible", static_cast<double>(report.feasible));

  if (!opt.bounds) return;
  const ZeroDataset zeros = load_dataset(ctx, opt.zeros);
  const DerivedParams d = derived_params(opt.base);
  const int k = opt.k > 0 ? opt.k : static_cast<int>(std::ceil(d.k_min));
  const double log_W = opt.log_W > 0 ? opt.log_W : d.log_W(k);
  ctx.param("k", std::to_string(k));
  ctx.param("log_W", log_W);
  const BoundReport bounds = bound_comparison_report(zeros, opt.base, k, log_W);
  auto bout = ctx.open("bounds.csv");
  write_bound_csv(bout, bounds);
  const auto& p = bounds.partition;
  ctx.summary("relative_discrepancy", p.relative_discrepancy);
  ctx.summary("count_H", static_cast<double>(p.count_H));
  if (!p.partition_exact() || !p.identity_holds()) ctx.violation();
}

void run_zeta(RunContext& ctx, const ZetaOptions& opt) {
  if (opt.sigma.empty() || opt.t.empty()) throw InvalidArgument("zeta: need at least one sigma and one t");
  std::string sig, ts;
  for (const double s : opt.sigma) sig += (sig.empty() ? "" : " ") + format_double(s);
  for (const double t : opt.t) ts += (ts.empty() ? "" : " ") + format_double(t);
  ctx.param("sigma", sig);
  ctx.param("t", ts);
  ctx.param("tol", opt.tol);
  ctx.param("K", std::to_string(opt.K));
  ctx.param("sieve", std::to_string(opt.sieve));

  const auto table = LambdaTable::sieve(opt.sieve);
  ZeroDataset zeros;
  if (opt.K > 0) zeros = load_dataset(ctx, opt.zeros);
  CalZOptions cz;
  cz.tol = opt.tol;
  cz.table = &table;

  auto out = ctx.open("zeta.csv");
  Csv csv{out};
  csv << "sigma" << "t" << "method" << "re" << "im" << "est_error" << "terms" << "note";
  csv.end();
  std::size_t violations = 0;
  for (const double sigma : opt.sigma) {
    for (const double t : opt.t) {
      const ComplexPoint s(sigma, t);
      auto row = [&](const std::string& name, auto&& eval) {
        try {
          const EvalResult r = eval();
          csv << sigma << t << name << r.value.real() << r.value.imag() << r.est_error
              << static_cast<std::uint64_t>(r.terms_used) << std::string();
          csv.end();
          return std::optional<EvalResult>(r);
        } catch (const DomainError& e) {
          csv << sigma << t << name << std::string() << std::string() << std::string() << std::string()
              << '"' + std::string(e.what()) + '"';
          csv.end();
          return std::optional<EvalResult>();
        }
      };
      const auto dir = row("zeta_dirichlet", [&] { return zeta_dirichlet(s, opt.tol); });
      const auto integ = row("zeta_integral", [&] { return zeta_integral(s); });
      row("zeta_prime_integral", [&] { return zeta_prime_integral(s); });
      row("log_deriv_series", [&] { return log_deriv_zeta_series(s, table, opt.tol); });
      if (opt.K > 0) row("log_deriv_zeros", [&] { return log_deriv_zeta_zeros(s, zeros, opt.K); });
      row("cal_Z_series", [&] { return cal_Z(s, ZetaMethod::Series, cz); });
      row("cal_Z_integral", [&] { return cal_Z(s, ZetaMethod::Integral, cz); });
      row("cal_Z_limit", [&] { return cal_Z(s, ZetaMethod::Limit, cz); });
      if (dir && integ && std::abs(dir->value - integ->value) > dir->est_error + integ->est_error) ++violations;
    }
  }
  ctx.summary("representation_disagreements", static_cast<double>(violations));
  ctx.violation(violations);
}

}  // namespace turanlab::cli
