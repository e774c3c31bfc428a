#include "turanlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "turanlab/error.hpp"
#include "turanlab/kv_config.hpp"
#include "turanlab/power_sum.hpp"
#include "turanlab/summation.hpp"

namespace turanlab {

namespace {

double log_ratio_a(double a) { return std::log(a) - std::log(a - 1.0); }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

std::vector<std::string> ExperimentConfig::structural_violations() const {
  std::vector<std::string> v;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) v.push_back(what);
  };
  need(a > 1.0, "a > 1");
  need(c > 0.0, "c > 0");
  need(c < b, "c < b");
  need(gamma_p > 1.0 && b < std::log(gamma_p) / 4.0, "b < log(gamma')/4");
  if (a > 1.0) need(c * log_ratio_a(a) < 1.0, "c (log a - log(a-1)) < 1");
  need(u > 0.0, "u > 0");
  need(x_cut > std::max(2.0, u * a * (1.0 - beta_p)), "x > max(2, u a (1-beta'))");
  need(y > 1.0, "y > 1");
  need(lambda > 0.0, "lambda > 0");
  need(delta > 0.5 && delta <= 1.0, "delta in (1/2, 1]");
  need(theta >= 2.0, "theta >= 2");
  need(j >= 0, "j >= 0");
  need(B > 0.0, "B > 0");
  need(beta_p >= 0.5 && beta_p < 1.0, "beta' in [1/2, 1)");
  need(T0 > std::numbers::e, "T0 > e");
  for (const double x : {a, b, c, u, x_cut, y, lambda, delta, theta, B, beta_p, gamma_p, T0}) {
    if (!std::isfinite(x)) {
      v.push_back("all constants finite");
      break;
    }
  }
  return v;
}

std::vector<std::string> ExperimentConfig::hypothesis_flags() const {
  std::vector<std::string> flags;
  if (!(beta_p > 0.5)) flags.push_back("beta' > 1/2 not met");
  if (!(theta >= 3.0)) flags.push_back("theta >= 3 not met (only theta >= 2 holds)");
  if (theta >= 2.0 && j >= 0) {
    const double tj = solve_tj(j, theta);
    if (!(gamma_p > tj)) {
      std::ostringstream os;
      os << "gamma' > t_j = " << tj << " not met";
      flags.push_back(os.str());
    }
  }
  return flags;
}

void ExperimentConfig::validate() const {
  const auto v = structural_violations();
  if (!v.empty()) throw InvalidArgument("experiment config violates: " + join(v));
}

ExperimentConfig ExperimentConfig::from_kv(const KeyValueConfig& kv, ExperimentConfig base) {
  const std::map<std::string, double ExperimentConfig::*> fields = {
      {"a", &ExperimentConfig::a},
      {"b", &ExperimentConfig::b},
      {"c", &ExperimentConfig::c},
      {"u", &ExperimentConfig::u},
      {"x", &ExperimentConfig::x_cut},
      {"x_cut", &ExperimentConfig::x_cut},
      {"y", &ExperimentConfig::y},
      {"lambda", &ExperimentConfig::lambda},
      {"delta", &ExperimentConfig::delta},
      {"theta", &ExperimentConfig::theta},
      {"B", &ExperimentConfig::B},
      {"beta_p", &ExperimentConfig::beta_p},
      {"gamma_p", &ExperimentConfig::gamma_p},
      {"T0", &ExperimentConfig::T0},
      {"const_S0", &ExperimentConfig::const_S0},
      {"const_S2_stage1", &ExperimentConfig::const_S2_stage1},
      {"const_S2_stage2", &ExperimentConfig::const_S2_stage2},
      {"const_S2_final", &ExperimentConfig::const_S2_final},
      {"const_S3_stage1", &ExperimentConfig::const_S3_stage1},
  };
  for (const auto& [key, entry] : kv.entries()) {
    if (key == "j") {
      base.j = static_cast<int>(kv.get_int("j", base.j));
      continue;
    }
    const auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("unknown experiment key '" + key + "'", entry.line);
    base.*(it->second) = parse_number(entry.value, entry.line);
  }
  return base;
}

ExperimentConfig ExperimentConfig::from_kv(const KeyValueConfig& kv) {
  return from_kv(kv, ExperimentConfig{});
}

DerivedParams derived_params(const ExperimentConfig& config) {
  config.validate();
  DerivedParams p;
  p.sigma0 = config.a - (config.a - 1.0) * config.beta_p;
  p.s0 = Complex(p.sigma0, config.gamma_p);
  const double lg = std::log(config.gamma_p);
  p.omega = std::pow(config.gamma_p, config.theta) /
            (19.328 * (3.1 + config.j / 8.0) * config.theta * lg);
  p.k_min = std::min(config.b, config.c) * lg;
  p.k_max = std::max(config.b, config.c) * lg;
  return p;
}

ExponentTable exponent_table(const ExperimentConfig& config) {
  config.validate();
  const double a = config.a;
  const double lr = log_ratio_a(a);
  ExponentTable e;
  e.tau_p = config.c * lr;
  e.tau = 1.0 - config.c * lr;
  e.tau_sup0 = std::log(std::log(config.T0)) / std::log(config.T0);
  e.tau0 = std::min({e.tau, e.tau_p, 1.0});
  e.tau1 = config.b * (std::log(config.x_cut) - std::log(2.0));
  e.tau2 = config.b * (std::log(config.u * a) - lr) - e.tau_sup0;
  e.tau3 = config.b * std::log(config.y);
  e.iota = std::min({e.tau, e.tau_p, 1.0, e.tau0, e.tau1, e.tau2, e.tau3});
  const double one_minus_delta = 1.0 - config.delta;
  const double num = a * one_minus_delta;
  const double den = std::hypot((a - 1.0) * one_minus_delta + 0.5, config.u * a * one_minus_delta);
  e.M_pp = num / den;
  const double l1 = std::log1p(config.lambda);
  e.kappa_case1 = 21.0 * a * one_minus_delta / 22.0 * (4.0 * std::log(2.0) + 2.0 + l1);
  if (e.M_pp > 0.0) {
    e.kappa_case2 = 21.0 * a / 44.0 * (1.0 + l1 + std::log1p(1.0 / e.M_pp));
  } else {
    e.kappa_case2 = std::numeric_limits<double>::infinity();
  }
  e.kappa = std::min(e.kappa_case1, e.kappa_case2);
  return e;
}

std::size_t GridSpec::size() const noexcept {
  return a.size() * b.size() * c.size() * u.size() * x_cut.size() * y.size() * lambda.size();
}

GridSpec GridSpec::defaults() {
  GridSpec g;
  g.a = {1.25, 1.5, 2.0, 3.0, 4.0};
  g.b = {1.0, 1.5, 2.0, 2.5};
  g.c = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
  g.u = {0.5, 1.0, 2.0, 4.0};
  g.x_cut = {2.5, 3.0, 5.0, 8.0};
  g.y = {1.5, 2.0, 4.0, 8.0};
  g.lambda = {1.0 / 40.0, 0.1, 1.0};
  return g;
}

GridSpec GridSpec::from_kv(const KeyValueConfig& kv) {
  GridSpec g = defaults();
  const std::map<std::string, std::vector<double> GridSpec::*> fields = {
      {"a", &GridSpec::a}, {"b", &GridSpec::b}, {"c", &GridSpec::c},
      {"u", &GridSpec::u}, {"x", &GridSpec::x_cut}, {"x_cut", &GridSpec::x_cut},
      {"y", &GridSpec::y}, {"lambda", &GridSpec::lambda},
  };
  for (const auto& [key, entry] : kv.entries()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("unknown grid key '" + key + "'", entry.line);
    g.*(it->second) = kv.get_double_list(key);
  }
  return g;
}

FeasibilityReport feasibility_search(const GridSpec& grid, const ExperimentConfig& base) {
  if (grid.size() == 0) throw InvalidArgument("feasibility_search requires a nonempty grid");
  FeasibilityReport report;
  double best_gap = -std::numeric_limits<double>::infinity();
  for (const double a : grid.a)
    for (const double b : grid.b)
      for (const double c : grid.c)
        for (const double u : grid.u)
          for (const double x : grid.x_cut)
            for (const double y : grid.y)
              for (const double lambda : grid.lambda) {
                FeasibilityRow row;
                row.config = base;
                row.config.a = a;
                row.config.b = b;
                row.config.c = c;
                row.config.u = u;
                row.config.x_cut = x;
                row.config.y = y;
                row.config.lambda = lambda;
                const auto violations = row.config.structural_violations();
                if (!violations.empty()) {
                  row.skip_reason = join(violations);
                  ++report.skipped;
                } else {
                  try {
                    row.table = exponent_table(row.config);
                    row.feasible = row.table->closes();
                    ++report.evaluated;
                    if (row.feasible) ++report.feasible;
                    const double gap = row.table->iota - row.table->kappa;
                    if (gap > best_gap) {
                      best_gap = gap;
                      report.best = report.rows.size();
                    }
                  } catch (const Error& err) {
                    row.skip_reason = err.what();
                    ++report.skipped;
                  }
                }
                report.rows.push_back(std::move(row));
              }
  return report;
}

void write_feasibility_csv(std::ostream& out, const FeasibilityReport& report) {
  const auto old = out.precision(10);
  out << "a,b,c,u,x,y,lambda,delta,theta,j,tau,tau_p,tau0,tau1,tau2,tau3,tau_sup0,iota,"
         "kappa_case1,kappa_case2,kappa,M_pp,feasible,skip_reason\n";
  for (const auto& row : report.rows) {
    const auto& c = row.config;
    out << c.a << ',' << c.b << ',' << c.c << ',' << c.u << ',' << c.x_cut << ',' << c.y << ','
        << c.lambda << ',' << c.delta << ',' << c.theta << ',' << c.j << ',';
    if (row.table) {
      const auto& t = *row.table;
      out << t.tau << ',' << t.tau_p << ',' << t.tau0 << ',' << t.tau1 << ',' << t.tau2 << ',' << t.tau3
          << ',' << t.tau_sup0 << ',' << t.iota << ',' << t.kappa_case1 << ',' << t.kappa_case2 << ','
          << t.kappa << ',' << t.M_pp << ',';
    } else {
      out << ",,,,,,,,,,,,";
    }
    out << (row.feasible ? 1 : 0) << ',' << '"' << row.skip_reason << '"' << '\n';
  }
  out.precision(old);
}

const char* to_string(ZeroSet set) {
  switch (set) {
    case ZeroSet::H: return "H";
    case ZeroSet::H1: return "H1";
    case ZeroSet::H2: return "H2";
    case ZeroSet::H3: return "H3";
  }
  return "?";
}

ZeroSet classify_zero(Complex rho, const ExperimentConfig& config) {
  const double g = config.a * (1.0 - config.beta_p);
  const double dist = std::abs(rho.imag() - config.gamma_p);
  if (dist >= config.x_cut) return ZeroSet::H1;
  if (dist > config.u * g) return ZeroSet::H2;
  if (rho.real() <= 1.0 - config.y * g) return ZeroSet::H3;
  return ZeroSet::H;
}

bool in_printed_H(Complex rho, const ExperimentConfig& config) {
  const double g = config.a * (1.0 - config.beta_p);
  return std::abs(rho.imag() - config.gamma_p) <= config.u * g && rho.real() > 1.0 - config.x_cut * g;
}

Complex power_sum_base(Complex rho, const ExperimentConfig& config, double log_base) {
  const double sigma0 = config.a - (config.a - 1.0) * config.beta_p;
  const Complex s0(sigma0, config.gamma_p);
  const Complex rho_p(config.beta_p, config.gamma_p);
  if (rho == rho_p) return 1.0;
  return std::exp(log_base * (rho - rho_p)) * (s0 - rho_p) / (s0 - rho);
}

PartitionResult partition_sums(const ZeroDataset& zeros, const ExperimentConfig& config, int k, double log_W) {
  config.validate();
  if (k < 1) throw InvalidArgument("partition_sums requires k >= 1");
  if (!(log_W > 0) || !std::isfinite(log_W)) throw InvalidArgument("partition_sums requires finite log W > 0");
  const double cover = zeros.coverage();
  if (config.gamma_p + config.x_cut > cover) {
    throw InsufficientData("partition_sums: gamma' + x = " + std::to_string(config.gamma_p + config.x_cut) +
                           " exceeds the dataset coverage " + std::to_string(cover));
  }
  const double sigma0 = config.a - (config.a - 1.0) * config.beta_p;
  const Complex s0(sigma0, config.gamma_p);
  const Complex rho_p(config.beta_p, config.gamma_p);
  const Complex gap = s0 - rho_p;

  std::vector<Complex> rhos;
  rhos.reserve(2 * zeros.size() + 4);
  bool rho_p_present = false;
  for (const double g : zeros.ordinates()) {
    rhos.emplace_back(0.5, g);
    rhos.emplace_back(0.5, -g);
    if (Complex(0.5, g) == rho_p) rho_p_present = true;
  }
  // The hypothetical zero rho' brings its conjugate and, off the critical
  // line, its reflections 1 - conj(rho').
  if (!rho_p_present) {
    rhos.push_back(rho_p);
    rhos.push_back(std::conj(rho_p));
    if (config.beta_p != 0.5) {
      rhos.emplace_back(1.0 - config.beta_p, config.gamma_p);
      rhos.emplace_back(1.0 - config.beta_p, -config.gamma_p);
    }
  }
  std::sort(rhos.begin(), rhos.end(), [](Complex x, Complex y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });

  PartitionResult res;
  res.total = rhos.size();
  ComplexCompensatedSum sH, s1, s2, s3, s0_direct;
  for (const Complex rho : rhos) {
    Complex term;
    if (rho == rho_p) {
      term = 1.0;
    } else {
      const double log_mod = (rho.real() - config.beta_p) * log_W + k * std::log(std::abs(gap / (s0 - rho)));
      if (log_mod > 700.0) {
        throw NumericalError("partition_sums: |W^{rho-rho'}| overflows; reduce k or log W");
      }
      term = std::exp((rho - rho_p) * log_W) * ipow(gap / (s0 - rho), k);
    }
    s0_direct.add(term);
    const ZeroSet set = classify_zero(rho, config);
    if ((set == ZeroSet::H) != in_printed_H(rho, config)) ++res.printed_rule_mismatches;
    switch (set) {
      case ZeroSet::H:
        sH.add(term);
        ++res.count_H;
        res.near_bases.push_back(power_sum_base(rho, config, log_W / k));
        break;
      case ZeroSet::H1:
        s1.add(term);
        ++res.count_H1;
        break;
      case ZeroSet::H2:
        s2.add(term);
        ++res.count_H2;
        break;
      case ZeroSet::H3:
        s3.add(term);
        ++res.count_H3;
        break;
    }
  }
  res.S = sH.value();
  res.S1 = s1.value();
  res.S2 = s2.value();
  res.S3 = s3.value();
  res.S0_direct = s0_direct.value();
  res.S0 = res.S + res.S1 + res.S2 + res.S3;
  const double denom = std::abs(res.S0_direct);
  const double diff = std::abs(res.S0_direct - res.S0);
  res.relative_discrepancy = denom > 0 ? diff / denom : diff;

  const double lg = std::log(config.gamma_p);
  res.lupper = 21.0 * config.a * (1.0 - config.beta_p) / 22.0 * lg;
  const double half = config.u * config.a * (1.0 - config.beta_p);
  if (config.gamma_p - half >= std::numbers::e) {
    res.chain_count_bound = main_term_M(config.gamma_p + half) - main_term_M(config.gamma_p - half) +
                            q_bound(config.gamma_p + half) + q_bound(config.gamma_p - half);
  } else {
    res.chain_count_bound = std::numeric_limits<double>::infinity();
  }
  return res;
}

BoundReport bound_comparison_report(const ZeroDataset& zeros, const ExperimentConfig& config, int k,
                                    double log_W) {
  BoundReport rep;
  rep.partition = partition_sums(zeros, config, k, log_W);
  rep.exponents = exponent_table(config);
  const auto& e = rep.exponents;
  const auto& p = rep.partition;
  const double gp = config.gamma_p;
  const double lg = std::log(gp);
  const double sigma0 = config.a - (config.a - 1.0) * config.beta_p;
  const double g = sigma0 - config.beta_p;
  // Every |S_j| is divided by W^{1-beta'}, which the bounds share.
  const double log_scale = (1.0 - config.beta_p) * log_W;
  auto normalized = [&](Complex v) {
    const double m = std::abs(v);
    return m > 0 ? std::exp(std::log(m) - log_scale) : 0.0;
  };
  const std::string b_dep = "B-dependent remainder hypothesis; gamma' >= T0";
  auto row = [&](std::string name, double value, double constant, double shape, std::string source,
                 std::string hyp, bool lower = false) {
    BoundRow r;
    r.name = std::move(name);
    r.value = value;
    r.constant = constant;
    r.bound = constant * shape;
    r.constant_source = std::move(source);
    r.hypotheses = std::move(hyp);
    r.lower = lower;
    rep.rows.push_back(std::move(r));
  };
  row("S", normalized(p.S), 7297.0, std::pow(gp, -e.iota), "paper", b_dep);
  row("S0", normalized(p.S0_direct), config.const_S0, std::pow(gp, -e.tau0), "blank", b_dep);
  row("S1", normalized(p.S1), 14.0 / (11.0 * config.b), std::pow(gp, -e.tau1), "derived",
      "zero density (7/22) log gamma per unit interval");
  const double s2_ratio = g / std::sqrt((sigma0 - 1.0) * (sigma0 - 1.0) + config.u * g * g);
  row("S2_stage1", normalized(p.S2), config.const_S2_stage1,
      std::log(gp + config.x_cut) * std::pow(s2_ratio, k), "reconstructed", "short-interval zero count");
  row("S2_stage2", normalized(p.S2), config.const_S2_stage2,
      lg * std::pow(config.a / (config.a - 1.0 + config.u * config.a), k), "reconstructed",
      "k in the k-range");
  row("S2", normalized(p.S2), config.const_S2_final, std::pow(gp, -e.tau2), "reconstructed",
      "log gamma' <= gamma'^tau(0), gamma' >= T0");
  row("S3_stage1", normalized(p.S3), config.const_S3_stage1, lg * std::pow(1.0 / config.y, k),
      "reconstructed", "beta <= 1 - y (sigma0 - beta') on H3");
  row("S3", normalized(p.S3), 72.0, std::pow(gp, -e.tau3), "paper", "k in the k-range");
  row("S_lower", std::abs(p.S), 1.0, std::pow(gp, -e.kappa), "derived",
      "power-sum lemma; holds for the max over the k-window, not each k", true);
  if (!p.near_bases.empty()) {
    const WindowMax wm =
        brute_max_window(p.near_bases, k, k + static_cast<long>(p.near_bases.size()));
    row("power_sum_window", wm.value, 1.0, std::pow(gp, -e.kappa), "derived",
        "max over nu in [k, k+|H|] of the near-zero power sum", true);
  }
  row("count_H", static_cast<double>(p.count_H), 21.0 * config.a * (1.0 - config.beta_p) / 22.0, lg,
      "paper", "21/22 density constant");
  return rep;
}

void write_bound_csv(std::ostream& out, const BoundReport& report) {
  const auto old = out.precision(12);
  out << "name,value,bound,constant,constant_source,direction,holds,hypotheses\n";
  for (const auto& r : report.rows) {
    out << r.name << ',' << r.value << ',' << r.bound << ',' << r.constant << ',' << r.constant_source << ','
        << (r.lower ? ">=" : "<=") << ',' << (r.holds() ? 1 : 0) << ',' << '"' << r.hypotheses << '"' << '\n';
  }
  out.precision(old);
}

}  // namespace turanlab
