#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run.hpp"
#include "turanlab/error.hpp"
#include "turanlab/kv_config.hpp"

namespace fs = std::filesystem;
using namespace turanlab;
using namespace turanlab::cli;

namespace {

fs::path data_dir() {
  if (const char* env = std::getenv("TURANLAB_DATA"); env != nullptr && *env != '\0') return env;
  return TURANLAB_DEFAULT_DATA_DIR;
}

std::string normalize_key(std::string key) {
  for (char& ch : key) {
    if (ch == '-') ch = '_';
  }
  return key;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(value);
  while (in >> token) {
    std::size_t start = 0;
    for (std::size_t comma; (comma = token.find(',', start)) != std::string::npos; start = comma + 1) {
      if (comma > start) out.push_back(token.substr(start, comma - start));
    }
    if (start < token.size()) out.push_back(token.substr(start));
  }
  return out;
}

// Keys of the config file fill options that were not given on the command
// line. Keys no option claims are returned with their line numbers.
std::vector<std::pair<std::string, KeyValueConfig::Entry>> apply_config(const KeyValueConfig& kv,
                                                                       std::vector<CLI::App*> scopes) {
  std::vector<std::pair<std::string, KeyValueConfig::Entry>> rest;
  for (const auto& [key, entry] : kv.entries()) {
    CLI::Option* target = nullptr;
    for (CLI::App* app : scopes) {
      for (CLI::Option* opt : app->get_options()) {
        if (!opt->get_lnames().empty() && normalize_key(opt->get_lnames().front()) == normalize_key(key)) {
          target = opt;
        }
      }
      if (target != nullptr) break;
    }
    if (target == nullptr || target->get_lnames().front() == "config") {
      rest.emplace_back(key, entry);
      continue;
    }
    if (target->count() > 0) continue;
    try {
      if (target->get_items_expected_max() > 1) {
        for (const auto& item : split_list(entry.value)) target->add_result(item);
      } else {
        target->add_result(entry.value);
      }
      target->run_callback();
    } catch (const CLI::Error& e) {
      throw ParseError("bad value for '" + key + "': " + e.what(), entry.line);
    }
  }
  return rest;
}

ExperimentConfig experiment_base(const std::vector<std::pair<std::string, KeyValueConfig::Entry>>& rest) {
  // Rebuild the remaining keys on their original lines so parse errors keep
  // pointing at the right place in the user's file.
  std::vector<std::string> lines;
  for (const auto& [key, entry] : rest) {
    if (lines.size() < entry.line) lines.resize(entry.line);
    lines[entry.line - 1] = key + " = " + entry.value;
  }
  std::ostringstream text;
  for (const auto& line : lines) text << line << '\n';
  std::istringstream in(text.str());
  return ExperimentConfig::from_kv(KeyValueConfig::parse(in));
}

void reject_unknown(const std::vector<std::pair<std::string, KeyValueConfig::Entry>>& rest,
                    const std::string& command) {
  if (!rest.empty()) {
    throw ParseError("unknown key '" + rest.front().first + "' for " + command, rest.front().second.line);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turanlab: zeta, explicit-formula and power-sum experiments"};
  app.require_subcommand(1);

  std::string out_dir = "turanlab-out";
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string config_path;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "Key = value file supplying option defaults");

  const std::string default_zeros = (data_dir() / "zeros_10k.txt").string();

  PsiOptions psi;
  auto* psi_cmd = app.add_subcommand("psi", "psi(x) and varpi(x) against the remainder bound");
  psi_cmd->add_option("--limit", psi.limit, "Sieve limit")->capture_default_str();
  psi_cmd->add_option("--samples", psi.samples, "Log-spaced sample count")->capture_default_str();
  psi_cmd->add_option("--from", psi.from, "Smallest sample")->capture_default_str();
  psi_cmd->add_option("--B", psi.B, "Remainder constant")->capture_default_str();
  psi_cmd->add_option("--H", psi.H, "Constant exponent")->capture_default_str();
  psi_cmd->add_option("--region", psi.region, "Use the piecewise exponent of region j");
  psi_cmd->add_option("--memory-cap-mb", psi.memory_cap_mb, "Sieve memory cap")->capture_default_str();

  ZerosOptions zer;
  zer.zeros = default_zeros;
  auto* zeros_cmd = app.add_subcommand("zeros", "Zero counting sweep and zero-free region consistency");
  zeros_cmd->add_option("--zeros", zer.zeros, "Zero ordinate table")->capture_default_str();
  zeros_cmd->add_option("--t-min", zer.t_min)->capture_default_str();
  zeros_cmd->add_option("--t-max", zer.t_max)->capture_default_str();
  zeros_cmd->add_option("--samples", zer.samples)->capture_default_str();
  zeros_cmd->add_option("--j", zer.j, "Region index")->capture_default_str();
  zeros_cmd->add_option("--theta", zer.theta)->capture_default_str();

  ExplicitOptions ex;
  ex.zeros = default_zeros;
  auto* explicit_cmd = app.add_subcommand("explicit", "Weighted explicit formula and tail bounds");
  explicit_cmd->add_option("--zeros", ex.zeros, "Zero ordinate table")->capture_default_str();
  explicit_cmd->add_option("--W", ex.W, "Cut-off, not within 1/4 of an integer")->capture_default_str();
  explicit_cmd->add_option("--k", ex.k)->capture_default_str();
  explicit_cmd->add_option("--sigma", ex.sigma)->capture_default_str();
  explicit_cmd->add_option("--t", ex.t)->capture_default_str();
  explicit_cmd->add_option("--n-max", ex.n_max)->capture_default_str();
  explicit_cmd->add_option("--K", ex.K, "Zero counts to truncate at")->capture_default_str();
  explicit_cmd->add_option("--m-triv", ex.m_triv)->capture_default_str();
  explicit_cmd->add_option("--oscillating", ex.oscillating, "Random oscillating sums")->capture_default_str();

  PowerSumOptions ps;
  auto* powersum_cmd = app.add_subcommand("powersum", "Randomized power-sum certificates");
  powersum_cmd->add_option("--trials", ps.trials)->capture_default_str();
  powersum_cmd->add_option("--L-max", ps.L_max)->capture_default_str();
  powersum_cmd->add_option("--D-max", ps.D_max)->capture_default_str();
  powersum_cmd->add_option("--lambda-min", ps.lambda_min)->capture_default_str();
  powersum_cmd->add_option("--lambda-max", ps.lambda_max)->capture_default_str();

  ExperimentOptions exp;
  exp.zeros = default_zeros;
  auto* experiment_cmd = app.add_subcommand("experiment", "Feasibility grid and bound report");
  experiment_cmd->add_option("--grid", exp.grid, "Grid file, key = comma separated values");
  experiment_cmd->add_option("--zeros", exp.zeros, "Zero ordinate table")->capture_default_str();
  experiment_cmd->add_flag("--bounds", exp.bounds, "Also run the partition and bound report");
  experiment_cmd->add_option("--k", exp.k, "Power for the bound report (default ceil(k_min))");
  experiment_cmd->add_option("--log-W", exp.log_W, "log W for the bound report (default k omega)");

  ZetaOptions zt;
  zt.zeros = default_zeros;
  auto* zeta_cmd = app.add_subcommand("zeta", "Zeta and -zeta'/zeta across representations");
  zeta_cmd->add_option("--zeros", zt.zeros, "Zero ordinate table")->capture_default_str();
  zeta_cmd->add_option("--sigma", zt.sigma)->capture_default_str();
  zeta_cmd->add_option("--t", zt.t)->capture_default_str();
  zeta_cmd->add_option("--tol", zt.tol)->capture_default_str();
  zeta_cmd->add_option("--K", zt.K, "Zeros in the expansion, 0 to skip")->capture_default_str();
  zeta_cmd->add_option("--sieve", zt.sieve)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    std::vector<std::pair<std::string, KeyValueConfig::Entry>> rest;
    if (!config_path.empty()) {
      rest = apply_config(KeyValueConfig::load(config_path), {cmd, &app});
    }

    RunContext ctx(cmd->get_name(), out_dir, seed, threads);
    if (!config_path.empty()) ctx.param("config", config_path);
    if (cmd == psi_cmd) {
      reject_unknown(rest, "psi");
      run_psi(ctx, psi);
    } else if (cmd == zeros_cmd) {
      reject_unknown(rest, "zeros");
      run_zeros(ctx, zer);
    } else if (cmd == explicit_cmd) {
      reject_unknown(rest, "explicit");
      run_explicit(ctx, ex);
    } else if (cmd == powersum_cmd) {
      reject_unknown(rest, "powersum");
      run_powersum(ctx, ps);
    } else if (cmd == experiment_cmd) {
      exp.base = experiment_base(rest);
      run_experiment(ctx, exp);
    } else {
      reject_unknown(rest, "zeta");
      run_zeta(ctx, zt);
    }
    const int code = ctx.finish();
    if (code != kExitOk) std::cerr << "turanlab " << cmd->get_name() << ": invariant violations, see manifest.json\n";
    return code;
  } catch (const ParseError& e) {
    std::cerr << "turanlab: " << (config_path.empty() ? "config" : config_path) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "turanlab: " << e.what() << '\n';
    return kExitIo;
  } catch (const InsufficientData& e) {
    std::cerr << "turanlab: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "turanlab: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    std::cerr << "turanlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "turanlab: " << e.what() << '\n';
    return kExitInvariant;
  }
}
