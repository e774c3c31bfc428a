#include "run.hpp"

#include <cstdio>
#include <system_error>

#include <json.hpp>

#include "turanlab/error.hpp"

namespace turanlab::cli {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunContext::RunContext(std::string command, std::filesystem::path out_dir, std::uint64_t seed, unsigned threads)
    : out_dir_(std::move(out_dir)), threads_(threads == 0 ? 1 : threads), start_(std::chrono::steady_clock::now()) {
  manifest_.command = std::move(command);
  manifest_.seed = seed;
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir_.string() + ": " + ec.message());
}

std::ofstream RunContext::open(const std::string& name) {
  const std::filesystem::path path = out_dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  manifest_.outputs.push_back(path.string());
  return out;
}

void RunContext::param(const std::string& key, double value) { param(key, format_double(value)); }

void RunContext::summary(const std::string& key, double value) { summary(key, format_double(value)); }

int RunContext::finish() {
  manifest_.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  const int code = manifest_.violations == 0 ? kExitOk : kExitInvariant;

  nlohmann::ordered_json j;
  j["command"] = manifest_.command;
  j["parameters"] = manifest_.parameters;
  j["outputs"] = manifest_.outputs;
  j["wall_time"] = manifest_.wall_time;
  j["seed"] = manifest_.seed;
  j["violations"] = manifest_.violations;
  j["summary"] = manifest_.summary;
  j["exit_code"] = code;

  const std::filesystem::path path = out_dir_ / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
  for (const auto& file : manifest_.outputs) {
    if (!std::filesystem::exists(file)) throw IoError("declared output missing: " + file);
  }
  return code;
}

}  // namespace turanlab::cli
