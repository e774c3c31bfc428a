#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace turanlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  std::map<std::string, std::string> summary;
};

// Owns the output directory of one run. Files are opened through here so the
// manifest lists exactly what was written.
class RunContext {
 public:
  RunContext(std::string command, std::filesystem::path out_dir, std::uint64_t seed, unsigned threads);

  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }
  std::uint64_t seed() const noexcept { return manifest_.seed; }
  unsigned threads() const noexcept { return threads_; }

  std::ofstream open(const std::string& name);
  void param(const std::string& key, const std::string& value) { manifest_.parameters[key] = value; }
  void param(const std::string& key, double value);
  void summary(const std::string& key, const std::string& value) { manifest_.summary[key] = value; }
  void summary(const std::string& key, double value);
  void violation(std::size_t n = 1) { manifest_.violations += n; }

  // Writes manifest.json and returns the exit code for the run.
  int finish();

 private:
  RunManifest manifest_;
  std::filesystem::path out_dir_;
  unsigned threads_;
  std::chrono::steady_clock::time_point start_;
};

std::string format_double(double x);

}  // namespace turanlab::cli
