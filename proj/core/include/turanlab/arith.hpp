#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace turanlab {

// Von Mangoldt values Lambda(n) for 1 <= n <= limit, sieved once and then
// shared read-only. Also stores compensated prefix sums of Lambda(n) and of
// Lambda(n) - 1 so that psi and varpi are O(1) lookups whose values agree
// bit-for-bit with an ascending compensated summation.
class LambdaTable {
 public:
  // Default cap on the table footprint (bytes).
  static constexpr std::size_t kDefaultMemoryBudget = std::size_t{3} << 30;

  // Bytes required for a table of the given limit.
  static std::size_t bytes_required(std::uint64_t limit) noexcept;

  // Throws InvalidArgument when limit < 2, ResourceError when the table
  // would not fit in memory_budget bytes.
  static LambdaTable sieve(std::uint64_t limit,
                           std::size_t memory_budget = kDefaultMemoryBudget);

  std::uint64_t limit() const noexcept { return limit_; }

  // Lambda(n); 0 for n == 0 or n == 1. Throws OutOfRange when n > limit.
  double operator[](std::uint64_t n) const;
  double lambda(std::uint64_t n) const { return (*this)[n]; }

  bool is_prime_power(std::uint64_t n) const;

  // Sum_{m <= n} Lambda(m), compensated, ascending; n <= limit.
  double psi_floor(std::uint64_t n) const;
  // Sum_{m <= n} (Lambda(m) - 1), compensated, ascending; n <= limit.
  double varpi_floor(std::uint64_t n) const;

  // Index 0 is unused; index n holds Lambda(n).
  std::span<const double> values() const noexcept { return values_; }

 private:
  LambdaTable() = default;

  std::uint64_t limit_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> prime_flags_;
  std::vector<double> psi_prefix_;
  std::vector<double> varpi_prefix_;
};

// psi(x) with the half-maximum convention at integer prime powers.
// Pre: 0 < x <= table.limit().
double psi(double x, const LambdaTable& table);

// varpi(x) = sum_{n <= x} (Lambda(n) - 1) with the half-maximum convention.
// Pre: 1 <= x <= table.limit().
double varpi(double x, const LambdaTable& table);

// Largest x > e solving (3.1 + j/8) log log x = log x.
double solve_crossover(int j);

// Index j together with its coefficient 3.1 + j/8 and crossover x_j.
struct RegionExponent {
  int j = 0;
  double coefficient = 3.1;
  double crossover = 0.0;

  static RegionExponent make(int j);
};

// H_j(x): coefficient * log log x / log x above the crossover, 1/2 on
// (2, x_j]. Pre: x > 2.
double remainder_exponent(double x, const RegionExponent& region);

struct RemainderSample {
  double x = 0.0;
  double varpi = 0.0;
  double exponent = 0.0;  // H used for this x
  double bound = 0.0;     // B * x^{1-H} * log^2 x
  double ratio = 0.0;     // |varpi| / bound, +inf when bound == 0 < |varpi|
  bool flagged = false;   // ratio > 1 or not finite
};

struct RemainderReport {
  std::vector<RemainderSample> samples;
  double worst_ratio = 0.0;
  double worst_x = 0.0;
  std::size_t flagged = 0;
};

using ExponentFunction = std::function<double(double)>;

// Compares |varpi(x)| with B x^{1-H(x)} log^2 x at every sample point.
RemainderReport check_remainder_bound(const LambdaTable& table, const ExponentFunction& exponent,
                                      double B, std::span<const double> sample_points);
RemainderReport check_remainder_bound(const LambdaTable& table, const RegionExponent& region,
                                      double B, std::span<const double> sample_points);

// count points log-spaced over [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace turanlab
