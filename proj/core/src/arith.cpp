#include "turanlab/arith.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "turanlab/error.hpp"
#include "turanlab/summation.hpp"

namespace turanlab {

std::size_t LambdaTable::bytes_required(std::uint64_t limit) noexcept {
  // values + two prefix arrays (double) + one flag byte per entry.
  const std::uint64_t per_entry = 3 * sizeof(double) + 1;
  const std::uint64_t entries = limit + 1;
  if (entries > std::numeric_limits<std::uint64_t>::max() / per_entry) {
    return std::numeric_limits<std::size_t>::max();
  }
  // plus the composite bitmap used during sieving
  return static_cast<std::size_t>(entries * per_entry + entries / 8 + 1);
}

LambdaTable LambdaTable::sieve(std::uint64_t limit, std::size_t memory_budget) {
  if (limit < 2) {
    throw InvalidArgument("sieve limit must be at least 2, got " + std::to_string(limit));
  }
  const std::size_t need = bytes_required(limit);
  if (need > memory_budget) {
    throw ResourceError("sieve up to " + std::to_string(limit) + " requires " +
                        std::to_string(need) + " bytes, budget is " +
                        std::to_string(memory_budget) + " bytes");
  }

  LambdaTable table;
  table.limit_ = limit;
  const std::size_t size = static_cast<std::size_t>(limit) + 1;
  table.values_.assign(size, 0.0);
  table.prime_flags_.assign(size, 0);

  // Eratosthenes over a composite bitmap, then mark every power of each prime.
  std::vector<bool> composite(size, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    if (p <= limit / p) {
      for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    const double log_p = std::log(static_cast<double>(p));
    for (std::uint64_t q = p;; q *= p) {
      table.values_[q] = log_p;
      table.prime_flags_[q] = 1;
      if (q > limit / p) break;
    }
  }

  table.psi_prefix_.assign(size, 0.0);
  table.varpi_prefix_.assign(size, 0.0);
  CompensatedSum psi_acc;
  CompensatedSum varpi_acc;
  for (std::size_t n = 1; n < size; ++n) {
    psi_acc.add(table.values_[n]);
    varpi_acc.add(table.values_[n] - 1.0);
    table.psi_prefix_[n] = psi_acc.value();
    table.varpi_prefix_[n] = varpi_acc.value();
  }
  return table;
}

double LambdaTable::operator[](std::uint64_t n) const {
  if (n > limit_) {
    throw OutOfRange("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  }
  return values_[n];
}

bool LambdaTable::is_prime_power(std::uint64_t n) const {
  if (n > limit_) {
    throw OutOfRange("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  }
  return prime_flags_[n] != 0;
}

double LambdaTable::psi_floor(std::uint64_t n) const {
  if (n > limit_) {
    throw OutOfRange("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  }
  return psi_prefix_[n];
}

double LambdaTable::varpi_floor(std::uint64_t n) const {
  if (n > limit_) {
    throw OutOfRange("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  }
  return varpi_prefix_[n];
}

namespace {

void require_in_table(double x, double lower, bool lower_open, const LambdaTable& table,
                      const char* what) {
  if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": x is not finite");
  if (lower_open ? !(x > lower) : !(x >= lower)) {
    throw InvalidArgument(std::string(what) + ": x = " + std::to_string(x) + " below domain");
  }
  if (x > static_cast<double>(table.limit())) {
    throw OutOfRange(std::string(what) + ": x = " + std::to_string(x) + " exceeds sieve limit " +
                     std::to_string(table.limit()));
  }
}

}  // namespace

double psi(double x, const LambdaTable& table) {
  require_in_table(x, 0.0, true, table, "psi");
  const double fl = std::floor(x);
  const auto n = static_cast<std::uint64_t>(fl);
  double value = table.psi_floor(n);
  if (fl == x && n >= 1) value -= table[n] / 2.0;
  return value;
}

double varpi(double x, const LambdaTable& table) {
  require_in_table(x, 1.0, false, table, "varpi");
  const double fl = std::floor(x);
  const auto n = static_cast<std::uint64_t>(fl);
  double value = table.varpi_floor(n);
  if (fl == x) {
    // Lambda(n) - 1 is never zero: log p = 1 has no integer solution.
    value -= (table[n] - 1.0) / 2.0;
  }
  return value;
}

double solve_crossover(int j) {
  if (j < 0) throw InvalidArgument("region index j must be nonnegative");
  const double c = 3.1 + j / 8.0;
  // Work in u = log x: c log u - u is positive at u = e (c > e) and negative
  // at the upper end, so the bracket isolates the larger root.
  auto f = [c](double u) { return c * std::log(u) - u; };
  double lo = std::numbers::e;
  double hi = 1.0e3;
  while (f(hi) > 0) hi *= 2;
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

RegionExponent RegionExponent::make(int j) {
  RegionExponent region;
  region.j = j;
  region.coefficient = 3.1 + j / 8.0;
  region.crossover = solve_crossover(j);
  return region;
}

double remainder_exponent(double x, const RegionExponent& region) {
  if (!(x > 2.0)) throw InvalidArgument("remainder_exponent requires x > 2");
  if (x <= region.crossover) return 0.5;
  const double lx = std::log(x);
  return region.coefficient * std::log(lx) / lx;
}

RemainderReport check_remainder_bound(const LambdaTable& table, const ExponentFunction& exponent,
                                      double B, std::span<const double> sample_points) {
  if (sample_points.empty()) throw InvalidArgument("check_remainder_bound: empty sample set");
  if (!(B >= 0.0)) throw InvalidArgument("check_remainder_bound: B must be nonnegative");
  RemainderReport report;
  report.samples.reserve(sample_points.size());
  for (double x : sample_points) {
    if (!(x > 2.0) || x > static_cast<double>(table.limit())) {
      throw InvalidArgument("sample point " + std::to_string(x) + " outside (2, limit]");
    }
    RemainderSample row;
    row.x = x;
    row.varpi = varpi(x, table);
    row.exponent = exponent(x);
    const double lx = std::log(x);
    row.bound = B * std::pow(x, 1.0 - row.exponent) * lx * lx;
    const double mag = std::abs(row.varpi);
    if (row.bound > 0) {
      row.ratio = mag / row.bound;
    } else {
      row.ratio = mag > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    row.flagged = !std::isfinite(row.ratio) || row.ratio > 1.0;
    if (row.flagged) ++report.flagged;
    if (report.samples.empty() || row.ratio > report.worst_ratio) {
      report.worst_ratio = row.ratio;
      report.worst_x = x;
    }
    report.samples.push_back(row);
  }
  return report;
}

RemainderReport check_remainder_bound(const LambdaTable& table, const RegionExponent& region,
                                      double B, std::span<const double> sample_points) {
  return check_remainder_bound(
      table, [&region](double x) { return remainder_exponent(x, region); }, B, sample_points);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (!(lo > 0) || !(hi >= lo)) throw InvalidArgument("log_spaced requires 0 < lo <= hi");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace turanlab
