#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace turanlab {

// Ascending positive ordinates gamma of nontrivial zeros rho = 1/2 + i gamma.
// Every ingested ordinate is taken to lie on the critical line; that holds
// for the verified range the tables come from and is recorded in source().
class ZeroDataset {
 public:
  ZeroDataset() = default;
  // Throws InvalidArgument unless strictly ascending and above 14.
  ZeroDataset(std::vector<double> ordinates, std::string source);

  std::size_t size() const noexcept { return ordinates_.size(); }
  bool empty() const noexcept { return ordinates_.empty(); }
  double operator[](std::size_t i) const { return ordinates_[i]; }
  std::span<const double> ordinates() const noexcept { return ordinates_; }
  const std::string& source() const noexcept { return source_; }
  // Largest ordinate; counting queries are defined up to here.
  double coverage() const;

  ZeroDataset first(std::size_t count) const;

 private:
  std::vector<double> ordinates_;
  std::string source_;
};

// One ordinate per data line, '#' comment lines, LF or CRLF. Throws
// ParseError (with line number) on malformed or non-monotone input and
// IoError when the file cannot be opened.
ZeroDataset load_zeros(const std::filesystem::path& path);
ZeroDataset parse_zeros(std::istream& in, const std::string& source);

// Writes the table format back out with `digits` fractional digits (>= 6).
void write_zeros(std::ostream& out, const ZeroDataset& zeros, int digits = 9);

struct SignChangeResult {
  std::vector<double> ordinates;
  // Grid cells where |Z| dips toward zero without a detectable sign change.
  std::vector<std::pair<double, double>> unresolved;
};

// Sign changes of Hardy's Z(t) on [t_lo, t_hi], refined by bisection to
// 1e-9. Pre: 0 < t_lo < t_hi <= 100, grid >= 2.
SignChangeResult locate_zero_signchange(double t_lo, double t_hi, int grid);

// N(T): number of ordinates <= T. Pre: T <= coverage.
std::size_t count_N(const ZeroDataset& zeros, double T);

// (T/2pi) log(T/2pi) - T/2pi.
double main_term_M(double T);

// 0.137 log T + 0.443 log log T + 1.588, T >= e.
double q_bound(double T);

struct CountReport {
  double T = 0.0;
  std::size_t N = 0;
  double M = 0.0;
  double Q = 0.0;
  double slack = 0.0;  // Q - |N - M + 7/8|
  bool violated() const noexcept { return slack < 0.0; }
};

CountReport check_schoenfeld(const ZeroDataset& zeros, double T);

void write_count_csv_header(std::ostream& out);
void write_count_csv_row(std::ostream& out, const CountReport& row);

struct ShortIntervalReport {
  double center = 0.0;
  double d = 0.0;
  std::size_t count = 0;     // ordinates with |gamma - center| <= d
  double lemma_bound = 0.0;  // (7d/22) log center
  double chain_bound = 0.0;  // M(t+d) - M(t-d) + Q(t+d) + Q(t-d)
  double mvt_bound = 0.0;    // (d/pi)(log((t+d)/2pi) + 2pi + 1)
  bool lemma_holds() const noexcept { return static_cast<double>(count) <= lemma_bound; }
  bool chain_holds() const noexcept { return static_cast<double>(count) <= chain_bound; }
};

// Pre: center >= 16, 0 < d < center - e, center + d <= coverage.
ShortIntervalReport short_interval_count(const ZeroDataset& zeros, double center, double d);

// h_j(t): (3.1 + j/8) theta log t / t^theta above t_j, 1/2 on (0, t_j].
double h_region(double t, int j, double theta, double t_j);

// max(29753, largest t > 1 with (3.1 + j/8) theta log t = t^theta).
double solve_tj(int j, double theta);
// The interior root alone, before clamping.
double solve_tj_root(int j, double theta);

inline constexpr double kVerifiedHeight = 29753.0;

struct ZeroFreeReport {
  double t_j = 0.0;
  double min_margin = 0.0;   // min over gamma of (1 - h_j(gamma)) - 1/2
  double argmin = 0.0;
  std::size_t violations = 0;  // ordinates with negative margin
  std::size_t above_t_j = 0;
};

ZeroFreeReport zero_free_consistency(const ZeroDataset& zeros, int j, double theta);

}  // namespace turanlab
