#include "turanlab/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "turanlab/error.hpp"
#include "turanlab/zeta.hpp"

namespace turanlab {

namespace {

// No nontrivial zero has ordinate at or below 14.
constexpr double kFirstOrdinateFloor = 14.0;

}  // namespace

ZeroDataset::ZeroDataset(std::vector<double> ordinates, std::string source)
    : ordinates_(std::move(ordinates)), source_(std::move(source)) {
  for (std::size_t i = 0; i < ordinates_.size(); ++i) {
    const double g = ordinates_[i];
    if (!std::isfinite(g) || g <= kFirstOrdinateFloor) {
      throw InvalidArgument("ordinate " + std::to_string(g) + " at index " + std::to_string(i) +
                            " is not above 14");
    }
    if (i > 0 && !(g > ordinates_[i - 1])) {
      throw InvalidArgument("ordinates not strictly ascending at index " + std::to_string(i));
    }
  }
}

double ZeroDataset::coverage() const {
  if (ordinates_.empty()) throw InsufficientData("zero dataset is empty");
  return ordinates_.back();
}

ZeroDataset ZeroDataset::first(std::size_t count) const {
  if (count > ordinates_.size()) {
    throw InsufficientData("requested " + std::to_string(count) + " ordinates, dataset has " +
                           std::to_string(ordinates_.size()));
  }
  return ZeroDataset(std::vector<double>(ordinates_.begin(), ordinates_.begin() + static_cast<std::ptrdiff_t>(count)),
                     source_);
}

ZeroDataset parse_zeros(std::istream& in, const std::string& source) {
  std::vector<double> ordinates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t");
    const std::string_view token(line.data() + first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("cannot parse ordinate '" + std::string(token) + "'", line_no);
    }
    if (!std::isfinite(value) || value <= 0.0) {
      throw ParseError("ordinate must be positive, got " + std::string(token), line_no);
    }
    if (value <= kFirstOrdinateFloor) {
      throw ParseError("ordinate " + std::string(token) + " lies below the first zero", line_no);
    }
    if (!ordinates.empty() && !(value > ordinates.back())) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "ordinates not strictly ascending: " << ordinates.back()
          << " followed by " << value;
      throw ParseError(msg.str(), line_no);
    }
    ordinates.push_back(value);
  }
  return ZeroDataset(std::move(ordinates), source + " (beta = 1/2 assumed)");
}

ZeroDataset load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open zero table " + path.string());
  return parse_zeros(in, path.string());
}

void write_zeros(std::ostream& out, const ZeroDataset& zeros, int digits) {
  if (digits < 6) throw InvalidArgument("write_zeros: at least 6 fractional digits required");
  out << "# " << zeros.source() << '\n';
  out << std::fixed << std::setprecision(digits);
  for (double g : zeros.ordinates()) out << g << '\n';
  out << std::defaultfloat;
}

SignChangeResult locate_zero_signchange(double t_lo, double t_hi, int grid) {
  if (!(t_lo > 0) || !(t_hi > t_lo) || t_hi > 100.0) {
    throw InvalidArgument("locate_zero_signchange: need 0 < t_lo < t_hi <= 100");
  }
  if (grid < 2) throw InvalidArgument("locate_zero_signchange: grid must be >= 2");

  auto bisect = [](double a, double fa, double b) {
    while (b - a > 1e-9) {
      const double mid = 0.5 * (a + b);
      const double fm = hardy_z(mid);
      if (fm == 0.0) return mid;
      if ((fm > 0) == (fa > 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };

  std::vector<double> ts(static_cast<std::size_t>(grid) + 1);
  std::vector<double> zs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] = t_lo + (t_hi - t_lo) * static_cast<double>(i) / grid;
    zs[i] = hardy_z(ts[i]);
  }

  SignChangeResult result;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (zs[i] == 0.0) {
      result.ordinates.push_back(ts[i]);
      continue;
    }
    if ((zs[i] > 0) != (zs[i + 1] > 0) && zs[i + 1] != 0.0) {
      result.ordinates.push_back(bisect(ts[i], zs[i], ts[i + 1]));
    }
  }
  if (zs.back() == 0.0) result.ordinates.push_back(ts.back());

  // A pair of close zeros between grid points shows up as a dip of |Z|
  // without a sign change: minimise sign * Z over the neighbouring cells.
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const bool same = (zs[i - 1] > 0) == (zs[i] > 0) && (zs[i] > 0) == (zs[i + 1] > 0);
    if (!same || std::abs(zs[i]) >= std::abs(zs[i - 1]) || std::abs(zs[i]) >= std::abs(zs[i + 1])) continue;
    const double sign = zs[i] > 0 ? 1.0 : -1.0;
    double a = ts[i - 1];
    double b = ts[i + 1];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = sign * hardy_z(c);
    double fd = sign * hardy_z(d);
    while (b - a > 1e-7 && fc > 0 && fd > 0) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - ratio * (b - a);
        fc = sign * hardy_z(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + ratio * (b - a);
        fd = sign * hardy_z(d);
      }
    }
    const double t_min = fc <= fd ? c : d;
    const double f_min = std::min(fc, fd);
    if (f_min <= 0) {
      result.ordinates.push_back(bisect(ts[i - 1], zs[i - 1], t_min));
      result.ordinates.push_back(bisect(t_min, sign * f_min, ts[i + 1]));
    } else if (f_min < 1e-6) {
      result.unresolved.emplace_back(ts[i - 1], ts[i + 1]);
    }
  }
  std::sort(result.ordinates.begin(), result.ordinates.end());
  return result;
}

std::size_t count_N(const ZeroDataset& zeros, double T) {
  if (zeros.empty()) throw InsufficientData("count_N: zero dataset is empty");
  if (T > zeros.coverage()) {
    throw InsufficientData("count_N: T = " + std::to_string(T) + " beyond dataset coverage " +
                           std::to_string(zeros.coverage()));
  }
  const auto ord = zeros.ordinates();
  return static_cast<std::size_t>(std::upper_bound(ord.begin(), ord.end(), T) - ord.begin());
}

double main_term_M(double T) {
  if (!(T > 0)) throw DomainError("main_term_M requires T > 0");
  const double u = T / (2.0 * std::numbers::pi);
  return u * std::log(u) - u;
}

double q_bound(double T) {
  if (!(T >= std::numbers::e)) throw DomainError("q_bound requires T >= e");
  const double lt = std::log(T);
  return 0.137 * lt + 0.443 * std::log(lt) + 1.588;
}

CountReport check_schoenfeld(const ZeroDataset& zeros, double T) {
  CountReport report;
  report.T = T;
  report.N = count_N(zeros, T);
  report.M = main_term_M(T);
  report.Q = q_bound(T);
  report.slack = report.Q - std::abs(static_cast<double>(report.N) - report.M + 7.0 / 8.0);
  return report;
}

void write_count_csv_header(std::ostream& out) { out << "T,N,M,Q,slack\n"; }

void write_count_csv_row(std::ostream& out, const CountReport& row) {
  out << std::setprecision(12) << row.T << ',' << row.N << ',' << row.M << ',' << row.Q << ','
      << row.slack << '\n';
}

ShortIntervalReport short_interval_count(const ZeroDataset& zeros, double center, double d) {
  if (!(center >= 16.0)) throw InvalidArgument("short_interval_count: center must be >= 16");
  if (!(d > 0.0)) throw InvalidArgument("short_interval_count: d must be positive");
  if (!(center - d > std::numbers::e)) {
    throw InvalidArgument("short_interval_count: center - d must exceed e");
  }
  if (zeros.empty() || center + d > zeros.coverage()) {
    throw InsufficientData("short_interval_count: interval beyond dataset coverage");
  }
  const auto ord = zeros.ordinates();
  const auto lo = std::lower_bound(ord.begin(), ord.end(), center - d);
  const auto hi = std::upper_bound(ord.begin(), ord.end(), center + d);
  ShortIntervalReport r;
  r.center = center;
  r.d = d;
  r.count = static_cast<std::size_t>(hi - lo);
  r.lemma_bound = 7.0 * d / 22.0 * std::log(center);
  r.chain_bound = main_term_M(center + d) - main_term_M(center - d) + q_bound(center + d) +
                  q_bound(center - d);
  r.mvt_bound = d / std::numbers::pi *
                (std::log((center + d) / (2.0 * std::numbers::pi)) + 2.0 * std::numbers::pi + 1.0);
  return r;
}

double h_region(double t, int j, double theta, double t_j) {
  if (!(t > 0)) throw InvalidArgument("h_region requires t > 0");
  if (!(theta >= 2)) throw InvalidArgument("h_region requires theta >= 2");
  if (t <= t_j) return 0.5;
  return (3.1 + j / 8.0) * theta * std::log(t) / std::pow(t, theta);
}

double solve_tj_root(int j, double theta) {
  if (j < 0) throw InvalidArgument("solve_tj: j must be nonnegative");
  if (!(theta >= 2)) throw InvalidArgument("solve_tj: theta must be >= 2");
  const double c = 3.1 + j / 8.0;
  auto f = [&](double t) { return c * theta * std::log(t) - std::pow(t, theta); };
  // f peaks at t^theta = c where it equals c (log c - 1) > 0.
  double lo = std::pow(c, 1.0 / theta);
  double hi = 2.0 * lo;
  while (f(hi) > 0) hi *= 2.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double solve_tj(int j, double theta) { return std::max(kVerifiedHeight, solve_tj_root(j, theta)); }

ZeroFreeReport zero_free_consistency(const ZeroDataset& zeros, int j, double theta) {
  if (zeros.empty()) throw InsufficientData("zero_free_consistency: zero dataset is empty");
  ZeroFreeReport report;
  report.t_j = solve_tj(j, theta);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (double g : zeros.ordinates()) {
    const double margin = 0.5 - h_region(g, j, theta, report.t_j);
    if (g > report.t_j) ++report.above_t_j;
    if (margin < 0) ++report.violations;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.argmin = g;
    }
  }
  return report;
}

}  // namespace turanlab
