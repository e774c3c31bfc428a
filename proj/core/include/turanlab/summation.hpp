#pragma once

#include <complex>

namespace turanlab {

// Kahan-Babuska (Neumaier) compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace turanlab
