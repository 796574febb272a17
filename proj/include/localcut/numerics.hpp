#pragma once

namespace localcut {

// Compensated accumulator. Long reductions over state masses must not lose
// mass at the 1e-12 level, so plain += is not enough.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace localcut
