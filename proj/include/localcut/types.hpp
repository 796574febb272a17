#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace localcut {

enum class Color : std::uint8_t { kUncolored = 0, kRed = 1, kBlue = 2 };

inline Color opposite(Color c) {
  if (c == Color::kRed) return Color::kBlue;
  if (c == Color::kBlue) return Color::kRed;
  return Color::kUncolored;
}

// An uncolored vertex's type: counts of red and blue colored neighbors,
// stored unordered as lo <= hi.  The pair forgets which color is which,
// matching the red/blue exchange symmetry of the process.
struct VertexType {
  int lo = 0;
  int hi = 0;

  VertexType() = default;
  VertexType(int a, int b) : lo(a < b ? a : b), hi(a < b ? b : a) {
    if (a < 0 || b < 0) throw std::invalid_argument("VertexType: negative count");
  }

  int diff() const { return hi - lo; }
  bool symmetric() const { return lo == hi; }

  bool operator==(const VertexType& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const VertexType& o) const { return !(*this == o); }
  // Container ordering only; unrelated to greedy priority.
  bool operator<(const VertexType& o) const {
    return lo != o.lo ? lo < o.lo : hi < o.hi;
  }
};

// A type with colors attached; used when a concrete vertex's red/blue counts
// matter (orientation of the coloring rule).
struct OrientedType {
  int red = 0;
  int blue = 0;

  VertexType unordered() const { return VertexType(red, blue); }
};

enum class Ordering { kLess, kEqual, kGreater };

// Greedy priority: a type is "later" (higher priority) when its imbalance
// hi-lo is larger, ties broken by larger lo.  Priority-max means most
// imbalanced, then most saturated.
inline Ordering priority_compare(const VertexType& a, const VertexType& b) {
  if (a.diff() != b.diff()) {
    return a.diff() < b.diff() ? Ordering::kLess : Ordering::kGreater;
  }
  if (a.lo != b.lo) return a.lo < b.lo ? Ordering::kLess : Ordering::kGreater;
  return Ordering::kEqual;
}

// Symmetric types admit one coloring rule, asymmetric ones two (mirror pair).
inline int multiplicity(const VertexType& t) { return t.symmetric() ? 1 : 2; }

// Highest-priority type whose mass is at least eps (exact >= on doubles).
// Returns nullopt when no type qualifies, which ends the first phase.
inline std::optional<VertexType> dominant_type(
    const std::vector<std::pair<VertexType, double>>& masses, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("dominant_type: eps must be > 0");
  std::optional<VertexType> best;
  for (const auto& [type, mass] : masses) {
    if (mass < 0.0) throw std::invalid_argument("dominant_type: negative mass");
    if (mass >= eps) {
      if (!best || priority_compare(*best, type) == Ordering::kLess) best = type;
    }
  }
  return best;
}

// Everything a single evolution step depends on, recorded so a run can be
// replayed on a graph without re-deriving thresholds.
struct StepParams {
  int t = 0;  // 1-based step index
  VertexType dominant;
  int multiplicity = 0;
  double q = 0.0;
  double q_hat = 0.0;

  void validate(int d) const {
    if (t < 1) throw std::invalid_argument("StepParams: t must be >= 1");
    if (multiplicity != 1 && multiplicity != 2)
      throw std::invalid_argument("StepParams: multiplicity must be 1 or 2");
    if (multiplicity != localcut::multiplicity(dominant))
      throw std::invalid_argument("StepParams: multiplicity inconsistent with type");
    if (dominant.lo + dominant.hi > d)
      throw std::invalid_argument("StepParams: dominant type exceeds degree");
    if (!(q >= 0.0) || !(q_hat >= 0.0))
      throw std::invalid_argument("StepParams: thresholds must be >= 0");
    if (multiplicity == 1 && !(2.0 * q <= 1.0))
      throw std::invalid_argument("StepParams: 2q must be <= 1 for symmetric type");
    if (multiplicity == 2 && !(q <= 1.0))
      throw std::invalid_argument("StepParams: q must be <= 1");
    if (!(2.0 * q_hat <= 1.0))
      throw std::invalid_argument("StepParams: 2*q_hat must be <= 1");
  }
};

}  // namespace localcut
