#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "localcut/tree_state.hpp"
#include "localcut/types.hpp"

namespace localcut {

// Probability measure over depth-2 states, stored dense: one double per
// (root status, multiset rank).  Dense layout keeps the evolution kernel a
// flat sweep; at d=6 this is ~15 MB, still cheap.
class Measure {
 public:
  explicit Measure(int d);

  // Point mass on the all-uncolored state (root open, all neighbors open
  // with no colored outer vertices).
  static Measure initial(int d);

  int degree() const { return d_; }
  const StateSpace& space() const { return *space_; }

  double& at(RootStatus root, std::int64_t rank) {
    return mass_[static_cast<std::size_t>(static_cast<int>(root)) * num_ranks_ + rank];
  }
  double at(RootStatus root, std::int64_t rank) const {
    return mass_[static_cast<std::size_t>(static_cast<int>(root)) * num_ranks_ + rank];
  }

  double mass_of(const TreeState& s) const { return at(s.root, space_->rank_of(s)); }
  void set_mass(const TreeState& s, double m) { at(s.root, space_->rank_of(s)) = m; }

  std::vector<double>& data() { return mass_; }
  const std::vector<double>& data() const { return mass_; }
  std::int64_t num_ranks() const { return num_ranks_; }

  double total_mass() const;
  double uncolored_root_mass() const;
  // Probability that the root is uncolored, conditioned on nothing: mass of
  // states whose unordered colored-neighbor tally equals `type`.
  double root_type_mass(const VertexType& type) const;
  std::vector<std::pair<VertexType, double>> root_type_masses() const;
  // P(root uncolored AND a uniformly chosen neighbor uncolored).
  double uncolored_edge_mass() const;
  double root_red_mass() const;
  // Mean fraction of colored-red neighbors over all states; equals the red
  // root mass whenever the measure is exchangeable along edges.
  double neighbor_red_marginal() const;
  // Largest |mass(s) - mass(swap(s))| over all states.
  double max_color_asymmetry() const;
  bool fully_colored(double tol) const;
  void prune_below(double threshold);

  void for_each(const std::function<void(RootStatus, std::int64_t, double)>& fn) const;

 private:
  int d_;
  const StateSpace* space_;
  std::int64_t num_ranks_;
  std::vector<double> mass_;
};

}  // namespace localcut
