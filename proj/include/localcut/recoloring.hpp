#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "localcut/graph_model.hpp"
#include "localcut/local_coloring.hpp"

namespace localcut {

enum class MiscolorCriterion {
  kTerminal,  // own color loses the neighbor majority
  kStrict,    // additionally: committed at an asymmetric step and the
              // minority is minimal — type exactly (floor(d/2), ceil(d/2))
};

// Miscolored vertices split by class: (red ones, blue ones), each ascending.
// Requires a fully colored assignment.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> miscolored_sets(
    const Graph& g, const ColoringAssignment& coloring,
    MiscolorCriterion criterion);

// Bipartite graph between the two miscolored classes.  Edges are exactly the
// host-graph edges with one endpoint on each side; same-side adjacencies are
// not represented.
struct ConflictGraph {
  std::vector<std::int64_t> left;   // red side, ascending host ids
  std::vector<std::int64_t> right;  // blue side, ascending host ids
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // (left, right), sorted

  std::int64_t order() const {
    return static_cast<std::int64_t>(left.size() + right.size());
  }
  int max_degree() const;
  // Share of vertices (both sides) with no conflict edge; 0 on empty graph.
  double isolated_fraction() const;
};

ConflictGraph build_conflict_graph(const Graph& g,
                                   const std::vector<std::int64_t>& left,
                                   const std::vector<std::int64_t>& right);

// A balanced independent set of the conflict graph: the vertices to flip.
struct SwapSet {
  std::vector<std::int64_t> red_to_blue;  // subset of left, ascending
  std::vector<std::int64_t> blue_to_red;  // subset of right, same size

  std::int64_t size_per_side() const {
    return static_cast<std::int64_t>(red_to_blue.size());
  }
};

enum class SwapStrategy {
  kGreedy,  // random-order greedy independent set, larger side trimmed at
            // random; 8 restarts, best kept
  kExact,   // maximum balanced independent set by branch and bound; only for
            // conflict graphs with at most 30 vertices
};

SwapSet find_balanced_independent_set(const ConflictGraph& cg,
                                      SwapStrategy strategy,
                                      std::uint64_t seed);

struct SwapOutcome {
  ColoringAssignment coloring;
  // Cut change of each flip in application order (red side ascending, then
  // blue side ascending); every entry is <= -1.
  std::vector<std::int64_t> deltas;
};

// Flips the swap set one vertex at a time.  The set is checked before any
// mutation: balanced, correctly colored, no duplicates, and independent
// (no host edge from red_to_blue to blue_to_red).  Each flip must strictly
// decrease the cut; a non-decreasing flip aborts the application.
SwapOutcome apply_swaps(const Graph& g, const ColoringAssignment& coloring,
                        const SwapSet& swaps);

struct RecolorReport {
  MiscolorCriterion criterion = MiscolorCriterion::kStrict;
  std::int64_t left_size = 0;
  std::int64_t right_size = 0;
  int conflict_max_degree = 0;
  double isolated_fraction = 0.0;
  std::int64_t swap_size = 0;  // per side
  std::int64_t cut_before = 0;
  std::int64_t cut_after = 0;
  std::vector<std::int64_t> deltas;
  // Guaranteed-bihole yardstick: bihole_fraction(max degree) * min side,
  // when the degree has a known constant and both sides are large enough to
  // make the asymptotic statement meaningful; 0 otherwise.
  double bihole_benchmark = 0.0;
  ColoringAssignment coloring;  // after the swaps
};

// Full terminal phase: miscolored sets -> conflict graph -> balanced
// independent set -> swaps, with the bookkeeping the report needs.
RecolorReport recolor(const Graph& g, const ColoringAssignment& coloring,
                      MiscolorCriterion criterion, SwapStrategy strategy,
                      std::uint64_t seed);

struct RaiseOutcome {
  std::int64_t aligned_red = 0;   // candidates per class
  std::int64_t aligned_blue = 0;
  std::int64_t swap_size = 0;     // per side
  std::int64_t cut_before = 0;
  std::int64_t cut_after = 0;
  std::vector<std::int64_t> deltas;  // per flip, each >= +1
  ColoringAssignment coloring;
};

// Cut-raising mirror of recolor: flips red/blue pairs of vertices that agree
// with a strict neighborhood majority, highest gain first, so every single
// flip adds at least one cut edge and the class sizes are preserved.  When
// one class runs out of agreeing vertices, a flip can be paired with an
// opposite-color neighbor that the flip itself pushes into the majority.
// Greedy with seeded restarts keeping the best final cut.
RaiseOutcome raise_cut(const Graph& g, const ColoringAssignment& coloring,
                       std::uint64_t seed);

// Mirror of balance_repair for the cut-raising direction: flip surplus-class
// vertices until the class sizes differ by at most one, taking the largest
// cut gain available at each move instead of a uniform pick.
RepairResult balance_repair_raising(const Graph& g,
                                    const ColoringAssignment& coloring,
                                    std::uint64_t seed);

}  // namespace localcut
