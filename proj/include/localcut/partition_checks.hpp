#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "localcut/graph_model.hpp"

namespace localcut {

// Two-class vertex partition, encoded as a side flag per vertex.
struct Partition {
  std::vector<std::uint8_t> side;  // 0 or 1

  std::int64_t n() const { return static_cast<std::int64_t>(side.size()); }
  std::pair<std::int64_t, std::int64_t> class_sizes() const {
    std::int64_t b = 0;
    for (auto s : side) b += s != 0;
    return {n() - b, b};
  }
};

struct Violation {
  std::int64_t vertex = 0;
  int own = 0;    // neighbors in the vertex's class
  int other = 0;  // neighbors across

  bool operator==(const Violation& o) const {
    return vertex == o.vertex && own == o.own && other == o.other;
  }
};

// A partition is internal when both classes are nonempty and every vertex
// has at least as many neighbors on its own side as on the other.
struct InternalCheck {
  bool ok = false;
  bool empty_class = false;  // failure reason distinct from vertex violations
  std::vector<Violation> violations;
};

InternalCheck check_internal(const Graph& g, const Partition& p);

// Hill climb on the total deficit sum(max(0, other - own)) by single-vertex
// moves that keep both classes nonempty.  Improving moves are chosen at
// random among the best; plateau (zero-delta) moves are limited to
// max_sideways in total.  Returns a partition that passes check_internal,
// or nothing within the move budget.
std::optional<Partition> internal_search(const Graph& g, const Partition& start,
                                         std::int64_t max_moves,
                                         std::uint64_t seed,
                                         int max_sideways = 100);

// Exhaustive certificate over all bipartitions (vertex 0's side fixed);
// intended for fixtures, n <= 20.
std::optional<Partition> exhaustive_internal_partition(const Graph& g);

}  // namespace localcut
