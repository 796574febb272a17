#include "localcut/partition_checks.hpp"

#include <algorithm>
#include <stdexcept>

#include "localcut/rng.hpp"

namespace localcut {

namespace {

int own_neighbors(const Graph& g, const Partition& p, std::int64_t v) {
  int own = 0;
  for (std::uint32_t u : g.neighbors(v)) own += p.side[u] == p.side[v];
  return own;
}

}  // namespace

InternalCheck check_internal(const Graph& g, const Partition& p) {
  if (p.n() != g.n) throw std::invalid_argument("check_internal: size mismatch");
  InternalCheck res;
  auto [a, b] = p.class_sizes();
  if (a == 0 || b == 0) {
    res.empty_class = true;
    return res;
  }
  for (std::int64_t v = 0; v < g.n; ++v) {
    int own = own_neighbors(g, p, v);
    int other = g.d - own;
    if (own < other) res.violations.push_back({v, own, other});
  }
  res.ok = res.violations.empty();
  return res;
}

std::optional<Partition> internal_search(const Graph& g, const Partition& start,
                                         std::int64_t max_moves,
                                         std::uint64_t seed, int max_sideways) {
  if (start.n() != g.n)
    throw std::invalid_argument("internal_search: size mismatch");
  Partition p = start;
  auto sizes = p.class_sizes();
  if (sizes.first == 0 || sizes.second == 0) return std::nullopt;

  // own[v] and the total deficit are maintained incrementally.
  std::vector<int> own(static_cast<std::size_t>(g.n));
  std::int64_t deficit = 0;
  auto vertex_deficit = [&](std::int64_t v) {
    return std::max(0, g.d - 2 * own[v]);
  };
  for (std::int64_t v = 0; v < g.n; ++v) {
    own[v] = own_neighbors(g, p, v);
    deficit += vertex_deficit(v);
  }

  CounterRng rng(seed);
  RngStream stream(rng, Purpose::kInternalSearch, 0);
  std::vector<std::int64_t> best_moves;
  int sideways_left = max_sideways;

  for (std::int64_t move = 0; move < max_moves && deficit > 0; ++move) {
    // Score every legal single-vertex move; keep the joint best.
    std::int64_t best_delta = 1;
    best_moves.clear();
    for (std::int64_t v = 0; v < g.n; ++v) {
      bool from_b = p.side[v] != 0;
      if ((from_b ? sizes.second : sizes.first) <= 1) continue;
      std::int64_t delta = -vertex_deficit(v);
      delta += std::max(0, 2 * own[v] - g.d);  // v's own count flips to d - own
      for (std::uint32_t u : g.neighbors(v)) {
        int now = std::max(0, g.d - 2 * own[u]);
        int then = p.side[u] == p.side[v] ? std::max(0, g.d - 2 * (own[u] - 1))
                                          : std::max(0, g.d - 2 * (own[u] + 1));
        delta += then - now;
      }
      if (delta < best_delta) {
        best_delta = delta;
        best_moves.assign(1, v);
      } else if (delta == best_delta) {
        best_moves.push_back(v);
      }
    }
    if (best_moves.empty()) return std::nullopt;  // strictly uphill everywhere
    if (best_delta == 0) {
      if (sideways_left == 0) return std::nullopt;
      --sideways_left;
    }

    std::int64_t v = best_moves[stream.below(best_moves.size())];
    for (std::uint32_t u : g.neighbors(v))
      own[u] += p.side[u] == p.side[v] ? -1 : 1;
    own[v] = g.d - own[v];
    if (p.side[v] != 0) {
      p.side[v] = 0;
      --sizes.second;
      ++sizes.first;
    } else {
      p.side[v] = 1;
      ++sizes.second;
      --sizes.first;
    }
    deficit += best_delta;
  }

  if (deficit != 0) return std::nullopt;
  InternalCheck certify = check_internal(g, p);
  if (!certify.ok) return std::nullopt;  // defensive: never hand back unchecked
  return p;
}

std::optional<Partition> exhaustive_internal_partition(const Graph& g) {
  if (g.n > 20)
    throw std::invalid_argument("exhaustive_internal_partition: n too large");
  Partition p;
  p.side.assign(static_cast<std::size_t>(g.n), 0);
  // Vertex 0 stays in class 0: sides are interchangeable.
  const std::uint64_t limit = 1ull << (g.n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    for (std::int64_t v = 1; v < g.n; ++v)
      p.side[v] = (mask >> (v - 1)) & 1;
    if (check_internal(g, p).ok) return p;
  }
  return std::nullopt;
}

}  // namespace localcut
