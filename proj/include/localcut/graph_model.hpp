#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "localcut/rng.hpp"

namespace localcut {

// Simple d-regular graph on vertices 0..n-1, adjacency stored flat with
// per-vertex neighbor lists sorted ascending.
struct Graph {
  std::int64_t n = 0;
  int d = 0;
  std::vector<std::uint32_t> adj;  // size n*d

  std::span<const std::uint32_t> neighbors(std::int64_t v) const {
    return {adj.data() + static_cast<std::size_t>(v) * d, static_cast<std::size_t>(d)};
  }
};

// Builds a graph from an undirected edge list; every vertex must end up with
// degree exactly d.  Rejects loops, parallel edges and out-of-range ids.
Graph graph_from_edges(std::int64_t n, int d,
                       const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

// Structural validation of an adjacency array (degree, symmetry, no loops,
// no repeats); throws on violation.
void validate_graph(const Graph& g);

enum class SampleMode {
  kReject,  // resample the pairing until it is simple (exact uniform)
  kErase,   // repair loops/multi-edges by switching random good edges
};

struct SampleMeta {
  std::int64_t attempts = 0;    // pairings drawn (reject mode)
  std::int64_t switchings = 0;  // repair operations (erase mode)
};

// Uniform random d-regular graph via the configuration model; n*d must be
// even and n > d.
Graph sample_regular_graph(std::int64_t n, int d, std::uint64_t seed,
                           SampleMode mode = SampleMode::kReject,
                           SampleMeta* meta = nullptr);

// Numbers of cycles per length 3..kmax (kmax <= 12: the census is meant for
// the short cycles governing local tree-likeness, and cost grows fast).
struct CycleCensus {
  int kmax = 0;
  std::vector<std::int64_t> count;  // count[k] for k in [3, kmax]

  std::int64_t of(int k) const { return count.at(k - 3); }
};

CycleCensus count_cycles(const Graph& g, int kmax);

// Limit mean of the k-cycle count in a random d-regular graph.
double poisson_cycle_mean(int d, int k);

// Fraction of vertices whose radius-R ball is a tree (edge count one less
// than vertex count).
double treelike_fraction(const Graph& g, int radius);

// Upper bound on the per-vertex difference between the graph process and the
// tree process, from the short-cycle census: cycles shorter than 2R+1 can
// influence at most k*(d-1)^(R-floor((k+1)/2)+...) vertices each within
// radius R.  Computed in log space and clamped to [0,1].
double error_upper_bound(const CycleCensus& census, int radius, int d,
                         std::int64_t n);

// Plain text: first line "n d", then one line "u v" per edge.
std::string graph_to_text(const Graph& g);
Graph graph_from_text(const std::string& text);

}  // namespace localcut
