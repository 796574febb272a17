#include "localcut/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace localcut {
namespace {

std::uint64_t edge_key(std::int64_t n, std::int64_t u, std::int64_t v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
         static_cast<std::uint64_t>(v);
}

}  // namespace

Graph graph_from_edges(std::int64_t n, int d,
                       const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  if (n <= 0 || d < 1) throw std::invalid_argument("graph_from_edges: bad n or d");
  Graph g;
  g.n = n;
  g.d = d;
  g.adj.assign(static_cast<std::size_t>(n) * d, 0);
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph_from_edges: vertex out of range");
    if (u == v) throw std::invalid_argument("graph_from_edges: self-loop");
    if (!seen.insert(edge_key(n, u, v)).second)
      throw std::invalid_argument("graph_from_edges: parallel edge");
    if (deg[u] >= d || deg[v] >= d)
      throw std::invalid_argument("graph_from_edges: degree exceeds d");
    g.adj[static_cast<std::size_t>(u) * d + deg[u]++] = static_cast<std::uint32_t>(v);
    g.adj[static_cast<std::size_t>(v) * d + deg[v]++] = static_cast<std::uint32_t>(u);
  }
  for (std::int64_t v = 0; v < n; ++v) {
    if (deg[v] != d) throw std::invalid_argument("graph_from_edges: vertex of wrong degree");
    auto* row = g.adj.data() + static_cast<std::size_t>(v) * d;
    std::sort(row, row + d);
  }
  return g;
}

void validate_graph(const Graph& g) {
  if (g.n <= 0 || g.d < 1 || g.adj.size() != static_cast<std::size_t>(g.n) * g.d)
    throw std::runtime_error("validate_graph: shape mismatch");
  for (std::int64_t v = 0; v < g.n; ++v) {
    auto nb = g.neighbors(v);
    for (int i = 0; i < g.d; ++i) {
      std::uint32_t u = nb[i];
      if (u >= static_cast<std::uint64_t>(g.n)) throw std::runtime_error("validate_graph: id out of range");
      if (static_cast<std::int64_t>(u) == v) throw std::runtime_error("validate_graph: self-loop");
      if (i > 0 && nb[i] <= nb[i - 1])
        throw std::runtime_error("validate_graph: unsorted or repeated neighbor");
      auto back = g.neighbors(u);
      if (!std::binary_search(back.begin(), back.end(), static_cast<std::uint32_t>(v)))
        throw std::runtime_error("validate_graph: asymmetric adjacency");
    }
  }
}

namespace {

// Pair consecutive stubs after a shuffle; stub i belongs to vertex i/d.
std::vector<std::pair<std::int64_t, std::int64_t>> pair_stubs(
    const std::vector<std::uint32_t>& stubs, int d) {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i < stubs.size(); i += 2)
    edges.emplace_back(stubs[i] / d, stubs[i + 1] / d);
  return edges;
}

bool pairing_simple(std::int64_t n,
                    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) return false;
    if (!seen.insert(edge_key(n, u, v)).second) return false;
  }
  return true;
}

}  // namespace

Graph sample_regular_graph(std::int64_t n, int d, std::uint64_t seed,
                           SampleMode mode, SampleMeta* meta) {
  if (d < 3) throw std::invalid_argument("sample_regular_graph: d < 3");
  if (n <= d) throw std::invalid_argument("sample_regular_graph: n <= d");
  if ((n * d) % 2 != 0) throw std::invalid_argument("sample_regular_graph: n*d odd");

  CounterRng rng(seed);
  RngStream stream(rng, Purpose::kGraphSample, static_cast<std::uint64_t>(mode));
  std::vector<std::uint32_t> stubs(static_cast<std::size_t>(n) * d);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<std::uint32_t>(i);

  SampleMeta local;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;

  if (mode == SampleMode::kReject) {
    do {
      ++local.attempts;
      stream.shuffle(stubs);
      edges = pair_stubs(stubs, d);
    } while (!pairing_simple(n, edges));
  } else {
    ++local.attempts;
    stream.shuffle(stubs);
    edges = pair_stubs(stubs, d);
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (u == v || !present.insert(edge_key(n, u, v)).second) bad.push_back(i);
    }
    // Each switching swaps one endpoint of a defective edge with a uniformly
    // chosen edge, accepted only when the two replacement edges are fresh and
    // loop-free; degrees are conserved throughout.
    while (!bad.empty()) {
      std::size_t bi = bad.back();
      auto [a, b] = edges[bi];
      std::size_t oi = static_cast<std::size_t>(stream.below(edges.size()));
      ++local.switchings;
      if (oi == bi) continue;
      auto [c, e] = edges[oi];
      if (a == c || b == e) continue;
      std::uint64_t k1 = edge_key(n, a, c), k2 = edge_key(n, b, e);
      if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
      bool other_was_good = true;
      {
        // The partner edge may itself be defective (loop/duplicate); only
        // good edges own an entry in `present`.
        std::uint64_t ko = edge_key(n, c, e);
        if (c == e || !present.count(ko)) {
          other_was_good = false;
        } else {
          present.erase(ko);
        }
      }
      present.insert(k1);
      present.insert(k2);
      edges[bi] = {a, c};
      edges[oi] = {b, e};
      bad.pop_back();
      if (!other_was_good) {
        // The partner slot now holds a good edge; drop it from the queue.
        bad.erase(std::remove(bad.begin(), bad.end(), oi), bad.end());
      }
    }
  }

  if (meta) *meta = local;
  return graph_from_edges(n, d, edges);
}

CycleCensus count_cycles(const Graph& g, int kmax) {
  if (kmax < 3 || kmax > 12) throw std::invalid_argument("count_cycles: kmax out of [3,12]");
  CycleCensus census;
  census.kmax = kmax;
  census.count.assign(static_cast<std::size_t>(kmax) - 2, 0);

  // Every cycle is found exactly once: rooted at its smallest vertex, with
  // the second path vertex smaller than the last (fixes direction).
  std::vector<std::uint32_t> path;
  std::vector<char> on_path(static_cast<std::size_t>(g.n), 0);
  for (std::int64_t s = 0; s < g.n; ++s) {
    path.assign(1, static_cast<std::uint32_t>(s));
    on_path[s] = 1;
    auto dfs = [&](auto&& self, std::uint32_t v, int depth) -> void {
      for (std::uint32_t u : g.neighbors(v)) {
        if (u == static_cast<std::uint32_t>(s) && depth >= 3 && path[1] < v)
          ++census.count[depth - 3];
        if (u > static_cast<std::uint32_t>(s) && !on_path[u] && depth < kmax) {
          on_path[u] = 1;
          path.push_back(u);
          self(self, u, depth + 1);
          path.pop_back();
          on_path[u] = 0;
        }
      }
    };
    dfs(dfs, static_cast<std::uint32_t>(s), 1);
    on_path[s] = 0;
  }
  return census;
}

double poisson_cycle_mean(int d, int k) {
  if (d < 3 || k < 3) throw std::invalid_argument("poisson_cycle_mean: d or k out of range");
  return std::pow(static_cast<double>(d - 1), k) / (2.0 * k);
}

double treelike_fraction(const Graph& g, int radius) {
  if (radius < 1) throw std::invalid_argument("treelike_fraction: radius < 1");
  std::vector<std::int32_t> mark(static_cast<std::size_t>(g.n), -1);
  std::vector<std::uint32_t> ball;
  std::vector<int> dist;
  std::int64_t treelike = 0;
  for (std::int64_t v = 0; v < g.n; ++v) {
    ball.assign(1, static_cast<std::uint32_t>(v));
    dist.assign(1, 0);
    mark[v] = static_cast<std::int32_t>(v);
    for (std::size_t head = 0; head < ball.size(); ++head) {
      if (dist[head] == radius) break;  // BFS order: all deeper entries follow
      for (std::uint32_t u : g.neighbors(ball[head])) {
        if (mark[u] == static_cast<std::int32_t>(v)) continue;
        mark[u] = static_cast<std::int32_t>(v);
        ball.push_back(u);
        dist.push_back(dist[head] + 1);
      }
    }
    // The ball is connected, so it induces a tree iff edges = vertices - 1.
    std::int64_t induced_twice = 0;
    for (std::uint32_t u : ball)
      for (std::uint32_t w : g.neighbors(u))
        if (mark[w] == static_cast<std::int32_t>(v)) ++induced_twice;
    if (induced_twice / 2 == static_cast<std::int64_t>(ball.size()) - 1) ++treelike;
  }
  return static_cast<double>(treelike) / static_cast<double>(g.n);
}

double error_upper_bound(const CycleCensus& census, int radius, int d,
                         std::int64_t n) {
  if (radius < 1 || d < 3 || n <= 0)
    throw std::invalid_argument("error_upper_bound: bad arguments");
  // Each k-cycle can disturb at most k*(d-1)^(R - floor((k+1)/2)) vertices
  // within radius R; accumulate in log space since R may be huge.
  double total = 0.0;
  double log_base = std::log(static_cast<double>(d - 1));
  for (int k = 3; k <= census.kmax; ++k) {
    std::int64_t x = census.of(k);
    if (x == 0) continue;
    int expo = radius - (k + 1) / 2;
    double log_term = std::log(static_cast<double>(x)) + std::log(static_cast<double>(k)) +
                      expo * log_base - std::log(static_cast<double>(n));
    if (log_term >= 0.0) return 1.0;
    total += std::exp(log_term);
    if (total >= 1.0) return 1.0;
  }
  return std::min(total, 1.0);
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.d << '\n';
  for (std::int64_t v = 0; v < g.n; ++v)
    for (std::uint32_t u : g.neighbors(v))
      if (static_cast<std::int64_t>(u) > v) out << v << ' ' << u << '\n';
  return out.str();
}

Graph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  std::int64_t n = 0;
  int d = 0;
  if (!(in >> n >> d)) throw std::invalid_argument("graph_from_text: missing header");
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::int64_t u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  if (!in.eof()) throw std::invalid_argument("graph_from_text: trailing garbage");
  return graph_from_edges(n, d, edges);
}

}  // namespace localcut
