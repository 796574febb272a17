#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "localcut/graph_model.hpp"

using namespace localcut;

namespace {

Graph make_k4() {
  return graph_from_edges(4, 3, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

Graph make_petersen() {
  // Outer 5-cycle, inner pentagram, spokes.
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
    e.push_back({i, 5 + i});
  }
  return graph_from_edges(10, 3, e);
}

Graph make_cycle(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return graph_from_edges(n, 2, e);
}

// Counts k-cycles by enumerating simple paths and dividing each cycle's
// 2k rotations/reflections out; independent of the census implementation.
std::int64_t oracle_cycles(const Graph& g, int k) {
  std::int64_t closed = 0;
  std::vector<char> used(static_cast<std::size_t>(g.n), 0);
  std::vector<std::int64_t> path;
  auto extend = [&](auto&& self, std::int64_t v) -> void {
    if (static_cast<int>(path.size()) == k) {
      for (auto w : g.neighbors(v))
        if (w == path.front()) ++closed;
      return;
    }
    for (auto w : g.neighbors(v)) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (std::int64_t s = 0; s < g.n; ++s) {
    used[s] = 1;
    path.assign(1, s);
    extend(extend, s);
    used[s] = 0;
  }
  return closed / (2 * k);
}

}  // namespace

TEST_SUITE_BEGIN("graph_model");

TEST_CASE("graph_from_edges validates shape and sorts neighbors") {
  Graph k4 = make_k4();
  CHECK(k4.n == 4);
  CHECK(k4.d == 3);
  validate_graph(k4);
  auto nb = k4.neighbors(2);
  CHECK(std::is_sorted(nb.begin(), nb.end()));
  CHECK(std::vector<std::uint32_t>(nb.begin(), nb.end()) ==
        std::vector<std::uint32_t>{0, 1, 3});

  CHECK_THROWS_AS(graph_from_edges(2, 1, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edges(2, 2, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edges(3, 2, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edges(3, 1, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("cycle census on the named fixtures") {
  CycleCensus k4 = count_cycles(make_k4(), 4);
  CHECK(k4.of(3) == 4);
  CHECK(k4.of(4) == 3);

  CycleCensus pet = count_cycles(make_petersen(), 5);
  CHECK(pet.of(3) == 0);
  CHECK(pet.of(4) == 0);
  CHECK(pet.of(5) == 12);

  CycleCensus c8 = count_cycles(make_cycle(8), 12);
  for (int k = 3; k <= 12; ++k) CHECK(c8.of(k) == (k == 8 ? 1 : 0));

  CHECK_THROWS_AS(count_cycles(make_k4(), 2), std::invalid_argument);
  CHECK_THROWS_AS(count_cycles(make_k4(), 13), std::invalid_argument);
}

TEST_CASE("cycle census matches the path-enumeration oracle on random graphs") {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    Graph g = sample_regular_graph(12, 3, seed);
    CycleCensus c = count_cycles(g, 12);
    for (int k = 3; k <= 12; ++k) CHECK(c.of(k) == oracle_cycles(g, k));
  }
  // Denser case exercises the path pruning harder.
  Graph g = sample_regular_graph(10, 5, 99);
  CycleCensus c = count_cycles(g, 8);
  for (int k = 3; k <= 8; ++k) CHECK(c.of(k) == oracle_cycles(g, k));
}

TEST_CASE("poisson limit means") {
  CHECK(poisson_cycle_mean(5, 3) == doctest::Approx(32.0 / 3.0));
  CHECK(poisson_cycle_mean(5, 4) == doctest::Approx(32.0));
  CHECK(poisson_cycle_mean(3, 3) == doctest::Approx(8.0 / 6.0));
}

TEST_CASE("sampler produces valid simple regular graphs in both modes") {
  for (SampleMode mode : {SampleMode::kReject, SampleMode::kErase}) {
    SampleMeta meta;
    Graph g = sample_regular_graph(200, 5, 7, mode, &meta);
    validate_graph(g);
    CHECK(g.n == 200);
    if (mode == SampleMode::kReject) CHECK(meta.attempts >= 1);
  }

  // Determinism: one seed, one graph.
  Graph a = sample_regular_graph(100, 3, 42, SampleMode::kErase);
  Graph b = sample_regular_graph(100, 3, 42, SampleMode::kErase);
  CHECK(a.adj == b.adj);
  Graph c = sample_regular_graph(100, 3, 43, SampleMode::kErase);
  CHECK(a.adj != c.adj);

  CHECK_THROWS_AS(sample_regular_graph(5, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_regular_graph(7, 3, 1), std::invalid_argument);  // odd nd
  CHECK_THROWS_AS(sample_regular_graph(10, 2, 1), std::invalid_argument);
}

TEST_CASE("treelike fraction on fixtures") {
  CHECK(treelike_fraction(make_k4(), 1) == doctest::Approx(0.0));
  CHECK(treelike_fraction(make_petersen(), 1) == doctest::Approx(1.0));
  CHECK(treelike_fraction(make_petersen(), 2) == doctest::Approx(0.0));
  CHECK(treelike_fraction(make_cycle(10), 2) == doctest::Approx(1.0));
  CHECK(treelike_fraction(make_cycle(10), 4) == doctest::Approx(1.0));
  CHECK(treelike_fraction(make_cycle(10), 5) == doctest::Approx(0.0));
}

TEST_CASE("error bound from the census") {
  CycleCensus c;
  c.kmax = 3;
  c.count = {1};  // one triangle
  CHECK(error_upper_bound(c, 3, 5, 1000) == doctest::Approx(0.012));

  // No short cycles, no error.
  CycleCensus empty;
  empty.kmax = 5;
  empty.count = {0, 0, 0};
  CHECK(error_upper_bound(empty, 4, 5, 1000) == 0.0);

  // Overwhelming cycle counts clamp to 1.
  CycleCensus big;
  big.kmax = 3;
  big.count = {1000000};
  CHECK(error_upper_bound(big, 10, 5, 10) == 1.0);
}

TEST_CASE("text round trip") {
  Graph g = sample_regular_graph(30, 4, 5);
  std::string text = graph_to_text(g);
  Graph h = graph_from_text(text);
  CHECK(h.n == g.n);
  CHECK(h.d == g.d);
  CHECK(h.adj == g.adj);

  CHECK_THROWS_AS(graph_from_text("3 2\n0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_text(""), std::invalid_argument);
}

TEST_SUITE_END();
