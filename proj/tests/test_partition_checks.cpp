#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "localcut/partition_checks.hpp"

using namespace localcut;

namespace {

Graph make_k4() {
  return graph_from_edges(4, 3, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

Graph make_k33() {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) e.push_back({i, j});
  return graph_from_edges(6, 3, e);
}

Graph make_cycle(int n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return graph_from_edges(n, 2, e);
}

Partition sides(std::vector<std::uint8_t> s) { return Partition{std::move(s)}; }

}  // namespace

TEST_SUITE_BEGIN("partition_checks");

TEST_CASE("check_internal on the named fixtures") {
  // K4, any 2+2 split: one own against two others, everywhere.
  InternalCheck k4 = check_internal(make_k4(), sides({0, 0, 1, 1}));
  CHECK(!k4.ok);
  CHECK(!k4.empty_class);
  REQUIRE(k4.violations.size() == 4);
  for (const auto& v : k4.violations) {
    CHECK(v.own == 1);
    CHECK(v.other == 2);
  }

  // C4 as two adjacent pairs: balanced one-and-one at every vertex.
  InternalCheck c4 = check_internal(make_cycle(4), sides({0, 0, 1, 1}));
  CHECK(c4.ok);
  CHECK(c4.violations.empty());

  // C4 as opposite corners: everybody is surrounded.
  InternalCheck x4 = check_internal(make_cycle(4), sides({0, 1, 0, 1}));
  CHECK(!x4.ok);
  CHECK(x4.violations.size() == 4);

  // K33 split along its sides: zero own neighbors anywhere.
  InternalCheck k33 = check_internal(make_k33(), sides({0, 0, 0, 1, 1, 1}));
  CHECK(!k33.ok);
  REQUIRE(k33.violations.size() == 6);
  CHECK(k33.violations[0] == Violation{0, 0, 3});
}

TEST_CASE("empty class is a distinguished failure") {
  InternalCheck r = check_internal(make_k4(), sides({0, 0, 0, 0}));
  CHECK(!r.ok);
  CHECK(r.empty_class);
  CHECK(r.violations.empty());
}

TEST_CASE("check_internal is symmetric in the two classes") {
  Graph g = make_k33();
  Partition p = sides({0, 1, 0, 1, 0, 1});
  Partition q = p;
  for (auto& s : q.side) s ^= 1;
  InternalCheck a = check_internal(g, p);
  InternalCheck b = check_internal(g, q);
  CHECK(a.ok == b.ok);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i)
    CHECK(a.violations[i] == b.violations[i]);
}

TEST_CASE("exhaustive certificates for the small fixtures") {
  CHECK(!exhaustive_internal_partition(make_k4()).has_value());
  CHECK(!exhaustive_internal_partition(make_k33()).has_value());

  auto c4 = exhaustive_internal_partition(make_cycle(4));
  REQUIRE(c4.has_value());
  CHECK(check_internal(make_cycle(4), *c4).ok);

  // Two triangles joined by nothing is not 3-regular; use K4 plus K4 via
  // a disjoint union instead: each side keeps all its neighbors.
  std::vector<std::pair<std::int64_t, std::int64_t>> e;
  for (int base : {0, 4})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) e.push_back({base + i, base + j});
  Graph two_k4 = graph_from_edges(8, 3, e);
  auto split = exhaustive_internal_partition(two_k4);
  REQUIRE(split.has_value());
  CHECK(check_internal(two_k4, *split).ok);
}

TEST_CASE("internal_search returns an already-internal start unchanged") {
  Graph g = make_cycle(4);
  Partition start = sides({0, 0, 1, 1});
  auto found = internal_search(g, start, 100, 7);
  REQUIRE(found.has_value());
  CHECK(found->side == start.side);
}

TEST_CASE("internal_search cannot succeed where no partition exists") {
  Graph k4 = make_k4();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CHECK(!internal_search(k4, sides({0, 0, 1, 1}), 1000, seed).has_value());
    CHECK(!internal_search(k4, sides({0, 1, 1, 1}), 1000, seed).has_value());
  }
  Graph k33 = make_k33();
  CHECK(!internal_search(k33, sides({0, 0, 0, 1, 1, 1}), 1000, 3).has_value());
}

TEST_CASE("internal_search climbs out of a bad start") {
  Graph g = make_cycle(8);
  // Alternating sides: maximal deficit everywhere.
  auto found = internal_search(g, sides({0, 1, 0, 1, 0, 1, 0, 1}), 200, 9);
  REQUIRE(found.has_value());
  CHECK(check_internal(g, *found).ok);
}

TEST_CASE("internal_search certificate holds on random regular graphs") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u}) {
    Graph g = sample_regular_graph(60, 4, seed, SampleMode::kErase);
    Partition start;
    start.side.assign(60, 0);
    for (int v = 30; v < 60; ++v) start.side[v] = 1;
    auto found = internal_search(g, start, 5000, seed);
    if (found) {
      InternalCheck c = check_internal(g, *found);
      CHECK(c.ok);
      // Even degree: the criterion reads own >= d/2 at every vertex.
      for (std::int64_t v = 0; v < g.n; ++v) {
        int own = 0;
        for (std::uint32_t u : g.neighbors(v))
          own += found->side[u] == found->side[v];
        CHECK(own >= 2);
      }
    }
  }
}

TEST_SUITE_END();
