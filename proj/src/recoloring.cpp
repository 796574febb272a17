#include "localcut/recoloring.hpp"

#include <algorithm>
#include <stdexcept>

#include "localcut/tree_engine.hpp"

namespace localcut {

namespace {

bool sorted_unique(const std::vector<std::int64_t>& v) {
  return std::adjacent_find(v.begin(), v.end(),
                            [](auto a, auto b) { return a >= b; }) == v.end();
}

bool contains(const std::vector<std::int64_t>& sorted, std::int64_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

void check_vertex_set(const std::vector<std::int64_t>& v, std::int64_t n,
                      const char* what) {
  if (!sorted_unique(v))
    throw std::invalid_argument(std::string(what) + ": not sorted unique");
  if (!v.empty() && (v.front() < 0 || v.back() >= n))
    throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

}  // namespace

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> miscolored_sets(
    const Graph& g, const ColoringAssignment& coloring,
    MiscolorCriterion criterion) {
  if (coloring.n() != g.n)
    throw std::invalid_argument("miscolored_sets: size mismatch");
  std::vector<std::int64_t> left, right;
  const int lo = g.d / 2, hi = g.d - g.d / 2;
  for (std::int64_t v = 0; v < g.n; ++v) {
    Color c = coloring.color[v];
    if (c == Color::kUncolored)
      throw std::invalid_argument("miscolored_sets: uncolored vertex");
    OrientedType t = vertex_type(g, coloring.color, v);
    int own = c == Color::kRed ? t.red : t.blue;
    int other = g.d - own;
    if (2 * other <= g.d) continue;  // no opposing majority
    if (criterion == MiscolorCriterion::kStrict) {
      // Committed on a strict majority that the terminal picture overturned
      // by the minimal margin.
      if (!coloring.strict[v] || own != lo || other != hi) continue;
    }
    (c == Color::kRed ? left : right).push_back(v);
  }
  return {std::move(left), std::move(right)};
}

int ConflictGraph::max_degree() const {
  std::vector<std::int64_t> deg_l(left.size(), 0), deg_r(right.size(), 0);
  for (const auto& [u, w] : edges) {
    ++deg_l[static_cast<std::size_t>(
        std::lower_bound(left.begin(), left.end(), u) - left.begin())];
    ++deg_r[static_cast<std::size_t>(
        std::lower_bound(right.begin(), right.end(), w) - right.begin())];
  }
  std::int64_t best = 0;
  for (auto x : deg_l) best = std::max(best, x);
  for (auto x : deg_r) best = std::max(best, x);
  return static_cast<int>(best);
}

double ConflictGraph::isolated_fraction() const {
  if (order() == 0) return 0.0;
  std::vector<char> has_l(left.size(), 0), has_r(right.size(), 0);
  for (const auto& [u, w] : edges) {
    has_l[static_cast<std::size_t>(
        std::lower_bound(left.begin(), left.end(), u) - left.begin())] = 1;
    has_r[static_cast<std::size_t>(
        std::lower_bound(right.begin(), right.end(), w) - right.begin())] = 1;
  }
  std::int64_t isolated = 0;
  for (char x : has_l) isolated += !x;
  for (char x : has_r) isolated += !x;
  return static_cast<double>(isolated) / static_cast<double>(order());
}

ConflictGraph build_conflict_graph(const Graph& g,
                                   const std::vector<std::int64_t>& left,
                                   const std::vector<std::int64_t>& right) {
  check_vertex_set(left, g.n, "build_conflict_graph: left");
  check_vertex_set(right, g.n, "build_conflict_graph: right");
  for (std::int64_t v : left)
    if (contains(right, v))
      throw std::invalid_argument("build_conflict_graph: sides overlap");

  ConflictGraph cg;
  cg.left = left;
  cg.right = right;
  for (std::int64_t u : left) {
    for (std::uint32_t w : g.neighbors(u))
      if (contains(right, w)) cg.edges.emplace_back(u, w);
  }
  std::sort(cg.edges.begin(), cg.edges.end());
  return cg;
}

namespace {

// Index-space view of the conflict graph: vertices 0..|L|-1 are the left
// side, |L|..|L|+|R|-1 the right side.
struct IndexedConflict {
  std::int64_t nl = 0, nr = 0;
  std::vector<std::vector<std::int32_t>> adj;  // cross edges only

  explicit IndexedConflict(const ConflictGraph& cg)
      : nl(static_cast<std::int64_t>(cg.left.size())),
        nr(static_cast<std::int64_t>(cg.right.size())),
        adj(static_cast<std::size_t>(nl + nr)) {
    for (const auto& [u, w] : cg.edges) {
      auto li = std::lower_bound(cg.left.begin(), cg.left.end(), u) -
                cg.left.begin();
      auto ri = nl + (std::lower_bound(cg.right.begin(), cg.right.end(), w) -
                      cg.right.begin());
      adj[static_cast<std::size_t>(li)].push_back(static_cast<std::int32_t>(ri));
      adj[static_cast<std::size_t>(ri)].push_back(static_cast<std::int32_t>(li));
    }
  }

  bool is_left(std::int64_t i) const { return i < nl; }
};

SwapSet to_swap_set(const ConflictGraph& cg, const IndexedConflict& ic,
                    std::vector<std::int32_t> picked_left,
                    std::vector<std::int32_t> picked_right) {
  SwapSet out;
  for (auto i : picked_left) out.red_to_blue.push_back(cg.left[i]);
  for (auto i : picked_right)
    out.blue_to_red.push_back(cg.right[i - ic.nl]);
  std::sort(out.red_to_blue.begin(), out.red_to_blue.end());
  std::sort(out.blue_to_red.begin(), out.blue_to_red.end());
  return out;
}

SwapSet greedy_swap_set(const ConflictGraph& cg, const IndexedConflict& ic,
                        std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<std::int32_t> order(static_cast<std::size_t>(ic.nl + ic.nr));
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = static_cast<std::int32_t>(i);

  std::vector<std::int32_t> best_l, best_r;
  for (std::uint64_t restart = 0; restart < 8; ++restart) {
    RngStream stream(rng, Purpose::kGreedyRestart, restart);
    stream.shuffle(order);
    std::vector<char> picked(order.size(), 0);
    std::vector<std::int32_t> take_l, take_r;
    for (std::int32_t v : order) {
      bool blocked = false;
      for (std::int32_t u : ic.adj[static_cast<std::size_t>(v)])
        if (picked[static_cast<std::size_t>(u)]) { blocked = true; break; }
      if (blocked) continue;
      picked[static_cast<std::size_t>(v)] = 1;
      (ic.is_left(v) ? take_l : take_r).push_back(v);
    }
    // Trim the larger side at random down to balance.
    auto& larger = take_l.size() > take_r.size() ? take_l : take_r;
    std::size_t target = std::min(take_l.size(), take_r.size());
    stream.shuffle(larger);
    larger.resize(target);
    if (target > best_l.size()) {
      best_l = take_l;
      best_r = take_r;
    }
  }
  return to_swap_set(cg, ic, std::move(best_l), std::move(best_r));
}

// Branch and bound for the maximum balanced independent set.  Vertices are
// branched in degree-descending order; the bound counts how many vertices of
// each side are still compatible with the current choice.
struct ExactSearch {
  const IndexedConflict& ic;
  std::vector<std::int32_t> order;
  std::vector<std::uint32_t> adj_mask;  // in order-index space
  std::vector<char> side_left;          // in order-index space
  std::uint32_t best_mask = 0;
  std::int64_t best = 0;

  explicit ExactSearch(const IndexedConflict& ic_) : ic(ic_) {
    const auto n = static_cast<std::size_t>(ic.nl + ic.nr);
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::int32_t>(i);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
      auto da = ic.adj[static_cast<std::size_t>(a)].size();
      auto db = ic.adj[static_cast<std::size_t>(b)].size();
      return da != db ? da > db : a < b;
    });
    std::vector<std::int32_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[i])] =
        static_cast<std::int32_t>(i);
    adj_mask.assign(n, 0);
    side_left.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      side_left[i] = ic.is_left(order[i]);
      for (std::int32_t u : ic.adj[static_cast<std::size_t>(order[i])])
        adj_mask[i] |= 1u << pos[static_cast<std::size_t>(u)];
    }
  }

  void run(std::size_t at, std::uint32_t chosen, std::int64_t a, std::int64_t b) {
    const auto n = order.size();
    if (best == std::min(ic.nl, ic.nr)) return;  // cannot do better
    // Free vertices from `at` on: not adjacent to anything chosen.
    std::int64_t free_l = 0, free_r = 0;
    for (std::size_t i = at; i < n; ++i)
      if ((adj_mask[i] & chosen) == 0) (side_left[i] ? free_l : free_r)++;
    if (std::min(a + free_l, b + free_r) <= best) return;
    if (at == n) return;  // bound above already counted nothing new

    if ((adj_mask[at] & chosen) == 0) {
      std::int64_t na = a + side_left[at], nb = b + !side_left[at];
      std::uint32_t nmask = chosen | (1u << at);
      if (std::min(na, nb) > best) {
        best = std::min(na, nb);
        best_mask = nmask;
      }
      run(at + 1, nmask, na, nb);
    }
    run(at + 1, chosen, a, b);
  }
};

SwapSet exact_swap_set(const ConflictGraph& cg, const IndexedConflict& ic) {
  ExactSearch search(ic);
  search.run(0, 0, 0, 0);
  // Decode the winning mask and trim the larger side (lowest ids kept).
  std::vector<std::int32_t> take_l, take_r;
  for (std::size_t i = 0; i < search.order.size(); ++i)
    if (search.best_mask & (1u << i))
      (search.side_left[i] ? take_l : take_r).push_back(search.order[i]);
  std::sort(take_l.begin(), take_l.end());
  std::sort(take_r.begin(), take_r.end());
  std::size_t target = std::min(take_l.size(), take_r.size());
  take_l.resize(target);
  take_r.resize(target);
  return to_swap_set(cg, ic, std::move(take_l), std::move(take_r));
}

}  // namespace

SwapSet find_balanced_independent_set(const ConflictGraph& cg,
                                      SwapStrategy strategy,
                                      std::uint64_t seed) {
  IndexedConflict ic(cg);
  if (strategy == SwapStrategy::kExact) {
    if (ic.nl + ic.nr > 30)
      throw std::invalid_argument(
          "find_balanced_independent_set: exact strategy limited to 30 vertices");
    return exact_swap_set(cg, ic);
  }
  return greedy_swap_set(cg, ic, seed);
}

SwapOutcome apply_swaps(const Graph& g, const ColoringAssignment& coloring,
                        const SwapSet& swaps) {
  if (coloring.n() != g.n)
    throw std::invalid_argument("apply_swaps: size mismatch");
  if (swaps.red_to_blue.size() != swaps.blue_to_red.size())
    throw std::invalid_argument("apply_swaps: unbalanced swap set");
  check_vertex_set(swaps.red_to_blue, g.n, "apply_swaps: red_to_blue");
  check_vertex_set(swaps.blue_to_red, g.n, "apply_swaps: blue_to_red");
  for (std::int64_t v : swaps.red_to_blue)
    if (coloring.color[v] != Color::kRed)
      throw std::invalid_argument("apply_swaps: red_to_blue vertex not red");
  for (std::int64_t v : swaps.blue_to_red)
    if (coloring.color[v] != Color::kBlue)
      throw std::invalid_argument("apply_swaps: blue_to_red vertex not blue");
  for (std::int64_t v : swaps.red_to_blue)
    for (std::uint32_t u : g.neighbors(v))
      if (contains(swaps.blue_to_red, u))
        throw std::invalid_argument("apply_swaps: swap set not independent");

  SwapOutcome out;
  out.coloring = coloring;
  auto flip = [&](std::int64_t v) {
    OrientedType t = vertex_type(g, out.coloring.color, v);
    Color c = out.coloring.color[v];
    std::int64_t delta = c == Color::kRed ? t.red - t.blue : t.blue - t.red;
    if (delta > -1)
      throw std::logic_error("apply_swaps: flip does not decrease the cut");
    out.coloring.color[v] = opposite(c);
    out.coloring.strict[v] = 0;
    out.deltas.push_back(delta);
  };
  for (std::int64_t v : swaps.red_to_blue) flip(v);
  for (std::int64_t v : swaps.blue_to_red) flip(v);
  return out;
}

namespace {

// Incremental state for the cut-raising walk: colors as a flat bit per
// vertex plus the red-neighbor count, so a flip and its gain are O(deg).
struct RaiseWalk {
  const Graph& g;
  std::vector<char> red;
  std::vector<int> red_nb;
  std::vector<std::int64_t> log;     // flipped vertices, in order
  std::vector<std::int64_t> deltas;  // gain of each flip, all >= 1
  std::int64_t cut = 0;

  RaiseWalk(const Graph& gr, const std::vector<char>& red0,
            const std::vector<int>& red_nb0, std::int64_t cut0)
      : g(gr), red(red0), red_nb(red_nb0), cut(cut0) {}

  int deg(std::int64_t v) const {
    return static_cast<int>(g.neighbors(v).size());
  }
  int own(std::int64_t v) const {
    return red[v] ? red_nb[v] : deg(v) - red_nb[v];
  }
  std::int64_t gain(std::int64_t v) const { return 2 * own(v) - deg(v); }
  void flip(std::int64_t v) {
    std::int64_t de = gain(v);
    if (de < 1)
      throw std::logic_error("raise_cut: flip does not increase the cut");
    log.push_back(v);
    deltas.push_back(de);
    cut += de;
    red[v] = !red[v];
    for (std::uint32_t u : g.neighbors(v)) red_nb[u] += red[v] ? 1 : -1;
  }
};

// One descent: flip balanced red/blue pairs of agreeing vertices,
// highest gain first, until neither a pair nor a tunnel move remains.
// A tunnel move flips an agreeing vertex together with an opposite-color
// neighbor that the first flip pushes into the majority — both gains are
// still >= 1 at their own flip time and the pair keeps the classes even.
void raise_descent(RaiseWalk& w, const std::vector<std::int64_t>& order) {
  const int d = w.g.d;
  std::vector<std::vector<std::int64_t>> buckets[2];
  buckets[0].assign(static_cast<std::size_t>(d) + 1, {});
  buckets[1].assign(static_cast<std::size_t>(d) + 1, {});
  auto push = [&](std::int64_t v) {
    std::int64_t de = w.gain(v);
    if (de >= 1) buckets[w.red[v] ? 1 : 0][de].push_back(v);
  };
  auto pop = [&](int color) -> std::int64_t {
    for (int k = d; k >= 1; --k) {
      auto& b = buckets[color][k];
      while (!b.empty()) {
        std::int64_t v = b.back();
        b.pop_back();
        if ((w.red[v] ? 1 : 0) != color || w.gain(v) < 1) continue;
        if (w.gain(v) != k) {
          push(v);  // stale bucket, re-file under the current gain
          continue;
        }
        return v;
      }
    }
    return -1;
  };
  auto flip = [&](std::int64_t v) {
    w.flip(v);
    for (std::uint32_t u : w.g.neighbors(v)) push(u);
  };

  for (std::int64_t v : order) push(v);
  bool progress = true;
  while (progress) {
    progress = false;
    while (true) {
      std::int64_t u = pop(1);
      if (u < 0) break;
      std::int64_t v = pop(0);
      if (v < 0) {
        push(u);
        break;
      }
      flip(u);
      flip(v);  // u's flip can only add blue neighbors to v; still >= 1
      progress = true;
    }
    // one side ran dry: tunnel through neighbors the first flip promotes
    for (std::int64_t v : order) {
      if (w.gain(v) < 1) continue;
      std::int64_t mate = -1;
      for (std::uint32_t u : w.g.neighbors(v)) {
        if (w.red[u] == w.red[v]) continue;
        if (2 * (w.own(u) + 1) - w.deg(u) >= 1) {
          mate = u;
          break;
        }
      }
      if (mate < 0) continue;
      flip(v);
      flip(mate);
      progress = true;
    }
  }
}

}  // namespace

RaiseOutcome raise_cut(const Graph& g, const ColoringAssignment& coloring,
                       std::uint64_t seed) {
  if (coloring.n() != g.n)
    throw std::invalid_argument("raise_cut: size mismatch");
  RaiseOutcome out;
  out.cut_before = cut_size(g, coloring);

  std::vector<char> red0(static_cast<std::size_t>(g.n));
  std::vector<int> red_nb0(static_cast<std::size_t>(g.n), 0);
  for (std::int64_t v = 0; v < g.n; ++v) {
    if (coloring.color[v] == Color::kUncolored)
      throw std::invalid_argument("raise_cut: uncolored vertex");
    red0[static_cast<std::size_t>(v)] = coloring.color[v] == Color::kRed;
  }
  for (std::int64_t v = 0; v < g.n; ++v)
    for (std::uint32_t u : g.neighbors(v))
      if (red0[u]) red_nb0[v]++;
  {
    RaiseWalk probe(g, red0, red_nb0, out.cut_before);
    for (std::int64_t v = 0; v < g.n; ++v)
      if (probe.gain(v) >= 1)
        (red0[static_cast<std::size_t>(v)] ? out.aligned_red
                                           : out.aligned_blue)++;
  }

  CounterRng rng(seed);
  std::vector<std::int64_t> order(static_cast<std::size_t>(g.n));
  for (std::int64_t v = 0; v < g.n; ++v)
    order[static_cast<std::size_t>(v)] = v;
  std::vector<char> best_red;
  std::vector<std::int64_t> best_log, best_deltas;
  std::int64_t best_cut = out.cut_before - 1;
  for (std::uint64_t restart = 0; restart < 16; ++restart) {
    RngStream stream(rng, Purpose::kGreedyRestart, restart);
    stream.shuffle(order);
    RaiseWalk w(g, red0, red_nb0, out.cut_before);
    raise_descent(w, order);
    if (w.cut > best_cut) {
      best_cut = w.cut;
      best_red = std::move(w.red);
      best_log = std::move(w.log);
      best_deltas = std::move(w.deltas);
    }
  }

  out.swap_size = static_cast<std::int64_t>(best_log.size()) / 2;
  out.deltas = std::move(best_deltas);
  out.coloring = coloring;
  for (std::int64_t v : best_log) {
    out.coloring.color[v] =
        best_red[static_cast<std::size_t>(v)] ? Color::kRed : Color::kBlue;
    out.coloring.strict[v] = 0;
  }
  out.cut_after = best_cut;
  return out;
}

RepairResult balance_repair_raising(const Graph& g,
                                    const ColoringAssignment& coloring,
                                    std::uint64_t seed) {
  if (coloring.n() != g.n)
    throw std::invalid_argument("balance_repair_raising: size mismatch");
  RepairResult res;
  res.coloring = coloring;

  const std::int64_t n = g.n;
  std::vector<char> red(static_cast<std::size_t>(n));
  std::vector<int> red_nb(static_cast<std::size_t>(n), 0);
  std::int64_t reds = 0;
  for (std::int64_t v = 0; v < n; ++v) {
    if (coloring.color[v] == Color::kUncolored)
      throw std::invalid_argument("balance_repair_raising: uncolored vertex");
    red[static_cast<std::size_t>(v)] = coloring.color[v] == Color::kRed;
    reds += red[static_cast<std::size_t>(v)];
  }
  std::int64_t imb = 2 * reds - n;
  if (std::abs(imb) <= 1) return res;
  for (std::int64_t v = 0; v < n; ++v)
    for (std::uint32_t u : g.neighbors(v))
      if (red[u]) red_nb[v]++;

  const bool surplus_red = imb > 0;
  const int d = g.d;
  auto deg = [&](std::int64_t v) {
    return static_cast<int>(g.neighbors(v).size());
  };
  auto gain = [&](std::int64_t v) {
    int own = red[v] ? red_nb[v] : deg(v) - red_nb[v];
    return 2 * own - deg(v);
  };

  // gain-indexed buckets over the surplus class, lazily revalidated;
  // seeded shuffle only breaks ties among equal gains
  CounterRng rng(seed);
  RngStream stream(rng, Purpose::kBalanceRepair, 0);
  std::vector<std::int64_t> order;
  order.reserve(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v)
    if ((red[static_cast<std::size_t>(v)] != 0) == surplus_red)
      order.push_back(v);
  stream.shuffle(order);

  std::vector<std::vector<std::int64_t>> buckets(
      static_cast<std::size_t>(2 * d) + 1);
  auto push = [&](std::int64_t v) {
    if ((red[static_cast<std::size_t>(v)] != 0) != surplus_red) return;
    buckets[static_cast<std::size_t>(gain(v) + d)].push_back(v);
  };
  for (std::int64_t v : order) push(v);

  while (std::abs(imb) > 1) {
    std::int64_t v = -1;
    for (int k = 2 * d; k >= 0 && v < 0; --k) {
      auto& b = buckets[static_cast<std::size_t>(k)];
      while (!b.empty()) {
        std::int64_t c = b.back();
        b.pop_back();
        if ((red[static_cast<std::size_t>(c)] != 0) != surplus_red) continue;
        if (gain(c) + d != k) {
          push(c);
          continue;
        }
        v = c;
        break;
      }
    }
    if (v < 0) throw std::logic_error("balance_repair_raising: class empty");
    red[static_cast<std::size_t>(v)] = !red[static_cast<std::size_t>(v)];
    for (std::uint32_t u : g.neighbors(v)) {
      red_nb[u] += red[static_cast<std::size_t>(v)] ? 1 : -1;
      push(u);
    }
    res.coloring.color[v] = surplus_red ? Color::kBlue : Color::kRed;
    res.coloring.strict[v] = 0;
    res.moves++;
    imb += surplus_red ? -2 : 2;
  }
  return res;
}

RecolorReport recolor(const Graph& g, const ColoringAssignment& coloring,
                      MiscolorCriterion criterion, SwapStrategy strategy,
                      std::uint64_t seed) {
  RecolorReport rep;
  rep.criterion = criterion;
  rep.cut_before = cut_size(g, coloring);

  auto [left, right] = miscolored_sets(g, coloring, criterion);
  rep.left_size = static_cast<std::int64_t>(left.size());
  rep.right_size = static_cast<std::int64_t>(right.size());

  ConflictGraph cg = build_conflict_graph(g, left, right);
  rep.conflict_max_degree = cg.max_degree();
  rep.isolated_fraction = cg.isolated_fraction();

  SwapSet swaps = find_balanced_independent_set(cg, strategy, seed);
  rep.swap_size = swaps.size_per_side();

  SwapOutcome outcome = apply_swaps(g, coloring, swaps);
  rep.coloring = std::move(outcome.coloring);
  rep.deltas = std::move(outcome.deltas);
  rep.cut_after = cut_size(g, rep.coloring);

  // Yardstick only where the guarantee applies: known degree constant and
  // sides big enough for the asymptotic statement to carry weight.
  constexpr std::int64_t kBenchmarkMinSide = 100;
  std::int64_t min_side = std::min(rep.left_size, rep.right_size);
  if (rep.conflict_max_degree >= 3 && rep.conflict_max_degree <= 4 &&
      min_side >= kBenchmarkMinSide) {
    rep.bihole_benchmark =
        bihole_fraction(rep.conflict_max_degree) * static_cast<double>(min_side);
  }
  return rep;
}

}  // namespace localcut
