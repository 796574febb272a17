#include "localcut/local_coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace localcut {

OrientedType vertex_type(const Graph& g, const std::vector<Color>& color,
                         std::int64_t v) {
  OrientedType t{0, 0};
  for (std::uint32_t u : g.neighbors(v)) {
    if (color[u] == Color::kRed) ++t.red;
    else if (color[u] == Color::kBlue) ++t.blue;
  }
  return t;
}

namespace {

// The involution on seeds used by the colorblind variant: swaps (0,q] and
// (q,2q], identity elsewhere.  Applied only at symmetric-dominant steps.
double involute_seed(double s, double q) {
  if (s > 0.0 && s <= q) return s + q;
  if (s > q && s <= 2.0 * q) return s - q;
  return s;
}

}  // namespace

ColoringAssignment run_schedule(const Graph& g,
                                const std::vector<StepParams>& schedule,
                                const SeedTable& seeds, Perception perception,
                                RunStats* stats) {
  const std::int64_t n = g.n;
  ColoringAssignment out;
  out.color.assign(static_cast<std::size_t>(n), Color::kUncolored);
  out.step.assign(static_cast<std::size_t>(n), 0);
  out.strict.assign(static_cast<std::size_t>(n), 0);
  RunStats local;
  local.colored_per_step.assign(schedule.size() + 1, 0);

  const bool flip = perception == Perception::kColorblind;
  std::vector<Color> cur = out.color;
  std::vector<std::int64_t> newly;  // vertices colored this round

  for (std::size_t si = 0; si < schedule.size(); ++si) {
    const StepParams& p = schedule[si];
    p.validate(g.d);
    const std::int64_t t = si + 1;
    newly.clear();
    for (std::int64_t v = 0; v < n; ++v) {
      if (cur[v] != Color::kUncolored) continue;
      OrientedType ot = vertex_type(g, cur, v);
      if (flip) std::swap(ot.red, ot.blue);
      if (ot.unordered() != p.dominant) continue;
      double s = seeds.at(v, t);
      if (flip && p.multiplicity == 1) s = involute_seed(s, p.q);
      Color c = Color::kUncolored;
      if (p.multiplicity == 1) {
        if (s <= p.q) c = Color::kRed;
        else if (s <= 2.0 * p.q) c = Color::kBlue;
      } else if (s <= p.q) {
        c = ot.red > ot.blue ? Color::kRed : Color::kBlue;
      }
      if (c != Color::kUncolored) {
        out.color[v] = c;
        out.step[v] = static_cast<std::int32_t>(t);
        out.strict[v] = p.multiplicity == 2 ? 1 : 0;
        newly.push_back(v);
      }
    }
    local.colored_per_step[si] = static_cast<std::int64_t>(newly.size());
    for (std::int64_t v : newly) cur[v] = out.color[v];
  }

  // Terminal fair coin; the involution is identity here (no interval pair).
  const std::int64_t terminal = static_cast<std::int64_t>(schedule.size()) + 1;
  for (std::int64_t v = 0; v < n; ++v) {
    if (cur[v] != Color::kUncolored) continue;
    out.color[v] = seeds.at(v, terminal) <= 0.5 ? Color::kRed : Color::kBlue;
    out.step[v] = static_cast<std::int32_t>(terminal);
    ++local.colored_per_step[schedule.size()];
  }

  if (stats) *stats = std::move(local);
  return out;
}

std::int64_t cut_size(const Graph& g, const ColoringAssignment& coloring) {
  if (coloring.n() != g.n) throw std::invalid_argument("cut_size: size mismatch");
  std::int64_t cut = 0;
  for (std::int64_t v = 0; v < g.n; ++v) {
    if (coloring.color[v] == Color::kUncolored)
      throw std::invalid_argument("cut_size: uncolored vertex");
    for (std::uint32_t u : g.neighbors(v)) {
      if (static_cast<std::int64_t>(u) < v) continue;
      if (coloring.color[u] != coloring.color[v]) ++cut;
    }
  }
  return cut;
}

RepairResult balance_repair(const Graph& g, const ColoringAssignment& coloring,
                            const SeedTable& seeds) {
  if (coloring.n() != g.n) throw std::invalid_argument("balance_repair: size mismatch");
  RepairResult res;
  res.coloring = coloring;
  std::vector<std::int64_t> red, blue;
  for (std::int64_t v = 0; v < g.n; ++v) {
    switch (coloring.color[v]) {
      case Color::kRed: red.push_back(v); break;
      case Color::kBlue: blue.push_back(v); break;
      default: throw std::invalid_argument("balance_repair: uncolored vertex");
    }
  }
  RngStream stream(seeds.master(), Purpose::kBalanceRepair, 0);
  auto& larger = red.size() > blue.size() ? red : blue;
  auto& smaller = red.size() > blue.size() ? blue : red;
  while (larger.size() > smaller.size() + 1) {
    std::size_t i = static_cast<std::size_t>(stream.below(larger.size()));
    std::int64_t v = larger[i];
    larger[i] = larger.back();
    larger.pop_back();
    smaller.push_back(v);
    res.coloring.color[v] = opposite(res.coloring.color[v]);
    res.coloring.strict[v] = 0;
    ++res.moves;
  }
  return res;
}

std::map<TreeState, double> empirical_two_ball_distribution(
    const Graph& g, const ColoringAssignment& coloring, std::int64_t t,
    int sample_radius) {
  if (coloring.n() != g.n)
    throw std::invalid_argument("empirical_two_ball_distribution: size mismatch");
  const StateSpace& sp = StateSpace::get(g.d);

  // Snapshot color at time t from the step stamps.
  auto color_at = [&](std::int64_t v) -> Color {
    return (coloring.step[v] >= 1 && coloring.step[v] <= t) ? coloring.color[v]
                                                            : Color::kUncolored;
  };

  std::vector<std::int32_t> mark(static_cast<std::size_t>(g.n), -1);
  std::vector<std::uint32_t> ball;
  std::vector<int> dist;
  std::map<TreeState, double> freq;
  std::int64_t counted = 0;
  std::vector<int> letters;

  for (std::int64_t v = 0; v < g.n; ++v) {
    // Cycle-free sample_radius-ball check (connected => tree iff E = V - 1).
    ball.assign(1, static_cast<std::uint32_t>(v));
    dist.assign(1, 0);
    mark[v] = static_cast<std::int32_t>(v);
    for (std::size_t head = 0; head < ball.size(); ++head) {
      if (dist[head] == sample_radius) break;
      for (std::uint32_t u : g.neighbors(ball[head])) {
        if (mark[u] == static_cast<std::int32_t>(v)) continue;
        mark[u] = static_cast<std::int32_t>(v);
        ball.push_back(u);
        dist.push_back(dist[head] + 1);
      }
    }
    std::int64_t induced_twice = 0;
    for (std::uint32_t u : ball)
      for (std::uint32_t w : g.neighbors(u))
        if (mark[w] == static_cast<std::int32_t>(v)) ++induced_twice;
    if (induced_twice / 2 != static_cast<std::int64_t>(ball.size()) - 1) continue;

    Color rc = color_at(v);
    bool strict = coloring.strict[v] != 0 && coloring.step[v] <= t;
    RootStatus root = rc == Color::kUncolored
                          ? RootStatus::kUncolored
                          : make_root_status(rc, strict);
    letters.clear();
    for (std::uint32_t u : g.neighbors(v)) {
      Color uc = color_at(u);
      if (uc == Color::kRed) {
        letters.push_back(StateSpace::kLetterColoredRed);
      } else if (uc == Color::kBlue) {
        letters.push_back(StateSpace::kLetterColoredBlue);
      } else {
        int orr = 0, ob = 0;
        for (std::uint32_t w : g.neighbors(u)) {
          if (static_cast<std::int64_t>(w) == v) continue;
          Color wc = color_at(w);
          if (wc == Color::kRed) ++orr;
          else if (wc == Color::kBlue) ++ob;
        }
        letters.push_back(sp.open_letter(orr, ob));
      }
    }
    TreeState st = sp.make_state(root, letters);
    freq[st] += 1.0;
    ++counted;
  }
  if (counted > 0)
    for (auto& [k, w] : freq) w /= static_cast<double>(counted);
  return freq;
}

}  // namespace localcut
