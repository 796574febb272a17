#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "localcut/graph_model.hpp"
#include "localcut/rng.hpp"
#include "localcut/tree_state.hpp"
#include "localcut/types.hpp"

namespace localcut {

enum class Perception {
  kNormal,
  kColorblind,  // neighbors' colors read flipped; seed intervals swapped at
                // symmetric-dominant steps (the measure-preserving involution)
};

// Per-vertex outcome of a schedule run.  step 0 means never colored during
// the run, step N+1 means the terminal fair coin.  strict marks vertices
// colored at a step whose dominant type was asymmetric.
struct ColoringAssignment {
  std::vector<Color> color;
  std::vector<std::int32_t> step;
  std::vector<std::uint8_t> strict;

  std::int64_t n() const { return static_cast<std::int64_t>(color.size()); }
};

// Lazy per-vertex seed sequence s_t(v), t = 1..N+1: a pure function of
// (master key, v, t), so any evaluation order gives identical runs.  Values
// lie in (0,1); an exact 0 draw (probability 2^-53) is nudged up to keep the
// open-interval contract.
class SeedTable {
 public:
  explicit SeedTable(std::uint64_t master_key) : rng_(master_key) {}

  double at(std::int64_t v, std::int64_t t) const {
    double s = rng_.u01(Purpose::kVertexSeed, static_cast<std::uint64_t>(v),
                        static_cast<std::uint64_t>(t));
    return s > 0.0 ? s : 0x1.0p-54;
  }

  const CounterRng& master() const { return rng_; }

 private:
  CounterRng rng_;
};

// Ordered (red, blue) neighbor counts of v under the given colors.
OrientedType vertex_type(const Graph& g, const std::vector<Color>& color,
                         std::int64_t v);

struct RunStats {
  std::vector<std::int64_t> colored_per_step;  // [t-1] for t = 1..N+1
};

// Synchronous ε-step local algorithm.  At step t every uncolored vertex whose
// perceived type matches the step's dominant type consults s_t(v): symmetric
// dominant — Red on [0,q], Blue on (q,2q]; asymmetric — the majority color on
// [0,q].  All reads see the previous round.  After the last step, remaining
// vertices take Red iff s_{N+1} <= 1/2.
ColoringAssignment run_schedule(const Graph& g,
                                const std::vector<StepParams>& schedule,
                                const SeedTable& seeds, Perception perception,
                                RunStats* stats = nullptr);

// Number of bichromatic edges; throws if any vertex is uncolored.
std::int64_t cut_size(const Graph& g, const ColoringAssignment& coloring);

struct RepairResult {
  ColoringAssignment coloring;
  std::int64_t moves = 0;
};

// Flips uniformly chosen vertices of the larger class until the classes
// differ by at most one.  Flipped vertices lose their strict flag (their
// recorded decision no longer matches their color).
RepairResult balance_repair(const Graph& g, const ColoringAssignment& coloring,
                            const SeedTable& seeds);

// Distribution of canonical two-ball states at time t (colors with step <= t
// visible), over vertices whose sample_radius-ball is cycle-free.  Comparable
// against the tree measure at the same t.
std::map<TreeState, double> empirical_two_ball_distribution(
    const Graph& g, const ColoringAssignment& coloring, std::int64_t t,
    int sample_radius = 2);

}  // namespace localcut
