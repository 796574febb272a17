#pragma once

#include <utility>
#include <vector>

#include "localcut/tree_measure.hpp"
#include "localcut/types.hpp"

namespace localcut {

// Exact mode expands the full product kernel per step.  Simplified mode keeps,
// within each per-vertex-class operator, only the outcomes where a single
// tracked vertex changes (at exact probability) and folds everything else
// into no-change; the root operator is unaffected, so the coloring rate and
// total mass stay exact while multi-change correlations are dropped.
enum class EvolveMode { kExact, kSimplified };

struct EvolveOptions {
  // State masses below this are treated as empty / zeroed after each step.
  double prune_threshold = 1e-30;
  // Expansion terms whose emitted mass bounds below this are folded into the
  // no-change outcome (mass-conserving by construction).
  double term_threshold = 1e-26;
  bool check_invariants = true;
  double mass_tol = 1e-12;       // |total mass - 1|
  double rate_tol = 1e-12;       // |uncolored root mass - (1 - t*eps)|
  double symmetry_tol = 1e-12;   // state-by-state red/blue swap (exact mode)
  double marginal_tol = 1e-9;    // root vs neighbor red marginal (exact mode)
  long long max_steps = -1;      // <=0: ceil(1/eps)+2 tripwire
};

// (q, q_hat) for coloring dominant-type roots/neighbors and outer slots.
// Throws when the dominant mass is below eps or no uncolored edge remains.
std::pair<double, double> step_thresholds(const Measure& mu_prev,
                                          const VertexType& dominant,
                                          double eps, int d);

// One evolution step in place.  Per-vertex kernels all read the pre-step
// state; a neighbor that becomes colored forgets its outer counts; outer
// slots of still-open neighbors fill independently at q_hat per color.
void transition_step(Measure& mu, const StepParams& params, EvolveMode mode,
                     const EvolveOptions& opts = {});

struct Phase1Result {
  Measure mu;
  std::vector<StepParams> schedule;
};

// Greedy phase: repeatedly color the highest-priority type holding mass
// >= eps until none is left.  Uncolored-root mass decreases by exactly eps
// per step, so the schedule has at most ceil(1/eps) entries.
Phase1Result run_phase1(int d, double eps, EvolveMode mode,
                        const EvolveOptions& opts = {});

// Terminal step: remaining uncolored roots and open neighbors each take a
// fair random color; exact in dyadic arithmetic.
void finalize_random_coloring(Measure& mu);

// Expected cut edges per vertex: d * P(root Red and a fixed neighbor Blue),
// evaluated as sum of mass * (#ColoredBlue neighbors) over Red-rooted states.
// Open neighbors contribute nothing, so on a partially colored measure this
// counts only the cut realized by the greedy phase itself.
double cut_per_vertex(const Measure& mu);

// miscolored: 2 * P(root Red, all d neighbors colored, blue majority) -- a
// vertex has a settled neighborhood majority only once every neighbor is
// colored, so states with open neighbors never qualify.
// eligible: the strict-flagged subset whose majority is minimal (exactly
// ceil(d/2) blue), the shape consumed by the balanced swap improvement.
std::pair<double, double> miscolored_and_eligible_measures(const Measure& mu);

// Guaranteed independent-set density among eligible vertices at conflict
// degree delta; constants are fixed inputs of the improvement bound.
double bihole_fraction(int delta);

double improved_cut(double cut, double eligible, int delta);

// Headline statistics (cut, miscolored, eligible) are taken on the measure
// as the greedy phase leaves it, before the terminal coin toss; the terminal
// coloring is still applied afterwards for the *_final diagnostics.
struct TreeReport {
  int d = 0;
  double eps = 0.0;
  EvolveMode mode = EvolveMode::kExact;
  int steps = 0;
  double cut = 0.0;
  double miscolored = 0.0;
  double eligible = 0.0;
  double improvement = 0.0;  // bihole_fraction(conflict degree) * eligible
  double improved_cut_delta3 = 0.0;
  double improved_cut_delta4 = 0.0;
  double cut_after_terminal = 0.0;
  double final_total_mass = 0.0;
  double final_max_asymmetry = 0.0;
  double uncolored_before_finalize = 0.0;
  double phase1_seconds = 0.0;
  double total_seconds = 0.0;
};

struct TreeRun {
  TreeReport report;
  std::vector<StepParams> schedule;
};

// Full pipeline: phase 1, terminal coloring, statistics.
TreeRun run_tree(int d, double eps, EvolveMode mode,
                 const EvolveOptions& opts = {});

}  // namespace localcut
