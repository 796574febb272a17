#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "localcut/tree_engine.hpp"

using namespace localcut;

namespace {

// Independent reference for one evolution step: enumerates the full product
// kernel over ordered descriptor vectors, with no factorization tricks.
// Slow and d=3-sized by design; disagreements with the engine point at the
// engine's operator decomposition.
struct RefTransition {
  const StateSpace& sp;
  const StepParams& p;
  std::map<std::pair<RootStatus, std::int64_t>, double> out;

  RefTransition(const StateSpace& s, const StepParams& params) : sp(s), p(params) {}

  struct LetterOption {
    int letter;
    double prob;
  };
  struct RootOption {
    RootStatus root;
    double prob;
  };

  void add_state(const TreeState& s, double mass) {
    Color old_color = root_color(s.root);

    std::vector<RootOption> root_opts;
    if (s.root == RootStatus::kUncolored) {
      int cr = 0, cb = 0;
      for (std::uint8_t l : s.letters) {
        if (l == StateSpace::kLetterColoredRed) ++cr;
        if (l == StateSpace::kLetterColoredBlue) ++cb;
      }
      if (VertexType(cr, cb) == p.dominant) {
        if (cr == cb) {
          root_opts = {{RootStatus::kUncolored, 1.0 - 2.0 * p.q},
                       {RootStatus::kRedLoose, p.q},
                       {RootStatus::kBlueLoose, p.q}};
        } else if (cr > cb) {
          root_opts = {{RootStatus::kUncolored, 1.0 - p.q},
                       {RootStatus::kRedStrict, p.q}};
        } else {
          root_opts = {{RootStatus::kUncolored, 1.0 - p.q},
                       {RootStatus::kBlueStrict, p.q}};
        }
      } else {
        root_opts = {{RootStatus::kUncolored, 1.0}};
      }
    } else {
      root_opts = {{s.root, 1.0}};
    }

    // Options for each descriptor slot, all reading the pre-step root color.
    std::vector<std::vector<LetterOption>> slot_opts;
    for (std::uint8_t l : s.letters) {
      std::vector<LetterOption> opts;
      if (!sp.is_open(l)) {
        opts = {{l, 1.0}};
      } else {
        int rn = sp.outer_red(l) + (old_color == Color::kRed ? 1 : 0);
        int bn = sp.outer_blue(l) + (old_color == Color::kBlue ? 1 : 0);
        double stay = 1.0;
        if (VertexType(rn, bn) == p.dominant) {
          if (rn == bn) {
            opts.push_back({StateSpace::kLetterColoredRed, p.q});
            opts.push_back({StateSpace::kLetterColoredBlue, p.q});
            stay = 1.0 - 2.0 * p.q;
          } else if (rn > bn) {
            opts.push_back({StateSpace::kLetterColoredRed, p.q});
            stay = 1.0 - p.q;
          } else {
            opts.push_back({StateSpace::kLetterColoredBlue, p.q});
            stay = 1.0 - p.q;
          }
        }
        // Still open: its undetermined outer slots fill independently.
        int u = sp.undetermined(l);
        for (int i = 0; i <= u; ++i) {
          for (int j = 0; i + j <= u; ++j) {
            double w = static_cast<double>(sp.binomial(u, i)) *
                       static_cast<double>(sp.binomial(u - i, j)) *
                       std::pow(p.q_hat, i + j) *
                       std::pow(1.0 - 2.0 * p.q_hat, u - i - j);
            opts.push_back(
                {sp.open_letter(sp.outer_red(l) + i, sp.outer_blue(l) + j),
                 stay * w});
          }
        }
      }
      slot_opts.push_back(std::move(opts));
    }

    for (const RootOption& ro : root_opts) {
      std::vector<int> letters(sp.degree());
      expand_slots(0, ro, mass * ro.prob, letters, slot_opts);
    }
  }

  void expand_slots(std::size_t slot, const RootOption& ro, double acc,
                    std::vector<int>& letters,
                    const std::vector<std::vector<LetterOption>>& slot_opts) {
    if (acc == 0.0) return;
    if (slot == slot_opts.size()) {
      TreeState t = sp.make_state(ro.root, letters);
      out[{t.root, sp.rank_of(t)}] += acc;
      return;
    }
    for (const LetterOption& lo : slot_opts[slot]) {
      letters[slot] = lo.letter;
      expand_slots(slot + 1, ro, acc * lo.prob, letters, slot_opts);
    }
  }
};

EvolveOptions oracle_opts() {
  EvolveOptions o;
  o.prune_threshold = 0.0;
  o.term_threshold = 0.0;
  o.check_invariants = false;
  return o;
}

Measure oracle_fixture(const StateSpace& sp) {
  Measure mu(3);
  mu.set_mass(sp.make_state(RootStatus::kUncolored,
                            {sp.open_letter(0, 0), sp.open_letter(0, 0),
                             sp.open_letter(0, 0)}),
              0.30);
  mu.set_mass(sp.make_state(RootStatus::kUncolored,
                            {StateSpace::kLetterColoredRed, sp.open_letter(0, 1),
                             sp.open_letter(1, 1)}),
              0.20);
  mu.set_mass(sp.make_state(RootStatus::kRedLoose,
                            {StateSpace::kLetterColoredBlue, sp.open_letter(1, 0),
                             sp.open_letter(0, 0)}),
              0.25);
  mu.set_mass(sp.make_state(RootStatus::kBlueStrict,
                            {sp.open_letter(2, 0), sp.open_letter(0, 2),
                             StateSpace::kLetterColoredBlue}),
              0.15);
  mu.set_mass(sp.make_state(RootStatus::kUncolored,
                            {StateSpace::kLetterColoredRed,
                             StateSpace::kLetterColoredBlue, sp.open_letter(1, 1)}),
              0.10);
  return mu;
}

void compare_against_reference(const StepParams& p) {
  const StateSpace& sp = StateSpace::get(3);
  Measure mu = oracle_fixture(sp);

  RefTransition ref(sp, p);
  mu.for_each([&](RootStatus st, std::int64_t rank, double mass) {
    ref.add_state(sp.state_at(st, rank), mass);
  });

  transition_step(mu, p, EvolveMode::kExact, oracle_opts());

  double ref_total = 0.0;
  for (const auto& [key, mass] : ref.out) {
    ref_total += mass;
    CHECK(mu.at(key.first, key.second) == doctest::Approx(mass).epsilon(1e-12));
  }
  CHECK(ref_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  // Check the reverse direction: no mass where the reference has none.
  mu.for_each([&](RootStatus st, std::int64_t rank, double mass) {
    auto it = ref.out.find({st, rank});
    if (it == ref.out.end()) {
      CHECK(std::fabs(mass) < 1e-14);
    }
  });
}

}  // namespace

TEST_SUITE("tree_engine") {

TEST_CASE("exact step matches the brute-force product kernel, asymmetric type") {
  StepParams p;
  p.t = 1;
  p.dominant = VertexType(0, 1);
  p.multiplicity = 2;
  p.q = 0.3;
  p.q_hat = 0.1;
  compare_against_reference(p);
}

TEST_CASE("exact step matches the brute-force product kernel, symmetric type") {
  StepParams p;
  p.t = 1;
  p.dominant = VertexType(1, 1);
  p.multiplicity = 1;
  p.q = 0.25;
  p.q_hat = 0.05;
  compare_against_reference(p);
}

TEST_CASE("exact step matches the brute-force product kernel, saturated type") {
  // Type (1,2) has no open outer direction at d=3: q_hat must be 0.
  StepParams p;
  p.t = 1;
  p.dominant = VertexType(1, 2);
  p.multiplicity = 2;
  p.q = 0.4;
  p.q_hat = 0.0;
  compare_against_reference(p);
}

TEST_CASE("simplified equals exact when no class holds multiple movers") {
  // Each descriptor class has one copy and at most one undetermined slot, so
  // single-change truncation loses nothing.
  const StateSpace& sp = StateSpace::get(3);
  StepParams p;
  p.t = 1;
  p.dominant = VertexType(0, 1);
  p.multiplicity = 2;
  p.q = 0.35;
  p.q_hat = 0.2;

  Measure a(3);
  a.set_mass(sp.make_state(RootStatus::kUncolored,
                           {StateSpace::kLetterColoredBlue, sp.open_letter(1, 1),
                            sp.open_letter(0, 1)}),
             0.6);
  a.set_mass(sp.make_state(RootStatus::kRedStrict,
                           {StateSpace::kLetterColoredRed, sp.open_letter(0, 2),
                            sp.open_letter(1, 1)}),
             0.4);
  Measure b = a;
  transition_step(a, p, EvolveMode::kExact, oracle_opts());
  transition_step(b, p, EvolveMode::kSimplified, oracle_opts());
  for (int st = 0; st < kNumRootStatuses; ++st)
    for (std::int64_t r = 0; r < a.num_ranks(); ++r)
      CHECK(a.at(static_cast<RootStatus>(st), r) ==
            doctest::Approx(b.at(static_cast<RootStatus>(st), r)).epsilon(1e-13));
}

TEST_CASE("first step from the initial measure keeps the closed-form mass") {
  // d=5, eps=1e-3: the all-open state survives with (1-eps)^(1+5+20).
  Measure mu = Measure::initial(5);
  auto [q, q_hat] = step_thresholds(mu, VertexType(0, 0), 1e-3, 5);
  CHECK(q == 5e-4);
  CHECK(q_hat == 5e-4);

  StepParams p;
  p.t = 1;
  p.dominant = VertexType(0, 0);
  p.multiplicity = 1;
  p.q = q;
  p.q_hat = q_hat;
  transition_step(mu, p, EvolveMode::kExact);

  const StateSpace& sp = StateSpace::get(5);
  std::vector<int> all_open(5, sp.open_letter(0, 0));
  double survived = mu.mass_of(sp.make_state(RootStatus::kUncolored, all_open));
  CHECK(survived == doctest::Approx(std::pow(1.0 - 1e-3, 26)).epsilon(1e-13));
  CHECK(mu.uncolored_root_mass() == doctest::Approx(1.0 - 1e-3).epsilon(1e-13));
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("step thresholds validate their preconditions") {
  Measure mu = Measure::initial(5);
  CHECK_THROWS_AS(step_thresholds(mu, VertexType(0, 1), 1e-3, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(step_thresholds(mu, VertexType(0, 0), 0.0, 5),
                  std::invalid_argument);
  // Boundary: mass exactly eps gives 2q = 1 for a symmetric type.
  auto [q, qh] = step_thresholds(mu, VertexType(0, 0), 1.0 - 1e-12, 5);
  (void)qh;
  CHECK(2.0 * q == doctest::Approx(1.0 - 1e-12));
}

TEST_CASE("phase 1 colors at exactly eps per step and terminates") {
  for (EvolveMode mode : {EvolveMode::kExact, EvolveMode::kSimplified}) {
    Phase1Result res = run_phase1(3, 0.05, mode);
    CHECK_FALSE(res.schedule.empty());
    CHECK(res.schedule.size() <= 20);
    CHECK(res.schedule.front().dominant == VertexType(0, 0));
    CHECK(res.schedule.front().q == doctest::Approx(0.025));
    // No type retains dominant mass at the end.
    CHECK_FALSE(dominant_type(res.mu.root_type_masses(), 0.05).has_value());
    double expected_uncolored = 1.0 - 0.05 * res.schedule.size();
    CHECK(res.mu.uncolored_root_mass() ==
          doctest::Approx(expected_uncolored).epsilon(1e-12));
    // Steps are numbered consecutively from 1.
    for (std::size_t i = 0; i < res.schedule.size(); ++i)
      CHECK(res.schedule[i].t == static_cast<int>(i) + 1);
  }
}

TEST_CASE("finalize matches a brute-force fair-coin reference") {
  const StateSpace& sp = StateSpace::get(3);
  Measure mu = oracle_fixture(sp);
  std::map<std::pair<RootStatus, std::int64_t>, double> ref;

  mu.for_each([&](RootStatus st, std::int64_t rank, double mass) {
    TreeState s = sp.state_at(st, rank);
    std::vector<RootStatus> roots;
    if (st == RootStatus::kUncolored)
      roots = {RootStatus::kRedLoose, RootStatus::kBlueLoose};
    else
      roots = {st};
    double root_p = 1.0 / roots.size();
    // Enumerate fair colorings of the open slots by bitmask.
    std::vector<std::size_t> open_slots;
    for (std::size_t i = 0; i < s.letters.size(); ++i)
      if (sp.is_open(s.letters[i])) open_slots.push_back(i);
    int combos = 1 << open_slots.size();
    for (RootStatus root : roots) {
      for (int bits = 0; bits < combos; ++bits) {
        std::vector<int> letters(s.letters.begin(), s.letters.end());
        for (std::size_t k = 0; k < open_slots.size(); ++k)
          letters[open_slots[k]] = (bits >> k) & 1
                                       ? StateSpace::kLetterColoredBlue
                                       : StateSpace::kLetterColoredRed;
        TreeState t = sp.make_state(root, letters);
        ref[{t.root, sp.rank_of(t)}] += mass * root_p / combos;
      }
    }
  });

  finalize_random_coloring(mu);
  CHECK(mu.fully_colored(0.0));
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
  for (const auto& [key, mass] : ref)
    CHECK(mu.at(key.first, key.second) == doctest::Approx(mass).epsilon(1e-12));

  // Idempotent on already colored measures.
  Measure again = mu;
  finalize_random_coloring(again);
  for (int st = 0; st < kNumRootStatuses; ++st)
    for (std::int64_t r = 0; r < mu.num_ranks(); ++r)
      CHECK(again.at(static_cast<RootStatus>(st), r) ==
            mu.at(static_cast<RootStatus>(st), r));
}

TEST_CASE("cut statistic counts opposite-colored neighbors of red roots") {
  const StateSpace& sp = StateSpace::get(5);
  Measure mu(5);
  mu.set_mass(sp.make_state(RootStatus::kRedLoose, {1, 1, 1, 1, 1}), 0.5);
  mu.set_mass(sp.make_state(RootStatus::kBlueLoose, {0, 0, 0, 0, 0}), 0.5);
  CHECK(cut_per_vertex(mu) == doctest::Approx(0.5 * 5.0));

  auto [mis, eli] = miscolored_and_eligible_measures(mu);
  CHECK(mis == doctest::Approx(1.0));  // every vertex opposes its whole block
  CHECK(eli == 0.0);                   // no strict roots present

  // Open neighbors carry no cut edges and leave the majority unsettled.
  Measure open_measure = Measure::initial(5);
  CHECK(cut_per_vertex(open_measure) == 0.0);
  auto [mis0, eli0] = miscolored_and_eligible_measures(open_measure);
  CHECK(mis0 == 0.0);
  CHECK(eli0 == 0.0);

  // A red root with a blue majority among colored neighbors counts toward the
  // cut, but is not miscolored while a neighbor is still open.
  constexpr int kOpen00 = 2;  // first Open letter in the canonical alphabet
  Measure half(5);
  half.set_mass(sp.make_state(RootStatus::kRedStrict, {1, 1, 1, kOpen00, kOpen00}),
                0.5);
  half.set_mass(
      sp.make_state(RootStatus::kBlueStrict, {0, 0, 0, kOpen00, kOpen00}), 0.5);
  CHECK(cut_per_vertex(half) == doctest::Approx(0.5 * 3.0));
  auto [mis_half, eli_half] = miscolored_and_eligible_measures(half);
  CHECK(mis_half == 0.0);
  CHECK(eli_half == 0.0);
}

TEST_CASE("eligible tracks strict roots at the bare majority") {
  const StateSpace& sp = StateSpace::get(5);
  Measure mu(5);
  // Strict red root with exactly 3 blue of 5 neighbors: eligible.
  mu.set_mass(sp.make_state(RootStatus::kRedStrict, {0, 0, 1, 1, 1}), 0.25);
  mu.set_mass(sp.make_state(RootStatus::kBlueStrict, {1, 1, 0, 0, 0}), 0.25);
  // Loose red root with the same profile: miscolored but not eligible.
  mu.set_mass(sp.make_state(RootStatus::kRedLoose, {0, 0, 1, 1, 1}), 0.25);
  mu.set_mass(sp.make_state(RootStatus::kBlueLoose, {1, 1, 0, 0, 0}), 0.25);
  auto [mis, eli] = miscolored_and_eligible_measures(mu);
  CHECK(mis == doctest::Approx(1.0));
  CHECK(eli == doctest::Approx(0.5));
}

TEST_CASE("improvement arithmetic uses the pinned bihole densities") {
  CHECK(bihole_fraction(3) == doctest::Approx(0.34116));
  CHECK(bihole_fraction(4) == doctest::Approx(0.24716));
  CHECK_THROWS_AS(bihole_fraction(5), std::invalid_argument);

  CHECK(improved_cut(0.502832, 0.0186, 3) ==
        doctest::Approx(0.502832 - 0.34116 * 0.0186).epsilon(1e-15));
  CHECK(improved_cut(0.502832, 0.0186, 3) == doctest::Approx(0.4964864).epsilon(1e-6));
  CHECK(improved_cut(0.7, 0.0, 3) == 0.7);
  CHECK_THROWS_AS(improved_cut(-0.1, 0.0, 3), std::invalid_argument);
}

TEST_CASE("full small run produces sane, symmetric statistics") {
  for (EvolveMode mode : {EvolveMode::kExact, EvolveMode::kSimplified}) {
    TreeRun run = run_tree(5, 0.1, mode);
    const TreeReport& r = run.report;
    CHECK(r.steps == static_cast<int>(run.schedule.size()));
    CHECK(r.steps >= 1);
    CHECK(r.final_total_mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.final_max_asymmetry < 1e-12);
    CHECK(r.cut > 0.0);
    CHECK(r.cut < 5.0);
    CHECK(r.miscolored >= 0.0);
    CHECK(r.miscolored <= 1.0);
    CHECK(r.eligible >= 0.0);
    CHECK(r.eligible <= r.miscolored + 1e-12);
    CHECK(r.improvement == doctest::Approx(0.34116 * r.eligible).epsilon(1e-15));
    CHECK(r.improved_cut_delta3 == doctest::Approx(r.cut - r.improvement));
    CHECK(r.improved_cut_delta4 > r.improved_cut_delta3 - 1.0);
    // The terminal coin colors leftover vertices, which can only add cut
    // edges to what the greedy phase realized.
    CHECK(r.cut_after_terminal >= r.cut - 1e-12);
    // Phase 1 stops only once every type is below eps; what remains is
    // exactly the mass not colored at rate eps per step.
    CHECK(r.uncolored_before_finalize ==
          doctest::Approx(1.0 - 0.1 * r.steps).epsilon(1e-12));
  }
}

TEST_CASE("colored-root mass never decreases across steps") {
  Measure mu = Measure::initial(3);
  double colored_prev = 0.0;
  for (int t = 1; t <= 8; ++t) {
    auto masses = mu.root_type_masses();
    auto dom = dominant_type(masses, 0.05);
    if (!dom) break;
    auto [q, qh] = step_thresholds(mu, *dom, 0.05, 3);
    StepParams p;
    p.t = t;
    p.dominant = *dom;
    p.multiplicity = multiplicity(*dom);
    p.q = q;
    p.q_hat = qh;
    transition_step(mu, p, EvolveMode::kExact);
    double colored = 1.0 - mu.uncolored_root_mass();
    CHECK(colored >= colored_prev - 1e-15);
    colored_prev = colored;
  }
  CHECK(colored_prev > 0.0);
}

}  // TEST_SUITE
