#include "localcut/tree_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "localcut/numerics.hpp"

namespace localcut {

namespace {

// Augmented rows used during one step: (root before step, root after step).
// Neighbor kernels read the pre-step root color, so it must stay visible
// until the step is projected back to plain root statuses.
constexpr int kAugRows = 9;
constexpr int kAugStay = 0;          // root uncolored before and after
constexpr int kAugNewRedLoose = 1;   // colored this step
constexpr int kAugNewRedStrict = 2;
constexpr int kAugNewBlueLoose = 3;
constexpr int kAugNewBlueStrict = 4;
constexpr int kAugOldRedLoose = 5;   // colored in an earlier step
constexpr int kAugOldRedStrict = 6;
constexpr int kAugOldBlueLoose = 7;
constexpr int kAugOldBlueStrict = 8;

struct ClassOutcome {
  int target_letter;
  double prob;  // per copy
};

// Redistributes all copies of one letter jointly (a multinomial over the
// per-copy outcomes), as a linear operator on the buffer.  Reads come from a
// snapshot taken before any write, so emitted mass landing on a later source
// never gets double-processed.  The no-change coefficient is the complement
// of everything emitted, which makes the operator mass-preserving up to
// rounding; pruned terms fold into no-change rather than vanishing.
//
// The (target, weight) expansion of a rank is shared by every row holding
// mass there, which is most of the per-step work saved.
class ClassOp {
 public:
  ClassOp(const StateSpace& sp, double* buf, std::int64_t num_ranks,
          double prune_threshold, double term_threshold, int max_moved)
      : sp_(sp),
        buf_(buf),
        num_ranks_(num_ranks),
        prune_(prune_threshold),
        term_(term_threshold),
        max_moved_(max_moved),
        scratch_(sp.alphabet_size()),
        stay_pow_(sp.degree() + 1, 0.0) {}

  void apply(const std::vector<int>& rows, int letter,
             const std::vector<ClassOutcome>& outcomes) {
    double prob_sum = 0.0;
    for (const ClassOutcome& o : outcomes) prob_sum += o.prob;
    if (prob_sum <= 0.0) return;
    double p_stay = 1.0 - prob_sum;
    if (p_stay < 0.0) {
      if (p_stay < -1e-12)
        throw std::logic_error("ClassOp: outcome probabilities exceed 1");
      p_stay = 0.0;
    }

    const std::size_t nrows = rows.size();
    const std::vector<std::int64_t>& list = sp_.ranks_with(letter);
    snap_ranks_.clear();
    snap_mass_.clear();
    for (std::int64_t rank : list) {
      bool any = false;
      for (std::size_t i = 0; i < nrows; ++i) {
        double m = buf_[static_cast<std::size_t>(rows[i]) * num_ranks_ + rank];
        row_mass_[i] = m;
        any = any || std::fabs(m) > prune_;
      }
      if (!any) continue;
      snap_ranks_.push_back(rank);
      snap_mass_.insert(snap_mass_.end(), row_mass_, row_mass_ + nrows);
    }
    if (snap_ranks_.empty()) return;

    outcomes_ = &outcomes;
    letter_ = letter;
    stay_pow_[0] = 1.0;
    for (int i = 1; i <= sp_.degree(); ++i) stay_pow_[i] = stay_pow_[i - 1] * p_stay;

    for (std::size_t si = 0; si < snap_ranks_.size(); ++si) {
      std::int64_t rank = snap_ranks_[si];
      const double* masses = snap_mass_.data() + si * nrows;
      const std::uint8_t* counts = sp_.counts(rank);
      std::copy(counts, counts + sp_.alphabet_size(), scratch_.begin());
      abs_mass_ = 0.0;
      for (std::size_t i = 0; i < nrows; ++i)
        abs_mass_ = std::max(abs_mass_, std::fabs(masses[i]));
      emits_.clear();
      total_other_ = 0.0;
      expand(0, counts[letter], 1.0, 0);
      if (emits_.empty()) continue;
      for (std::size_t i = 0; i < nrows; ++i) {
        double m = masses[i];
        if (std::fabs(m) <= prune_) continue;
        double* base = buf_ + static_cast<std::size_t>(rows[i]) * num_ranks_;
        for (const Emit& e : emits_) base[e.rank] += m * e.weight;
        base[rank] -= m * total_other_;
      }
    }
  }

 private:
  struct Emit {
    std::int64_t rank;
    double weight;
  };

  // coeff carries the partial multinomial weight of the choices so far; a
  // subtree's total emitted probability is bounded by coeff, which justifies
  // the term-threshold cut.
  void expand(std::size_t oi, int left, double coeff, int moved) {
    if (oi == outcomes_->size()) {
      if (moved == 0) return;  // no-change handled via the complement
      double w = coeff * stay_pow_[left];
      if (w == 0.0) return;
      emits_.push_back({sp_.rank_of_counts(scratch_.data()), w});
      total_other_ += w;
      return;
    }
    expand(oi + 1, left, coeff, moved);
    const ClassOutcome& o = (*outcomes_)[oi];
    if (o.prob <= 0.0) return;
    int kmax = std::min(left, max_moved_ - moved);
    if (kmax <= 0) return;
    double ck = coeff;
    for (int k = 1; k <= kmax; ++k) {
      ck *= o.prob * static_cast<double>(left - k + 1) / static_cast<double>(k);
      --scratch_[letter_];
      ++scratch_[o.target_letter];
      if (abs_mass_ * ck >= term_) expand(oi + 1, left - k, ck, moved + k);
    }
    scratch_[letter_] = static_cast<std::uint8_t>(scratch_[letter_] + kmax);
    scratch_[o.target_letter] =
        static_cast<std::uint8_t>(scratch_[o.target_letter] - kmax);
  }

  const StateSpace& sp_;
  double* buf_;
  std::int64_t num_ranks_;
  double prune_, term_;
  int max_moved_;
  std::vector<std::uint8_t> scratch_;
  std::vector<double> stay_pow_;
  std::vector<std::int64_t> snap_ranks_;
  std::vector<double> snap_mass_;
  double row_mass_[kAugRows] = {};
  std::vector<Emit> emits_;
  const std::vector<ClassOutcome>* outcomes_ = nullptr;
  int letter_ = 0;
  double abs_mass_ = 0.0, total_other_ = 0.0;
};

void check_invariants_post_step(const Measure& mu, EvolveMode mode,
                                const EvolveOptions& opts, int t) {
  double tm = mu.total_mass();
  if (std::fabs(tm - 1.0) > opts.mass_tol)
    throw std::runtime_error("transition_step: mass drift " +
                             std::to_string(tm - 1.0) + " at step " +
                             std::to_string(t));
  if (mode == EvolveMode::kExact) {
    double asym = mu.max_color_asymmetry();
    if (asym > opts.symmetry_tol)
      throw std::runtime_error("transition_step: color asymmetry " +
                               std::to_string(asym) + " at step " +
                               std::to_string(t));
    double diff = mu.neighbor_red_marginal() - mu.root_red_mass();
    if (std::fabs(diff) > opts.marginal_tol)
      throw std::runtime_error("transition_step: root/neighbor marginal gap " +
                               std::to_string(diff) + " at step " +
                               std::to_string(t));
  }
}

}  // namespace

std::pair<double, double> step_thresholds(const Measure& mu_prev,
                                          const VertexType& dominant,
                                          double eps, int d) {
  if (!(eps > 0.0)) throw std::invalid_argument("step_thresholds: eps must be > 0");
  double mu_d = mu_prev.root_type_mass(dominant);
  if (!(mu_d >= eps))
    throw std::invalid_argument("step_thresholds: dominant type mass below eps");
  double q = multiplicity(dominant) * (eps / 2.0) / mu_d;
  double q_hat = 0.0;
  int open = d - dominant.lo - dominant.hi;
  if (open > 0) {
    double edge = mu_prev.uncolored_edge_mass();
    if (!(edge > 0.0))
      throw std::invalid_argument("step_thresholds: no uncolored edge mass");
    q_hat = (static_cast<double>(open) / d * (eps / 2.0)) / edge;
  }
  return {q, q_hat};
}

void transition_step(Measure& mu, const StepParams& params, EvolveMode mode,
                     const EvolveOptions& opts) {
  const StateSpace& sp = mu.space();
  const int d = mu.degree();
  params.validate(d);
  const std::int64_t M = sp.num_ranks();
  const VertexType D = params.dominant;

  std::vector<double> aug(static_cast<std::size_t>(kAugRows) * M, 0.0);
  auto aug_row = [&](int r) { return aug.data() + static_cast<std::size_t>(r) * M; };
  auto mu_row = [&](RootStatus st) {
    return mu.data().data() +
           static_cast<std::size_t>(static_cast<int>(st)) * M;
  };
  std::memcpy(aug_row(kAugStay), mu_row(RootStatus::kUncolored), M * sizeof(double));
  std::memcpy(aug_row(kAugOldRedLoose), mu_row(RootStatus::kRedLoose), M * sizeof(double));
  std::memcpy(aug_row(kAugOldRedStrict), mu_row(RootStatus::kRedStrict), M * sizeof(double));
  std::memcpy(aug_row(kAugOldBlueLoose), mu_row(RootStatus::kBlueLoose), M * sizeof(double));
  std::memcpy(aug_row(kAugOldBlueStrict), mu_row(RootStatus::kBlueStrict), M * sizeof(double));

  // Root coloring.  Only dominant-type uncolored roots move; the asymmetric
  // orientation joins its colored majority and is recorded strict.  This
  // operator is exact in both modes (a single tracked vertex changes).
  if (params.q > 0.0) {
    double* u = aug_row(kAugStay);
    for (std::int64_t r = 0; r < M; ++r) {
      double m = u[r];
      if (std::fabs(m) <= opts.prune_threshold) continue;
      const std::uint8_t* c = sp.counts(r);
      int cr = c[StateSpace::kLetterColoredRed];
      int cb = c[StateSpace::kLetterColoredBlue];
      if (VertexType(cr, cb) != D) continue;
      double e = m * params.q;
      if (cr == cb) {
        aug_row(kAugNewRedLoose)[r] += e;
        aug_row(kAugNewBlueLoose)[r] += e;
        u[r] -= e + e;
      } else if (cr > cb) {
        aug_row(kAugNewRedStrict)[r] += e;
        u[r] -= e;
      } else {
        aug_row(kAugNewBlueStrict)[r] += e;
        u[r] -= e;
      }
    }
  }

  const int max_moved = mode == EvolveMode::kSimplified ? 1 : d;
  ClassOp op(sp, aug.data(), M, opts.prune_threshold, opts.term_threshold, max_moved);

  // Neighbor coloring.  A neighbor's type adds the pre-step root color to its
  // outer tally; matching letters color like the root rule and forget their
  // outer counts.  Grouped by pre-step root color.
  if (params.q > 0.0) {
    static const std::vector<int> kRowsU = {kAugStay, kAugNewRedLoose,
                                            kAugNewRedStrict, kAugNewBlueLoose,
                                            kAugNewBlueStrict};
    static const std::vector<int> kRowsR = {kAugOldRedLoose, kAugOldRedStrict};
    static const std::vector<int> kRowsB = {kAugOldBlueLoose, kAugOldBlueStrict};
    struct Group {
      const std::vector<int>* rows;
      int add_red, add_blue;
    };
    const Group groups[3] = {{&kRowsU, 0, 0}, {&kRowsR, 1, 0}, {&kRowsB, 0, 1}};
    for (const Group& g : groups) {
      for (int l = 2; l < sp.alphabet_size(); ++l) {
        int rn = sp.outer_red(l) + g.add_red;
        int bn = sp.outer_blue(l) + g.add_blue;
        if (VertexType(rn, bn) != D) continue;
        std::vector<ClassOutcome> outs;
        if (rn == bn) {
          outs = {{StateSpace::kLetterColoredRed, params.q},
                  {StateSpace::kLetterColoredBlue, params.q}};
        } else if (rn > bn) {
          outs = {{StateSpace::kLetterColoredRed, params.q}};
        } else {
          outs = {{StateSpace::kLetterColoredBlue, params.q}};
        }
        op.apply(*g.rows, l, outs);
      }
    }
  }

  // Outer fills.  Undetermined outer slots of still-open neighbors take each
  // color at q_hat.  Letters are processed from the highest outer level down:
  // every output lands at a strictly higher level, already processed, so no
  // slot can fill twice within the step.
  if (params.q_hat > 0.0) {
    static const std::vector<int> kAllRows = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> letters;
    for (int l = 2; l < sp.alphabet_size(); ++l)
      if (sp.undetermined(l) >= 1) letters.push_back(l);
    std::sort(letters.begin(), letters.end(), [&](int a, int b) {
      if (sp.open_level(a) != sp.open_level(b))
        return sp.open_level(a) > sp.open_level(b);
      return a < b;
    });
    const double qh = params.q_hat;
    const double slot_stay = 1.0 - 2.0 * qh;
    for (int l : letters) {
      int u = sp.undetermined(l);
      int orr = sp.outer_red(l);
      int ob = sp.outer_blue(l);
      std::vector<ClassOutcome> outs;
      for (int i = 0; i <= u; ++i) {
        for (int j = 0; i + j <= u; ++j) {
          if (i + j == 0) continue;
          if (mode == EvolveMode::kSimplified && i + j > 1) continue;
          double w = static_cast<double>(sp.binomial(u, i)) *
                     static_cast<double>(sp.binomial(u - i, j)) *
                     std::pow(qh, i + j) * std::pow(slot_stay, u - i - j);
          outs.push_back({sp.open_letter(orr + i, ob + j), w});
        }
      }
      op.apply(kAllRows, l, outs);
    }
  }

  // Project the augmented rows back to plain statuses.
  std::memcpy(mu_row(RootStatus::kUncolored), aug_row(kAugStay), M * sizeof(double));
  struct Merge {
    RootStatus st;
    int fresh, old;
  };
  const Merge merges[4] = {
      {RootStatus::kRedLoose, kAugNewRedLoose, kAugOldRedLoose},
      {RootStatus::kRedStrict, kAugNewRedStrict, kAugOldRedStrict},
      {RootStatus::kBlueLoose, kAugNewBlueLoose, kAugOldBlueLoose},
      {RootStatus::kBlueStrict, kAugNewBlueStrict, kAugOldBlueStrict}};
  for (const Merge& mg : merges) {
    double* dst = mu_row(mg.st);
    const double* a = aug_row(mg.fresh);
    const double* b = aug_row(mg.old);
    for (std::int64_t r = 0; r < M; ++r) dst[r] = a[r] + b[r];
  }

  mu.prune_below(opts.prune_threshold);
  if (opts.check_invariants) check_invariants_post_step(mu, mode, opts, params.t);
}

Phase1Result run_phase1(int d, double eps, EvolveMode mode,
                        const EvolveOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("run_phase1: eps must be in (0, 1)");
  Measure mu = Measure::initial(d);
  std::vector<StepParams> schedule;
  const long long cap = opts.max_steps > 0
                            ? opts.max_steps
                            : static_cast<long long>(std::ceil(1.0 / eps)) + 2;
  for (long long t = 1;; ++t) {
    if (t > cap)
      throw std::runtime_error("run_phase1: step cap exceeded (diverging schedule)");
    std::optional<VertexType> dom = dominant_type(mu.root_type_masses(), eps);
    if (!dom) break;
    auto [q, q_hat] = step_thresholds(mu, *dom, eps, d);
    StepParams params;
    params.t = static_cast<int>(t);
    params.dominant = *dom;
    params.multiplicity = multiplicity(*dom);
    params.q = q;
    params.q_hat = q_hat;
    transition_step(mu, params, mode, opts);
    if (opts.check_invariants) {
      double u = mu.uncolored_root_mass();
      double want = 1.0 - static_cast<double>(t) * eps;
      if (std::fabs(u - want) > opts.rate_tol)
        throw std::runtime_error("run_phase1: coloring rate drift " +
                                 std::to_string(u - want) + " at step " +
                                 std::to_string(t));
    }
    schedule.push_back(params);
  }
  return {std::move(mu), std::move(schedule)};
}

void finalize_random_coloring(Measure& mu) {
  const StateSpace& sp = mu.space();
  const std::int64_t M = sp.num_ranks();
  double* buf = mu.data().data();

  // Remaining uncolored roots split evenly; terminal colors are never strict.
  {
    double* u = buf;  // row of RootStatus::kUncolored
    double* rl = buf + static_cast<std::size_t>(
                           static_cast<int>(RootStatus::kRedLoose)) * M;
    double* bl = buf + static_cast<std::size_t>(
                           static_cast<int>(RootStatus::kBlueLoose)) * M;
    for (std::int64_t r = 0; r < M; ++r) {
      double m = u[r];
      if (m == 0.0) continue;
      rl[r] += 0.5 * m;
      bl[r] += 0.5 * m;
      u[r] = 0.0;
    }
  }

  // Every open neighbor takes a fair color; splits are dyadic and exact, so
  // no term threshold applies here.
  static const std::vector<int> kAllStatusRows = {0, 1, 2, 3, 4};
  ClassOp op(sp, buf, M, 0.0, 0.0, sp.degree());
  const std::vector<ClassOutcome> fair = {
      {StateSpace::kLetterColoredRed, 0.5},
      {StateSpace::kLetterColoredBlue, 0.5}};
  for (int l = 2; l < sp.alphabet_size(); ++l) op.apply(kAllStatusRows, l, fair);
}

double cut_per_vertex(const Measure& mu) {
  const StateSpace& sp = mu.space();
  KahanSum s;
  for (RootStatus st : {RootStatus::kRedLoose, RootStatus::kRedStrict}) {
    for (std::int64_t r = 0; r < mu.num_ranks(); ++r) {
      double m = mu.at(st, r);
      if (m != 0.0)
        s.add(m * sp.counts(r)[StateSpace::kLetterColoredBlue]);
    }
  }
  return s.value();
}

std::pair<double, double> miscolored_and_eligible_measures(const Measure& mu) {
  if (mu.max_color_asymmetry() > 1e-9)
    throw std::invalid_argument("miscolored measures: measure not color-symmetric");
  const StateSpace& sp = mu.space();
  const int d = mu.degree();
  const int bare_majority = (d + 1) / 2;
  KahanSum mis, eli;
  for (RootStatus st : {RootStatus::kRedLoose, RootStatus::kRedStrict}) {
    for (std::int64_t r = 0; r < mu.num_ranks(); ++r) {
      double m = mu.at(st, r);
      if (m == 0.0) continue;
      const std::uint8_t* c = sp.counts(r);
      int cr = c[StateSpace::kLetterColoredRed];
      int cb = c[StateSpace::kLetterColoredBlue];
      if (cr + cb < d) continue;  // neighborhood majority not settled yet
      if (cb > cr) mis.add(m);
      if (st == RootStatus::kRedStrict && cb == bare_majority) eli.add(m);
    }
  }
  return {2.0 * mis.value(), 2.0 * eli.value()};
}

double bihole_fraction(int delta) {
  if (delta == 3) return 0.34116;
  if (delta == 4) return 0.24716;
  throw std::invalid_argument("bihole_fraction: delta must be 3 or 4");
}

double improved_cut(double cut, double eligible, int delta) {
  if (!(cut >= 0.0) || !(eligible >= 0.0))
    throw std::invalid_argument("improved_cut: cut and eligible must be >= 0");
  return cut - bihole_fraction(delta) * eligible;
}

TreeRun run_tree(int d, double eps, EvolveMode mode, const EvolveOptions& opts) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  Phase1Result phase1 = run_phase1(d, eps, mode, opts);
  auto t1 = Clock::now();

  TreeRun run;
  run.schedule = std::move(phase1.schedule);
  TreeReport& rep = run.report;
  rep.d = d;
  rep.eps = eps;
  rep.mode = mode;
  rep.steps = static_cast<int>(run.schedule.size());
  rep.uncolored_before_finalize = phase1.mu.uncolored_root_mass();

  rep.cut = cut_per_vertex(phase1.mu);
  auto [mis, eli] = miscolored_and_eligible_measures(phase1.mu);
  rep.miscolored = mis;
  rep.eligible = eli;
  // Conflict degree of the swap graph is ceil(d/2); the guaranteed-density
  // constants exist for degrees 3 and 4, and a degree-<=3 bound is valid for
  // sparser conflicts too.
  const int delta = std::max(3, std::min(4, (d + 1) / 2));
  rep.improvement = bihole_fraction(delta) * rep.eligible;
  rep.improved_cut_delta3 = improved_cut(rep.cut, rep.eligible, 3);
  rep.improved_cut_delta4 = improved_cut(rep.cut, rep.eligible, 4);

  finalize_random_coloring(phase1.mu);
  rep.final_total_mass = phase1.mu.total_mass();
  rep.final_max_asymmetry = phase1.mu.max_color_asymmetry();
  rep.cut_after_terminal = cut_per_vertex(phase1.mu);

  auto t2 = Clock::now();
  rep.phase1_seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.total_seconds = std::chrono::duration<double>(t2 - t0).count();
  return run;
}

}  // namespace localcut
