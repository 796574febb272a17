#include "localcut/tree_measure.hpp"

#include <cmath>

#include "localcut/numerics.hpp"

namespace localcut {

Measure::Measure(int d)
    : d_(d),
      space_(&StateSpace::get(d)),
      num_ranks_(space_->num_ranks()),
      mass_(static_cast<std::size_t>(kNumRootStatuses) * num_ranks_, 0.0) {}

Measure Measure::initial(int d) {
  Measure m(d);
  const StateSpace& sp = m.space();
  std::vector<int> letters(d, sp.open_letter(0, 0));
  m.set_mass(sp.make_state(RootStatus::kUncolored, letters), 1.0);
  return m;
}

double Measure::total_mass() const {
  KahanSum s;
  for (double v : mass_) s.add(v);
  return s.value();
}

double Measure::uncolored_root_mass() const {
  KahanSum s;
  const double* base = mass_.data();
  for (std::int64_t r = 0; r < num_ranks_; ++r) s.add(base[r]);
  return s.value();
}

double Measure::root_type_mass(const VertexType& type) const {
  int ti = space_->type_index(type);
  KahanSum s;
  const double* base = mass_.data();
  for (std::int64_t r = 0; r < num_ranks_; ++r) {
    if (base[r] != 0.0 && space_->type_index_of_rank(r) == ti) s.add(base[r]);
  }
  return s.value();
}

std::vector<std::pair<VertexType, double>> Measure::root_type_masses() const {
  // Same per-type addition order as root_type_mass, so the two agree bitwise.
  std::vector<KahanSum> acc(space_->types().size());
  const double* base = mass_.data();
  for (std::int64_t r = 0; r < num_ranks_; ++r) {
    if (base[r] != 0.0) acc[space_->type_index_of_rank(r)].add(base[r]);
  }
  std::vector<std::pair<VertexType, double>> out;
  out.reserve(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out.emplace_back(space_->types()[i], acc[i].value());
  return out;
}

double Measure::uncolored_edge_mass() const {
  KahanSum s;
  const double* base = mass_.data();
  for (std::int64_t r = 0; r < num_ranks_; ++r) {
    if (base[r] == 0.0) continue;
    const std::uint8_t* c = space_->counts(r);
    int open = d_ - c[StateSpace::kLetterColoredRed] - c[StateSpace::kLetterColoredBlue];
    if (open > 0) s.add(base[r] * open / d_);
  }
  return s.value();
}

double Measure::root_red_mass() const {
  KahanSum s;
  for (RootStatus st : {RootStatus::kRedLoose, RootStatus::kRedStrict}) {
    const double* base =
        mass_.data() + static_cast<std::size_t>(static_cast<int>(st)) * num_ranks_;
    for (std::int64_t r = 0; r < num_ranks_; ++r) s.add(base[r]);
  }
  return s.value();
}

double Measure::neighbor_red_marginal() const {
  KahanSum s;
  for (int st = 0; st < kNumRootStatuses; ++st) {
    const double* base = mass_.data() + static_cast<std::size_t>(st) * num_ranks_;
    for (std::int64_t r = 0; r < num_ranks_; ++r) {
      if (base[r] == 0.0) continue;
      int cr = space_->counts(r)[StateSpace::kLetterColoredRed];
      if (cr > 0) s.add(base[r] * cr / d_);
    }
  }
  return s.value();
}

double Measure::max_color_asymmetry() const {
  double worst = 0.0;
  for (int st = 0; st < kNumRootStatuses; ++st) {
    int sst = static_cast<int>(swap_root(static_cast<RootStatus>(st)));
    const double* a = mass_.data() + static_cast<std::size_t>(st) * num_ranks_;
    const double* b = mass_.data() + static_cast<std::size_t>(sst) * num_ranks_;
    for (std::int64_t r = 0; r < num_ranks_; ++r) {
      if (a[r] == 0.0 && b[space_->swap_rank(r)] == 0.0) continue;
      double diff = std::fabs(a[r] - b[space_->swap_rank(r)]);
      if (diff > worst) worst = diff;
    }
  }
  return worst;
}

bool Measure::fully_colored(double tol) const {
  if (uncolored_root_mass() > tol) return false;
  // Colored root but open neighbors also counts as not fully colored.
  for (int st = 1; st < kNumRootStatuses; ++st) {
    const double* base = mass_.data() + static_cast<std::size_t>(st) * num_ranks_;
    for (std::int64_t r = 0; r < num_ranks_; ++r) {
      if (base[r] == 0.0) continue;
      const std::uint8_t* c = space_->counts(r);
      int open =
          d_ - c[StateSpace::kLetterColoredRed] - c[StateSpace::kLetterColoredBlue];
      if (open > 0 && base[r] > tol) return false;
    }
  }
  return true;
}

void Measure::prune_below(double threshold) {
  for (double& v : mass_)
    if (v != 0.0 && std::fabs(v) < threshold) v = 0.0;
}

void Measure::for_each(
    const std::function<void(RootStatus, std::int64_t, double)>& fn) const {
  for (int st = 0; st < kNumRootStatuses; ++st) {
    const double* base = mass_.data() + static_cast<std::size_t>(st) * num_ranks_;
    for (std::int64_t r = 0; r < num_ranks_; ++r) {
      if (base[r] != 0.0) fn(static_cast<RootStatus>(st), r, base[r]);
    }
  }
}

}  // namespace localcut
