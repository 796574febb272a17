#pragma once

#include <cstdint>
#include <vector>

#include "localcut/types.hpp"

namespace localcut {

// What the tracked root looks like after phase 1 / finalization.  "Strict"
// roots were colored while in the dominant asymmetric configuration and obey
// the orientation rule; "loose" ones got their color any other way.
enum class RootStatus : std::uint8_t {
  kUncolored = 0,
  kRedLoose = 1,
  kRedStrict = 2,
  kBlueLoose = 3,
  kBlueStrict = 4,
};
inline constexpr int kNumRootStatuses = 5;

inline Color root_color(RootStatus s) {
  switch (s) {
    case RootStatus::kUncolored: return Color::kUncolored;
    case RootStatus::kRedLoose:
    case RootStatus::kRedStrict: return Color::kRed;
    default: return Color::kBlue;
  }
}

inline bool root_strict(RootStatus s) {
  return s == RootStatus::kRedStrict || s == RootStatus::kBlueStrict;
}

inline RootStatus make_root_status(Color c, bool strict) {
  if (c == Color::kUncolored) {
    if (strict) throw std::invalid_argument("make_root_status: uncolored cannot be strict");
    return RootStatus::kUncolored;
  }
  if (c == Color::kRed) return strict ? RootStatus::kRedStrict : RootStatus::kRedLoose;
  return strict ? RootStatus::kBlueStrict : RootStatus::kBlueLoose;
}

inline RootStatus swap_root(RootStatus s) {
  switch (s) {
    case RootStatus::kRedLoose: return RootStatus::kBlueLoose;
    case RootStatus::kRedStrict: return RootStatus::kBlueStrict;
    case RootStatus::kBlueLoose: return RootStatus::kRedLoose;
    case RootStatus::kBlueStrict: return RootStatus::kRedStrict;
    default: return RootStatus::kUncolored;
  }
}

// One neighbor of the root, summarized to what the depth-2 dynamics can see:
// either already colored, or still open with a tally of its own colored
// outer neighbors (the root itself excluded, so outer_red+outer_blue <= d-1).
struct NeighborDescriptor {
  enum class Kind : std::uint8_t { kColoredRed = 0, kColoredBlue = 1, kOpen = 2 };
  Kind kind = Kind::kOpen;
  int outer_red = 0;
  int outer_blue = 0;
};

// Root status plus the unordered collection of d neighbor descriptors,
// stored as sorted letter indices into StateSpace's alphabet.
struct TreeState {
  RootStatus root = RootStatus::kUncolored;
  std::vector<std::uint8_t> letters;  // ascending, size d

  bool operator==(const TreeState& o) const {
    return root == o.root && letters == o.letters;
  }
  bool operator<(const TreeState& o) const {
    if (root != o.root) return root < o.root;
    return letters < o.letters;
  }
};

// Immutable tables for the depth-2 state space at a fixed degree d:
// the neighbor alphabet, a bijective multiset ranking, per-letter occurrence
// lists, and the red/blue swap involution.  Build once per degree.
class StateSpace {
 public:
  static const StateSpace& get(int d);

  int degree() const { return d_; }
  int alphabet_size() const { return alphabet_; }
  std::int64_t num_ranks() const { return num_ranks_; }
  std::int64_t num_states() const { return kNumRootStatuses * num_ranks_; }

  // Letters 0 and 1 are the colored descriptors.
  static constexpr int kLetterColoredRed = 0;
  static constexpr int kLetterColoredBlue = 1;

  int open_letter(int outer_red, int outer_blue) const;
  bool is_open(int letter) const { return letter >= 2; }
  int outer_red(int letter) const { return open_red_[letter]; }
  int outer_blue(int letter) const { return open_blue_[letter]; }
  int open_level(int letter) const { return open_red_[letter] + open_blue_[letter]; }
  int undetermined(int letter) const { return d_ - 1 - open_level(letter); }
  int swap_letter(int letter) const { return swap_letter_[letter]; }

  NeighborDescriptor descriptor(int letter) const;
  int letter_of(const NeighborDescriptor& nd) const;

  // Rank of a count vector (size alphabet, sum d) in the canonical order.
  std::int64_t rank_of_counts(const std::uint8_t* counts) const;
  // Row of per-letter counts for a rank; valid until the space is destroyed.
  const std::uint8_t* counts(std::int64_t rank) const {
    return counts_.data() + static_cast<std::size_t>(rank) * alphabet_;
  }
  std::int64_t swap_rank(std::int64_t rank) const { return swap_rank_[rank]; }

  // Ranks whose multiset contains at least one copy of `letter`.
  const std::vector<std::int64_t>& ranks_with(int letter) const {
    return ranks_with_[letter];
  }

  TreeState make_state(RootStatus root, const std::vector<int>& letters) const;
  std::int64_t rank_of(const TreeState& s) const;
  std::int64_t state_index(const TreeState& s) const {
    return static_cast<std::int64_t>(s.root) * num_ranks_ + rank_of(s);
  }
  TreeState state_at(RootStatus root, std::int64_t rank) const;

  // Unordered (red,blue) colored-neighbor type of a rank's multiset.
  VertexType rank_type(std::int64_t rank) const {
    const std::uint8_t* c = counts(rank);
    return VertexType(c[kLetterColoredRed], c[kLetterColoredBlue]);
  }

  // All unordered types (lo+hi <= d) in container order, plus a per-rank
  // index so type masses can be tallied in one flat sweep.
  const std::vector<VertexType>& types() const { return types_; }
  int type_index(const VertexType& t) const;
  int type_index_of_rank(std::int64_t rank) const { return rank_type_[rank]; }

  std::int64_t binomial(int n, int k) const;

 private:
  explicit StateSpace(int d);

  int d_;
  int alphabet_;
  std::int64_t num_ranks_;
  std::vector<int> open_red_, open_blue_;  // per letter; -1 for colored
  std::vector<int> swap_letter_;
  std::vector<std::int64_t> binom_;  // (n,k) -> binom_[n*(kBinomMax+1)+k]
  std::vector<std::uint8_t> counts_;
  std::vector<std::int64_t> swap_rank_;
  std::vector<std::vector<std::int64_t>> ranks_with_;
  std::vector<VertexType> types_;
  std::vector<std::uint8_t> rank_type_;

  static constexpr int kBinomMax = 63;
};

// Total number of depth-2 states for degree d (statuses x multisets).
std::int64_t enumerate_state_count(int d);

}  // namespace localcut
