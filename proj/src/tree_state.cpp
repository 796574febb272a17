#include "localcut/tree_state.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

namespace localcut {

namespace {

// Supported degree window: below 3 the two-phase dynamics degenerate, above 7
// the dense state vector (5 * C(A+d-1, d) doubles) stops fitting comfortably.
constexpr int kMinDegree = 3;
constexpr int kMaxDegree = 7;

}  // namespace

const StateSpace& StateSpace::get(int d) {
  if (d < kMinDegree || d > kMaxDegree)
    throw std::invalid_argument("StateSpace: degree must be in [3, 7]");
  static std::map<int, std::unique_ptr<StateSpace>> cache;
  auto it = cache.find(d);
  if (it == cache.end())
    it = cache.emplace(d, std::unique_ptr<StateSpace>(new StateSpace(d))).first;
  return *it->second;
}

StateSpace::StateSpace(int d) : d_(d) {
  alphabet_ = 2 + d * (d + 1) / 2;

  // Pascal triangle; int64 is ample for C(n<=63, k).
  binom_.assign(static_cast<std::size_t>(kBinomMax + 1) * (kBinomMax + 1), 0);
  for (int n = 0; n <= kBinomMax; ++n) {
    binom_[static_cast<std::size_t>(n) * (kBinomMax + 1)] = 1;
    for (int k = 1; k <= n; ++k) {
      std::int64_t a = binom_[static_cast<std::size_t>(n - 1) * (kBinomMax + 1) + k - 1];
      std::int64_t b = k <= n - 1
          ? binom_[static_cast<std::size_t>(n - 1) * (kBinomMax + 1) + k]
          : 0;
      binom_[static_cast<std::size_t>(n) * (kBinomMax + 1) + k] = a + b;
    }
  }

  // Alphabet: colored letters first, then open letters in (outer_red,
  // outer_blue) lexicographic order.
  open_red_.assign(alphabet_, -1);
  open_blue_.assign(alphabet_, -1);
  {
    int idx = 2;
    for (int r = 0; r <= d - 1; ++r) {
      for (int b = 0; r + b <= d - 1; ++b) {
        open_red_[idx] = r;
        open_blue_[idx] = b;
        ++idx;
      }
    }
    if (idx != alphabet_) throw std::logic_error("StateSpace: alphabet mismatch");
  }

  swap_letter_.assign(alphabet_, 0);
  swap_letter_[kLetterColoredRed] = kLetterColoredBlue;
  swap_letter_[kLetterColoredBlue] = kLetterColoredRed;
  for (int l = 2; l < alphabet_; ++l)
    swap_letter_[l] = open_letter(open_blue_[l], open_red_[l]);

  num_ranks_ = binomial(alphabet_ + d - 1, d);

  // Enumerate all count vectors in canonical (rank) order and freeze the
  // per-rank tables.  Canonical order puts larger counts at earlier letters
  // first, so rank 0 is "d copies of letter 0".
  counts_.assign(static_cast<std::size_t>(num_ranks_) * alphabet_, 0);
  std::vector<std::uint8_t> cur(alphabet_, 0);
  std::int64_t rank = 0;
  // Recursive enumeration without recursion: directly unrank each index.
  for (rank = 0; rank < num_ranks_; ++rank) {
    std::int64_t r = rank;
    int rem = d;
    for (int i = 0; i < alphabet_ - 1; ++i) {
      int k = alphabet_ - 1 - i;  // letters after position i
      int ci = rem;
      for (int x = rem; x >= 0; --x) {
        std::int64_t block = binomial(rem - x + k - 1, k - 1);
        if (r < block) {
          ci = x;
          break;
        }
        r -= block;
      }
      cur[i] = static_cast<std::uint8_t>(ci);
      rem -= ci;
    }
    cur[alphabet_ - 1] = static_cast<std::uint8_t>(rem);
    std::copy(cur.begin(), cur.end(),
              counts_.begin() + static_cast<std::size_t>(rank) * alphabet_);
  }

  ranks_with_.assign(alphabet_, {});
  std::vector<std::uint8_t> swapped(alphabet_);
  swap_rank_.assign(num_ranks_, 0);
  for (std::int64_t rk = 0; rk < num_ranks_; ++rk) {
    const std::uint8_t* row = counts(rk);
    for (int l = 0; l < alphabet_; ++l) {
      if (row[l] > 0) ranks_with_[l].push_back(rk);
      swapped[swap_letter_[l]] = row[l];
    }
    swap_rank_[rk] = rank_of_counts(swapped.data());
  }

  for (int lo = 0; 2 * lo <= d; ++lo)
    for (int hi = lo; lo + hi <= d; ++hi) types_.emplace_back(lo, hi);
  rank_type_.assign(num_ranks_, 0);
  for (std::int64_t rk = 0; rk < num_ranks_; ++rk)
    rank_type_[rk] = static_cast<std::uint8_t>(type_index(rank_type(rk)));
}

int StateSpace::type_index(const VertexType& t) const {
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (types_[i] == t) return static_cast<int>(i);
  throw std::invalid_argument("type_index: type out of range for degree");
}

std::int64_t StateSpace::binomial(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > kBinomMax) throw std::invalid_argument("binomial: n too large");
  return binom_[static_cast<std::size_t>(n) * (kBinomMax + 1) + k];
}

int StateSpace::open_letter(int outer_red, int outer_blue) const {
  if (outer_red < 0 || outer_blue < 0 || outer_red + outer_blue > d_ - 1)
    throw std::invalid_argument("open_letter: outer counts out of range");
  return 2 + outer_red * d_ - outer_red * (outer_red - 1) / 2 + outer_blue;
}

NeighborDescriptor StateSpace::descriptor(int letter) const {
  if (letter < 0 || letter >= alphabet_)
    throw std::invalid_argument("descriptor: letter out of range");
  NeighborDescriptor nd;
  if (letter == kLetterColoredRed) {
    nd.kind = NeighborDescriptor::Kind::kColoredRed;
  } else if (letter == kLetterColoredBlue) {
    nd.kind = NeighborDescriptor::Kind::kColoredBlue;
  } else {
    nd.kind = NeighborDescriptor::Kind::kOpen;
    nd.outer_red = open_red_[letter];
    nd.outer_blue = open_blue_[letter];
  }
  return nd;
}

int StateSpace::letter_of(const NeighborDescriptor& nd) const {
  switch (nd.kind) {
    case NeighborDescriptor::Kind::kColoredRed: return kLetterColoredRed;
    case NeighborDescriptor::Kind::kColoredBlue: return kLetterColoredBlue;
    default: return open_letter(nd.outer_red, nd.outer_blue);
  }
}

std::int64_t StateSpace::rank_of_counts(const std::uint8_t* c) const {
  // Count vectors are ordered with larger counts at earlier letters first.
  // At each position, skip the blocks of all vectors whose count there
  // exceeds ours; block sizes are compositions of the leftover total.
  std::int64_t rank = 0;
  int rem = d_;
  for (int i = 0; i < alphabet_ - 1; ++i) {
    int k = alphabet_ - 1 - i;
    // Vectors with count x > c[i] at position i come earlier.
    // Sum over x = c[i]+1 .. rem of C(rem-x+k-1, k-1) = C(rem-c[i]-1+k, k).
    if (c[i] < rem) rank += binomial(rem - c[i] - 1 + k, k);
    rem -= c[i];
    if (rem == 0) break;
  }
  return rank;
}

TreeState StateSpace::make_state(RootStatus root, const std::vector<int>& letters) const {
  if (static_cast<int>(letters.size()) != d_)
    throw std::invalid_argument("make_state: need exactly d letters");
  TreeState s;
  s.root = root;
  s.letters.reserve(d_);
  for (int l : letters) {
    if (l < 0 || l >= alphabet_)
      throw std::invalid_argument("make_state: letter out of range");
    s.letters.push_back(static_cast<std::uint8_t>(l));
  }
  std::sort(s.letters.begin(), s.letters.end());
  return s;
}

std::int64_t StateSpace::rank_of(const TreeState& s) const {
  if (static_cast<int>(s.letters.size()) != d_)
    throw std::invalid_argument("rank_of: need exactly d letters");
  std::vector<std::uint8_t> c(alphabet_, 0);
  for (std::uint8_t l : s.letters) {
    if (l >= alphabet_) throw std::invalid_argument("rank_of: letter out of range");
    ++c[l];
  }
  return rank_of_counts(c.data());
}

TreeState StateSpace::state_at(RootStatus root, std::int64_t rank) const {
  if (rank < 0 || rank >= num_ranks_)
    throw std::invalid_argument("state_at: rank out of range");
  TreeState s;
  s.root = root;
  const std::uint8_t* row = counts(rank);
  for (int l = 0; l < alphabet_; ++l)
    for (int c = 0; c < row[l]; ++c) s.letters.push_back(static_cast<std::uint8_t>(l));
  return s;
}

std::int64_t enumerate_state_count(int d) {
  const StateSpace& sp = StateSpace::get(d);
  return sp.num_states();
}

}  // namespace localcut
