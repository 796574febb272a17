#include <set>

#include "doctest.h"
#include "localcut/tree_state.hpp"

using namespace localcut;

TEST_SUITE("tree_state") {

TEST_CASE("alphabet and state counts match the combinatorics") {
  const StateSpace& s3 = StateSpace::get(3);
  CHECK(s3.alphabet_size() == 8);      // 2 colored + 6 open pairs
  CHECK(s3.num_ranks() == 120);        // C(8+3-1, 3)
  CHECK(s3.num_states() == 600);
  CHECK(enumerate_state_count(3) == 600);

  const StateSpace& s5 = StateSpace::get(5);
  CHECK(s5.alphabet_size() == 17);     // 2 colored + 15 open pairs
  CHECK(s5.num_ranks() == 20349);      // C(17+5-1, 5)
  CHECK(s5.num_states() == 101745);
}

TEST_CASE("degree guard rejects out-of-range degrees") {
  CHECK_THROWS_AS(StateSpace::get(2), std::invalid_argument);
  CHECK_THROWS_AS(StateSpace::get(8), std::invalid_argument);
}

TEST_CASE("rank and counts are mutually inverse") {
  for (int d : {3, 5}) {
    const StateSpace& sp = StateSpace::get(d);
    for (std::int64_t r = 0; r < sp.num_ranks(); ++r) {
      CHECK(sp.rank_of_counts(sp.counts(r)) == r);
    }
    // Counts rows always sum to d.
    for (std::int64_t r = 0; r < sp.num_ranks(); r += 7) {
      int sum = 0;
      for (int l = 0; l < sp.alphabet_size(); ++l) sum += sp.counts(r)[l];
      CHECK(sum == d);
    }
  }
}

TEST_CASE("open letters carry consistent outer tallies") {
  const StateSpace& sp = StateSpace::get(5);
  std::set<int> seen;
  for (int r = 0; r <= 4; ++r) {
    for (int b = 0; r + b <= 4; ++b) {
      int l = sp.open_letter(r, b);
      CHECK(sp.is_open(l));
      CHECK(sp.outer_red(l) == r);
      CHECK(sp.outer_blue(l) == b);
      CHECK(sp.open_level(l) == r + b);
      CHECK(sp.undetermined(l) == 4 - r - b);
      seen.insert(l);
    }
  }
  CHECK(static_cast<int>(seen.size()) == 15);
  CHECK_THROWS_AS(sp.open_letter(3, 2), std::invalid_argument);

  NeighborDescriptor nd = sp.descriptor(sp.open_letter(1, 2));
  CHECK(nd.kind == NeighborDescriptor::Kind::kOpen);
  CHECK(nd.outer_red == 1);
  CHECK(nd.outer_blue == 2);
  CHECK(sp.letter_of(nd) == sp.open_letter(1, 2));
}

TEST_CASE("swap tables are color involutions") {
  for (int d : {3, 5}) {
    const StateSpace& sp = StateSpace::get(d);
    CHECK(sp.swap_letter(StateSpace::kLetterColoredRed) ==
          StateSpace::kLetterColoredBlue);
    for (int l = 0; l < sp.alphabet_size(); ++l)
      CHECK(sp.swap_letter(sp.swap_letter(l)) == l);
    for (std::int64_t r = 0; r < sp.num_ranks(); ++r)
      CHECK(sp.swap_rank(sp.swap_rank(r)) == r);
  }
  // Hand check: {ColoredRed, Open(2,0), Open(0,1)} swaps to
  // {ColoredBlue, Open(0,2), Open(1,0)}.
  const StateSpace& sp = StateSpace::get(3);
  TreeState a = sp.make_state(
      RootStatus::kUncolored,
      {StateSpace::kLetterColoredRed, sp.open_letter(2, 0), sp.open_letter(0, 1)});
  TreeState b = sp.make_state(
      RootStatus::kUncolored,
      {StateSpace::kLetterColoredBlue, sp.open_letter(0, 2), sp.open_letter(1, 0)});
  CHECK(sp.swap_rank(sp.rank_of(a)) == sp.rank_of(b));
}

TEST_CASE("ranks_with lists exactly the multisets containing the letter") {
  const StateSpace& sp = StateSpace::get(3);
  for (int l = 0; l < sp.alphabet_size(); ++l) {
    // Multisets of size d-1 over the full alphabet.
    CHECK(static_cast<std::int64_t>(sp.ranks_with(l).size()) ==
          sp.binomial(sp.alphabet_size() + sp.degree() - 2, sp.degree() - 1));
    for (std::int64_t r : sp.ranks_with(l)) CHECK(sp.counts(r)[l] >= 1);
  }
}

TEST_CASE("root status helpers round-trip") {
  CHECK(root_color(RootStatus::kRedStrict) == Color::kRed);
  CHECK(root_color(RootStatus::kBlueLoose) == Color::kBlue);
  CHECK(root_strict(RootStatus::kRedStrict));
  CHECK_FALSE(root_strict(RootStatus::kRedLoose));
  CHECK(make_root_status(Color::kBlue, true) == RootStatus::kBlueStrict);
  CHECK(swap_root(RootStatus::kRedStrict) == RootStatus::kBlueStrict);
  CHECK(swap_root(RootStatus::kUncolored) == RootStatus::kUncolored);
  CHECK_THROWS_AS(make_root_status(Color::kUncolored, true), std::invalid_argument);
}

TEST_CASE("state round-trips through rank and canonical letters") {
  const StateSpace& sp = StateSpace::get(5);
  TreeState s = sp.make_state(RootStatus::kRedStrict,
                              {1, 0, sp.open_letter(2, 2), 0, sp.open_letter(0, 3)});
  // Letters come back sorted.
  for (std::size_t i = 1; i < s.letters.size(); ++i)
    CHECK(s.letters[i - 1] <= s.letters[i]);
  std::int64_t r = sp.rank_of(s);
  TreeState t = sp.state_at(RootStatus::kRedStrict, r);
  CHECK(t == s);
  CHECK(sp.state_index(s) ==
        static_cast<std::int64_t>(RootStatus::kRedStrict) * sp.num_ranks() + r);
  CHECK_THROWS_AS(sp.make_state(RootStatus::kUncolored, {0, 0}), std::invalid_argument);
}

TEST_CASE("types table covers every rank") {
  const StateSpace& sp = StateSpace::get(5);
  CHECK(sp.types().size() == 12);  // lo<=hi, lo+hi<=5
  for (std::int64_t r = 0; r < sp.num_ranks(); ++r) {
    VertexType t = sp.rank_type(r);
    CHECK(sp.types()[sp.type_index_of_rank(r)] == t);
    CHECK(sp.type_index(t) == sp.type_index_of_rank(r));
  }
  CHECK_THROWS_AS(sp.type_index(VertexType(3, 3)), std::invalid_argument);
}

}  // TEST_SUITE
