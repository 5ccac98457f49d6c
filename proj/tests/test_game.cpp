#include <algorithm>
#include <bit>
#include <set>

#include "cgt/enumerate.hpp"
#include "cgt/notation.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cgt;
using cgt_test::TreeGame;

TEST_CASE("intern is hash-consing and does not canonicalize") {
  Arena arena;
  CHECK(arena.intern({}, {}) == arena.zero());
  GameId star = read_game("*", arena);
  CHECK(arena.intern({{arena.zero()}}, {{arena.zero()}}) == star);
  GameId one = arena.integer(1);
  GameId raw = arena.intern({{arena.integer(-1)}}, {{one}});  // {-1|1}
  CHECK(arena.intern({{arena.integer(-1)}}, {{one}}) == raw);
  CHECK_FALSE(raw == arena.zero());  // stored verbatim, not simplified
  CHECK_THROWS_AS(arena.intern({{GameId{999999}}}, {}), UsageError);
}

TEST_CASE("leq base cases") {
  Arena arena;
  GameId star = read_game("*", arena);
  CHECK(arena.leq(arena.zero(), arena.zero()));
  CHECK_FALSE(arena.leq(star, arena.zero()));
  CHECK_FALSE(arena.leq(arena.zero(), star));
  GameId star2 = read_game("*2", arena);
  GameId up = read_game("^", arena);
  CHECK(arena.leq(star2, up));
  CHECK_FALSE(arena.leq(up, star2));
}

TEST_CASE("leq agrees with a direct tree-unfolding oracle") {
  Arena arena;
  TreeGame zero;
  TreeGame one{{zero}, {}};
  TreeGame minus_one{{}, {zero}};
  TreeGame two{{one}, {}};
  TreeGame star{{zero}, {zero}};
  TreeGame up{{zero}, {star}};
  TreeGame down{{star}, {zero}};
  TreeGame up_star{{zero, star}, {zero}};
  TreeGame half{{zero}, {one}};
  TreeGame pm_one{{one}, {minus_one}};
  TreeGame star2{{zero, star}, {zero, star}};
  TreeGame switch_raw{{minus_one}, {one}};     // value 0, raw shape
  TreeGame star_star{{star}, {star}};          // value 0, raw shape
  TreeGame doubled_left{{zero, one}, {}};      // dominated option
  TreeGame deep{{up}, {down}};
  std::vector<TreeGame> family{zero,    one,   minus_one, two,      star,
                               up,      down,  up_star,   half,     pm_one,
                               star2,   switch_raw, star_star, doubled_left,
                               deep};
  std::vector<GameId> ids;
  for (const TreeGame& t : family) ids.push_back(cgt_test::tree_intern(t, arena));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      CHECK(arena.leq(ids[i], ids[j]) == cgt_test::tree_leq(family[i], family[j]));
}

TEST_CASE("compare") {
  Arena arena;
  GameId star = read_game("*", arena);
  GameId up = read_game("^", arena);
  GameId pm1 = read_game("+-1", arena);
  CHECK(arena.compare(arena.zero(), star) == OrderRelation::Incomparable);
  CHECK(arena.compare(arena.integer(-1), arena.integer(1)) ==
        OrderRelation::Less);
  CHECK(arena.compare(up, pm1) == OrderRelation::Incomparable);
  CHECK(arena.compare(up, up) == OrderRelation::Equal);
}

TEST_CASE("negate") {
  Arena arena;
  CHECK(arena.negate(arena.zero()) == arena.zero());
  GameId minus_one = arena.negate(arena.integer(1));
  CHECK(minus_one == arena.integer(-1));
  CHECK(arena.left_options(minus_one).empty());
  CHECK(arena.right_options(minus_one) ==
        std::vector<GameId>{arena.zero()});
  GameId pm1 = read_game("+-1", arena);
  CHECK(arena.negate(pm1) == pm1);
  GameId up = read_game("^", arena);
  CHECK(arena.negate(arena.negate(up)) == up);
}

TEST_CASE("negate is an order anti-isomorphism on the day-2 set") {
  Arena arena;
  Printer printer(arena);
  GameSet g2 = enumerate_day(arena, printer, 2);
  for (GameId g : g2.elements)
    for (GameId h : g2.elements)
      CHECK(arena.leq(g, h) == arena.leq(arena.negate(h), arena.negate(g)));
}

TEST_CASE("canonicalize examples") {
  Arena arena;
  GameId zero_id =
      arena.canonicalize({{arena.integer(-1)}}, {{arena.integer(1)}});
  CHECK(zero_id == arena.zero());

  GameId star = read_game("*", arena);
  GameId up_star = arena.canonicalize({{arena.zero(), star}}, {{arena.zero()}});
  CHECK(up_star == read_game("^*", arena));
  // Already canonical: running it again returns the same options.
  CHECK(arena.canonicalize(arena.left_options(up_star),
                           arena.right_options(up_star)) == up_star);

  GameId one = arena.canonicalize({{arena.zero(), arena.integer(-1)}}, {});
  CHECK(one == arena.integer(1));

  GameId raw = arena.intern({{arena.integer(-1)}}, {{arena.integer(1)}});
  CHECK_THROWS_AS(arena.canonicalize({{raw}}, {}), UsageError);
}

TEST_CASE("canonicalize agrees with mutual-leq search over the enumerated universe") {
  Arena arena;
  Printer printer(arena);
  GameSet g1 = enumerate_day(arena, printer, 1);
  GameSet g2 = enumerate_day(arena, printer, 2);
  // All subsets of the day-1 set with at most 3 elements, on both sides.
  std::vector<std::vector<GameId>> subsets;
  int n = g1.size();
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) > 3) continue;
    std::vector<GameId> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i))
        subset.push_back(g1.elements[static_cast<std::size_t>(i)]);
    subsets.push_back(subset);
  }
  CHECK(subsets.size() == 15);
  for (const auto& left : subsets) {
    for (const auto& right : subsets) {
      GameId raw = arena.intern(left, right);
      std::vector<GameId> equivalent;
      for (GameId g : g2.elements)
        if (arena.leq(raw, g) && arena.leq(g, raw)) equivalent.push_back(g);
      REQUIRE(equivalent.size() == 1);
      CHECK(arena.canonicalize(left, right) == equivalent.front());
    }
  }
}

TEST_CASE("order axioms hold on every day-2 pair and triple") {
  Arena arena;
  Printer printer(arena);
  GameSet g2 = enumerate_day(arena, printer, 2);
  int n = g2.size();
  for (int i = 0; i < n; ++i) {
    CHECK(g2.relation(i, i) == OrderRelation::Equal);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      CHECK(g2.relation(i, j) != OrderRelation::Equal);  // antisymmetry
      bool ij = g2.leq_idx(i, j);
      bool ji = g2.leq_idx(j, i);
      CHECK_FALSE((ij && ji));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g2.leq_idx(i, j) && g2.leq_idx(j, k)) CHECK(g2.leq_idx(i, k));
}

TEST_CASE("every game is at most the integer of its birthday") {
  Arena arena;
  Printer printer(arena);
  GameSet g2 = enumerate_day(arena, printer, 2);
  for (GameId g : g2.elements)
    CHECK(arena.leq(g, arena.integer(arena.birthday(g))));
}

TEST_CASE("birthday") {
  Arena arena;
  CHECK(arena.birthday(arena.zero()) == 0);
  CHECK(arena.birthday(read_game("*", arena)) == 1);
  CHECK(arena.birthday(read_game("{2|1,{1|1}}", arena)) == 3);
}

TEST_CASE("build_extreme_forms") {
  Arena arena;
  Printer printer(arena);
  GameId star2 = read_game("*2", arena);

  SUBCASE("singleton antichain") {
    auto forms = arena.build_extreme_forms(2, {{star2}});
    CHECK(printer.name(forms[0]) == "{2|*2}");
    CHECK(printer.name(forms[1]) == "{*2|-2}");
    CHECK(printer.name(forms[2]) == "{1|*2}");
    CHECK(printer.name(forms[3]) == "{*2|-1}");
    for (GameId f : forms) {
      CHECK(arena.is_canonical(f));
      CHECK(arena.birthday(f) <= 3);
    }
  }

  SUBCASE("largest day-2 antichain") {
    std::vector<GameId> widest{arena.zero(), read_game("*", arena), star2,
                               read_game("+-1", arena)};
    auto forms = arena.build_extreme_forms(2, widest);
    std::set<std::uint32_t> distinct;
    for (GameId f : forms) distinct.insert(f.index);
    CHECK(distinct.size() == 4);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(
        arena.build_extreme_forms(2, {{arena.integer(1), arena.zero()}}),
        UsageError);  // 1 > 0
    CHECK_THROWS_AS(arena.build_extreme_forms(1, {{arena.zero()}}),
                    UsageError);
    CHECK_THROWS_AS(arena.build_extreme_forms(2, {}), UsageError);
    CHECK_THROWS_AS(arena.build_extreme_forms(2, {{read_game("{2|1}", arena),
                                                   read_game("3", arena)}}),
                    UsageError);  // birthday 3 member... 3 > day cap for n=2
  }
}
