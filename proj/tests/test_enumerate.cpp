#include <set>
#include <sstream>
#include <string>

#include "cgt/bounds.hpp"
#include "cgt/enumerate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cgt;

TEST_CASE("day sets grow 1, 4, 22") {
  Arena arena;
  Printer printer(arena);
  CHECK(enumerate_day(arena, printer, 0).size() == 1);
  CHECK(enumerate_day(arena, printer, 1).size() == 4);
  CHECK(enumerate_day(arena, printer, 2).size() == 22);
}

TEST_CASE("day sets are cumulative with identical pairwise order") {
  Arena arena;
  Printer printer(arena);
  GameSet g1 = enumerate_day(arena, printer, 1);
  GameSet g2 = enumerate_day(arena, printer, 2);
  for (GameId g : g1.elements) CHECK(g2.find(g) >= 0);
  for (GameId g : g1.elements)
    for (GameId h : g1.elements)
      CHECK(g1.relation(g1.find(g), g1.find(h)) ==
            g2.relation(g2.find(g), g2.find(h)));
}

TEST_CASE("every option of a day-2 game is a day-1 game, and option sets are antichains") {
  Arena arena;
  Printer printer(arena);
  GameSet g1 = enumerate_day(arena, printer, 1);
  GameSet g2 = enumerate_day(arena, printer, 2);
  for (GameId g : g2.elements) {
    for (const auto* side : {&arena.left_options(g), &arena.right_options(g)}) {
      for (GameId opt : *side) CHECK(g1.find(opt) >= 0);
      for (std::size_t i = 0; i < side->size(); ++i)
        for (std::size_t j = i + 1; j < side->size(); ++j)
          CHECK(arena.compare((*side)[i], (*side)[j]) ==
                OrderRelation::Incomparable);
    }
  }
}

TEST_CASE("enumeration is deterministic and thread-count independent") {
  std::string baseline;
  {
    Arena arena;
    Printer printer(arena);
    baseline = game_set_to_string(enumerate_day(arena, printer, 2));
  }
  {
    Arena arena;
    Printer printer(arena);
    CHECK(game_set_to_string(enumerate_day(arena, printer, 2)) == baseline);
  }
  {
    Arena arena;
    Printer printer(arena);
    EnumerateOptions options;
    options.threads = 4;
    CHECK(game_set_to_string(enumerate_day(arena, printer, 2, options)) ==
          baseline);
  }
}

TEST_CASE("day-1 game-set file is frozen byte for byte") {
  Arena arena;
  Printer printer(arena);
  GameSet g1 = enumerate_day(arena, printer, 1);
  CHECK(game_set_to_string(g1) == "# day=1 count=4 format=1\n0\n*\n-1\n1\n");
}

TEST_CASE("game-set files round-trip") {
  Arena arena;
  Printer printer(arena);
  GameSet g2 = enumerate_day(arena, printer, 2);
  std::string text = game_set_to_string(g2);

  Arena fresh;
  Printer fresh_printer(fresh);
  std::istringstream in(text);
  GameSet loaded = read_game_set(fresh, fresh_printer, in);
  CHECK(loaded.day == 2);
  CHECK(loaded.size() == 22);
  CHECK(game_set_to_string(loaded) == text);
  CHECK(loaded.rel == g2.rel);
}

TEST_CASE("game-set file errors") {
  Arena arena;
  Printer printer(arena);
  {
    std::istringstream in("nonsense\n");
    CHECK_THROWS_AS(read_game_set(arena, printer, in), IoError);
  }
  {
    std::istringstream in("# day=1 count=3 format=1\n0\n*\n");
    CHECK_THROWS_AS(read_game_set(arena, printer, in), IoError);
  }
  {
    std::istringstream in("# day=1 count=2 format=1\n0\n{|}\n");
    CHECK_THROWS_AS(read_game_set(arena, printer, in), InvariantViolation);
  }
}

TEST_CASE("day-2 roster") {
  Arena arena;
  Printer printer(arena);
  GameSet g2 = enumerate_day(arena, printer, 2);
  std::set<std::string> names(g2.names.begin(), g2.names.end());
  std::set<std::string> expected{
      "0",      "*",        "-1",      "1",       "*2",      "+-1",
      "-1/2",   "-2",       "1/2",     "2",       "^",       "^*",
      "v",      "v*",       "{*|-1}",  "{-1|-1}", "{0,*|-1}", "{0|-1}",
      "{1|*}",  "{1|0,*}",  "{1|0}",   "{1|1}"};
  CHECK(names == expected);
}

TEST_CASE("notable members land in the expected day-3 layers") {
  Arena arena;
  Printer printer(arena);
  GameSet g3 = enumerate_day(arena, printer, 3);
  Stratification strat = stratify(g3.to_poset());
  REQUIRE(strat.layer_count() == 45);

  auto layer_of = [&](const std::string& text) {
    int idx = g3.find(read_game(text, arena));
    REQUIRE(idx >= 0);
    for (int i = 0; i < strat.layer_count(); ++i)
      for (int s : strat.layers[static_cast<std::size_t>(i)])
        if (s == idx) return i + 1;
    return -1;
  };
  CHECK(layer_of("3") == 1);
  CHECK(layer_of("{2|1,{1|1}}") == 4);
  CHECK(layer_of("tiny(1)") == 22);
  CHECK(layer_of("0") == 23);

  // Extreme forms built over {*2} land inside the enumerated set.
  GameId star2 = read_game("*2", arena);
  for (GameId f : arena.build_extreme_forms(2, {{star2}}))
    CHECK(g3.find(f) >= 0);
}

TEST_CASE("day cap") {
  Arena arena;
  Printer printer(arena);
  CHECK_THROWS_AS(enumerate_day(arena, printer, 4), InfeasibleError);
  CHECK_THROWS_AS(enumerate_day(arena, printer, -1), UsageError);
}

TEST_CASE("antichain enumerator emits the empty set first, in DFS order") {
  Poset chain = Poset::total_order(2);
  AntichainEnumerator iter(chain);
  std::vector<std::vector<int>> all;
  std::vector<int> antichain;
  while (iter.next(antichain)) all.push_back(antichain);
  CHECK(all == std::vector<std::vector<int>>{{}, {0}, {1}});

  Poset free3 = Poset::antichain(3);
  AntichainEnumerator iter3(free3);
  all.clear();
  while (iter3.next(antichain)) all.push_back(antichain);
  CHECK(all == std::vector<std::vector<int>>{
                   {}, {0}, {0, 1}, {0, 1, 2}, {0, 2}, {1}, {1, 2}, {2}});
}

TEST_CASE("antichain counts") {
  CHECK(count_antichains(Poset::total_order(3)) == 4);
  CHECK(count_antichains(Poset::antichain(10)) == 1024);
  CHECK_THROWS_AS(count_antichains(Poset::antichain(30)), InfeasibleError);
}

TEST_CASE("antichain DFS count matches subset brute force on small posets") {
  Arena arena;
  Printer printer(arena);
  GameSet g1 = enumerate_day(arena, printer, 1);
  Poset p1 = g1.to_poset();
  CHECK(count_antichains(p1) == cgt_test::brute_force_antichains(p1));

  Poset diamond = cgt_test::poset_from_greater_pairs(
      4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(count_antichains(diamond) == cgt_test::brute_force_antichains(diamond));
}

TEST_CASE("antichains touching the layer beside the widest one") {
  // Restricted to layers 4 and 5 of the day-2 set: counts with exactly one
  // and exactly two layer-4 elements, by iteration and by closed form.
  Arena arena;
  Printer printer(arena);
  GameSet g2 = enumerate_day(arena, printer, 2);
  Stratification strat = stratify(g2.to_poset());
  const std::vector<int>& u4 = strat.layers[3];
  const std::vector<int>& u5 = strat.layers[4];
  REQUIRE(u4.size() == 3);
  REQUIRE(u5.size() == 4);

  std::vector<int> joint = u4;
  joint.insert(joint.end(), u5.begin(), u5.end());
  Poset sub = g2.sub_poset(joint);

  long long one_from_u4 = 0, two_from_u4 = 0;
  AntichainEnumerator iter(sub);
  std::vector<int> antichain;
  while (iter.next(antichain)) {
    int u4_members = 0;
    for (int i : antichain)
      if (i < 3) ++u4_members;
    if (u4_members == 1) ++one_from_u4;
    if (u4_members == 2) ++two_from_u4;
  }

  long long singles_closed = 0;
  for (std::size_t i = 0; i < u4.size(); ++i) {
    int degree = 0;
    for (std::size_t j = 0; j < u5.size(); ++j)
      if (!sub.incomparable(static_cast<int>(i), static_cast<int>(3 + j)))
        ++degree;
    singles_closed += 1LL << (4 - degree);
  }
  CHECK(one_from_u4 == singles_closed);
  CHECK(one_from_u4 == 12);
  CHECK(two_from_u4 == 6);
}
