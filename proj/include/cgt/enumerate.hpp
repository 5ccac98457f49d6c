#ifndef CGT_ENUMERATE_HPP
#define CGT_ENUMERATE_HPP

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgt/big_count.hpp"
#include "cgt/game.hpp"
#include "cgt/notation.hpp"
#include "cgt/poset.hpp"

namespace cgt {

// A fully built day set: elements in the canonical total order (birthday,
// then printed name) with the complete pairwise order matrix.
struct GameSet {
  int day = 0;
  std::vector<GameId> elements;
  std::vector<std::string> names;  // parallel to elements
  std::vector<OrderRelation> rel;  // n*n, row-major
  std::unordered_map<std::uint32_t, int> index_of;

  int size() const { return static_cast<int>(elements.size()); }
  OrderRelation relation(int i, int j) const {
    return rel[static_cast<std::size_t>(i) * elements.size() +
               static_cast<std::size_t>(j)];
  }
  bool leq_idx(int i, int j) const {
    OrderRelation r = relation(i, j);
    return r == OrderRelation::Less || r == OrderRelation::Equal;
  }
  int find(GameId g) const {
    auto it = index_of.find(g.index);
    return it == index_of.end() ? -1 : it->second;
  }
  Poset to_poset() const;
  Poset sub_poset(const std::vector<int>& indices) const;
};

struct EnumerateOptions {
  int day_cap = 3;  // raising it does not make day 4 tractable
  int threads = 1;
};

// Builds G_n inductively: canonicalize every ordered pair of antichains of
// G_{n-1} and keep the distinct results. Output is independent of the thread
// count.
GameSet enumerate_day(Arena& arena, Printer& printer, int day,
                      const EnumerateOptions& options = {});

// Sorts the elements canonically and computes the full order matrix (the
// element list is extended to its hereditary closure internally, so any set
// of canonical games works).
GameSet make_game_set(Arena& arena, Printer& printer, int day,
                      std::vector<GameId> elements);

// Game-set file: "# day=N count=M format=1" then one printed form per line.
void write_game_set(const GameSet& set, std::ostream& out);
std::string game_set_to_string(const GameSet& set);
GameSet read_game_set(Arena& arena, Printer& printer, std::istream& in);
GameSet load_game_set_file(Arena& arena, Printer& printer,
                           const std::string& path);

// Emits every antichain of a poset exactly once: the empty set first, then
// depth-first in lexicographic index order.
class AntichainEnumerator {
 public:
  explicit AntichainEnumerator(const Poset& poset);

  // Fills `out` with the next antichain (as poset indices); false when done.
  bool next(std::vector<int>& out);

  static constexpr int kMaxElements = 26;

 private:
  int n_;
  std::vector<std::uint64_t> incomparable_;  // mask per element
  std::vector<int> chosen_;
  std::uint64_t chosen_mask_ = 0;
  int cursor_ = 0;
  bool emitted_empty_ = false;
};

// Exact antichain count (the empty antichain included).
BigCount count_antichains(const Poset& poset);

// All antichains of a game set, as id lists in canonical order.
std::vector<std::vector<GameId>> all_antichains(const GameSet& set);

}  // namespace cgt

#endif  // CGT_ENUMERATE_HPP
