#include "cgt/enumerate.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace cgt {

namespace {

// Dense memoized leq over a hereditarily closed element list (every option of
// every member is itself a member).
class LeqTable {
 public:
  LeqTable(const Arena& arena, const std::vector<GameId>& elements)
      : n_(static_cast<int>(elements.size())) {
    index_.assign(arena.size(), -1);
    for (int i = 0; i < n_; ++i) index_[elements[static_cast<std::size_t>(i)].index] = i;
    left_.resize(static_cast<std::size_t>(n_));
    right_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      GameId g = elements[static_cast<std::size_t>(i)];
      for (GameId opt : arena.left_options(g))
        left_[static_cast<std::size_t>(i)].push_back(resolve(opt));
      for (GameId opt : arena.right_options(g))
        right_[static_cast<std::size_t>(i)].push_back(resolve(opt));
    }
    cells_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_),
                  -1);
  }

  bool leq(int i, int j) {
    std::int8_t& cell =
        cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + j];
    if (cell >= 0) return cell != 0;
    bool result = true;
    if (i != j) {
      for (int l : left_[static_cast<std::size_t>(i)]) {
        if (leq(j, l)) {
          result = false;
          break;
        }
      }
      if (result) {
        for (int r : right_[static_cast<std::size_t>(j)]) {
          if (leq(r, i)) {
            result = false;
            break;
          }
        }
      }
    }
    cell = result ? 1 : 0;
    return result;
  }

 private:
  int resolve(GameId g) const {
    int idx = g.index < index_.size() ? index_[g.index] : -1;
    if (idx < 0)
      throw InvariantViolation("LeqTable: element list is not closed");
    return idx;
  }

  int n_;
  std::vector<int> index_;  // arena id -> table index
  std::vector<std::vector<int>> left_, right_;
  std::vector<std::int8_t> cells_;
};

std::vector<GameId> hereditary_closure(const Arena& arena,
                                       const std::vector<GameId>& elements) {
  std::vector<char> seen(arena.size(), 0);
  std::vector<GameId> out;
  std::vector<GameId> stack(elements.begin(), elements.end());
  while (!stack.empty()) {
    GameId g = stack.back();
    stack.pop_back();
    if (seen[g.index]) continue;
    seen[g.index] = 1;
    out.push_back(g);
    for (GameId opt : arena.left_options(g)) stack.push_back(opt);
    for (GameId opt : arena.right_options(g)) stack.push_back(opt);
  }
  return out;
}

}  // namespace

Poset GameSet::to_poset() const {
  Poset p;
  p.n = size();
  p.rel = rel;
  return p;
}

Poset GameSet::sub_poset(const std::vector<int>& indices) const {
  Poset p;
  p.n = static_cast<int>(indices.size());
  p.rel.resize(static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      p.rel[static_cast<std::size_t>(i) * static_cast<std::size_t>(p.n) + j] =
          relation(indices[static_cast<std::size_t>(i)],
                   indices[static_cast<std::size_t>(j)]);
  return p;
}

GameSet make_game_set(Arena& arena, Printer& printer, int day,
                      std::vector<GameId> elements) {
  std::sort(elements.begin(), elements.end(),
            [](GameId a, GameId b) { return a.index < b.index; });
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  std::sort(elements.begin(), elements.end(),
            [&](GameId a, GameId b) { return printer.less(a, b); });

  GameSet set;
  set.day = day;
  set.elements = std::move(elements);
  set.names.reserve(set.elements.size());
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    set.names.push_back(printer.name(set.elements[i]));
    set.index_of.emplace(set.elements[i].index, static_cast<int>(i));
  }

  std::vector<GameId> closure = hereditary_closure(arena, set.elements);
  LeqTable table(arena, closure);
  std::vector<int> pos(set.elements.size());
  {
    std::unordered_map<std::uint32_t, int> closure_index;
    for (std::size_t i = 0; i < closure.size(); ++i)
      closure_index.emplace(closure[i].index, static_cast<int>(i));
    for (std::size_t i = 0; i < set.elements.size(); ++i)
      pos[i] = closure_index.at(set.elements[i].index);
  }

  int n = set.size();
  set.rel.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool ij = table.leq(pos[static_cast<std::size_t>(i)],
                          pos[static_cast<std::size_t>(j)]);
      bool ji = table.leq(pos[static_cast<std::size_t>(j)],
                          pos[static_cast<std::size_t>(i)]);
      OrderRelation r = OrderRelation::Incomparable;
      if (ij && ji)
        r = OrderRelation::Equal;
      else if (ij)
        r = OrderRelation::Less;
      else if (ji)
        r = OrderRelation::Greater;
      set.rel[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j] =
          r;
    }
  }
  return set;
}

GameSet enumerate_day(Arena& arena, Printer& printer, int day,
                      const EnumerateOptions& options) {
  if (day < 0) throw UsageError("enumerate_day: negative day");
  if (day > options.day_cap)
    throw InfeasibleError(
        "day-" + std::to_string(day) +
        " enumeration refused: beyond the configured cap (day " +
        std::to_string(options.day_cap) +
        "); the day-4 set alone holds at least 2^94 canonical forms");
  if (day == 0) {
    std::vector<GameId> zero{arena.zero()};
    return make_game_set(arena, printer, 0, std::move(zero));
  }

  GameSet prev = enumerate_day(arena, printer, day - 1, options);
  std::vector<std::vector<GameId>> antichains = all_antichains(prev);
  std::size_t a = antichains.size();
  std::size_t total = a * a;

  // Read-only leq over the previous day; every id a candidate touches
  // (options and their hereditary options) lies in that set.
  std::vector<int> prev_index(arena.size(), -1);
  for (int i = 0; i < prev.size(); ++i)
    prev_index[prev.elements[static_cast<std::size_t>(i)].index] = i;
  auto prev_leq = [&](GameId x, GameId y) {
    int ix = prev_index[x.index];
    int iy = prev_index[y.index];
    if (ix < 0 || iy < 0)
      throw InvariantViolation("enumerate_day: option outside previous day");
    return prev.leq_idx(ix, iy);
  };

  int threads = std::max(1, options.threads);
  constexpr std::size_t kBatch = 1 << 15;
  std::vector<GameId> found;
  std::vector<char> seen(arena.size() + 2 * total + 16, 0);
  using SimplifiedForm = std::pair<std::vector<GameId>, std::vector<GameId>>;
  std::vector<SimplifiedForm> results;

  for (std::size_t batch_start = 0; batch_start < total;
       batch_start += kBatch) {
    std::size_t batch_len = std::min(kBatch, total - batch_start);
    results.assign(batch_len, SimplifiedForm{});
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        std::size_t cand = batch_start + k;
        const std::vector<GameId>& left = antichains[cand / a];
        const std::vector<GameId>& right = antichains[cand % a];
        results[k] = detail::simplify_form(arena, left, right, prev_leq);
      }
    };
    if (threads == 1 || batch_len < 2048) {
      work(0, batch_len);
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (batch_len + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        std::size_t lo = std::min(batch_len, static_cast<std::size_t>(t) * chunk);
        std::size_t hi = std::min(batch_len, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    // Merge in candidate order so ids are independent of the thread count.
    for (std::size_t k = 0; k < batch_len; ++k) {
      GameId id = arena.intern(results[k].first, results[k].second);
      arena.mark_canonical(id);
      if (id.index >= seen.size()) seen.resize(id.index + 1, 0);
      if (!seen[id.index]) {
        seen[id.index] = 1;
        found.push_back(id);
      }
    }
  }
  return make_game_set(arena, printer, day, std::move(found));
}

void write_game_set(const GameSet& set, std::ostream& out) {
  out << "# day=" << set.day << " count=" << set.size() << " format=1\n";
  for (const std::string& name : set.names) out << name << "\n";
}

std::string game_set_to_string(const GameSet& set) {
  std::ostringstream os;
  write_game_set(set, os);
  return os.str();
}

GameSet read_game_set(Arena& arena, Printer& printer, std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw IoError("game-set file: missing header");
  int day = 0, count = 0, format = 0;
  if (std::sscanf(header.c_str(), "# day=%d count=%d format=%d", &day, &count,
                  &format) != 3 ||
      format != 1)
    throw IoError("game-set file: bad header '" + header + "'");
  std::vector<GameId> elements;
  elements.reserve(static_cast<std::size_t>(count));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    elements.push_back(read_game(line, arena));
  }
  if (static_cast<int>(elements.size()) != count)
    throw IoError("game-set file: header says " + std::to_string(count) +
                  " games, found " + std::to_string(elements.size()));
  std::vector<GameId> dedup = elements;
  std::sort(dedup.begin(), dedup.end(),
            [](GameId a, GameId b) { return a.index < b.index; });
  if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
    throw InvariantViolation("game-set file: duplicate canonical form");
  return make_game_set(arena, printer, day, std::move(elements));
}

GameSet load_game_set_file(Arena& arena, Printer& printer,
                           const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open game-set file: " + path);
  return read_game_set(arena, printer, in);
}

AntichainEnumerator::AntichainEnumerator(const Poset& poset) : n_(poset.n) {
  if (n_ > kMaxElements)
    throw InfeasibleError("antichain enumeration refused for |P|=" +
                          std::to_string(n_) + " (guard " +
                          std::to_string(kMaxElements) + ")");
  incomparable_.assign(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && poset.incomparable(i, j))
        incomparable_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
}

bool AntichainEnumerator::next(std::vector<int>& out) {
  if (!emitted_empty_) {
    emitted_empty_ = true;
    out.clear();
    return true;
  }
  for (;;) {
    int i = cursor_;
    while (i < n_ &&
           (chosen_mask_ & ~incomparable_[static_cast<std::size_t>(i)]) != 0)
      ++i;
    if (i < n_) {
      chosen_.push_back(i);
      chosen_mask_ |= std::uint64_t{1} << i;
      cursor_ = i + 1;
      out = chosen_;
      return true;
    }
    if (chosen_.empty()) return false;
    int last = chosen_.back();
    chosen_.pop_back();
    chosen_mask_ &= ~(std::uint64_t{1} << last);
    cursor_ = last + 1;
  }
}

BigCount count_antichains(const Poset& poset) {
  AntichainEnumerator iter(poset);
  BigCount count = 0;
  std::vector<int> antichain;
  while (iter.next(antichain)) ++count;
  return count;
}

std::vector<std::vector<GameId>> all_antichains(const GameSet& set) {
  AntichainEnumerator iter(set.to_poset());
  std::vector<std::vector<GameId>> out;
  std::vector<int> antichain;
  while (iter.next(antichain)) {
    std::vector<GameId> ids;
    ids.reserve(antichain.size());
    for (int i : antichain)
      ids.push_back(set.elements[static_cast<std::size_t>(i)]);
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace cgt
