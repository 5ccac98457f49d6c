#ifndef CGT_GAME_HPP
#define CGT_GAME_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cgt {

// Caller violated a precondition (unknown id, malformed argument, refused day).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A structural property the analysis relies on failed to hold.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Operation refused because it cannot complete at feasible cost.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OrderRelation : std::uint8_t { Less, Greater, Equal, Incomparable };

const char* to_string(OrderRelation r);

// Handle into an Arena. Equal ids denote the identical stored form.
struct GameId {
  std::uint32_t index = 0;
  friend bool operator==(GameId, GameId) = default;
};

}  // namespace cgt

template <>
struct std::hash<cgt::GameId> {
  std::size_t operator()(cgt::GameId g) const noexcept { return g.index; }
};

namespace cgt {

// Append-only store of game forms with hash-consing. A form is a pair of
// sorted option-id sets; interning the same pair twice yields the same id.
// Order queries are memoized and never invalidated (the order is static).
//
// Only ids produced by canonicalize/integer (or flagged by enumeration) are
// canonical games; intern() stores raw forms without simplifying them.
class Arena {
 public:
  Arena();

  GameId zero() const { return GameId{0}; }
  std::size_t size() const { return forms_.size(); }

  // Stores the exact (left,right) pair, without canonicalizing.
  GameId intern(std::span<const GameId> left, std::span<const GameId> right);
  GameId intern(std::initializer_list<GameId> left,
                std::initializer_list<GameId> right);

  const std::vector<GameId>& left_options(GameId g) const;
  const std::vector<GameId>& right_options(GameId g) const;

  // Formal tree height: 0 for {|}, else 1 + max option birthday.
  int birthday(GameId g) const;

  bool is_canonical(GameId g) const;

  // G <= H under the normal-play order. Defined for any interned forms;
  // memoized, and entries never change.
  bool leq(GameId g, GameId h) const;

  // Less / Greater / Equal / Incomparable from two leq calls. On canonical
  // forms Equal coincides with id identity.
  OrderRelation compare(GameId g, GameId h) const;

  // Swap sides and negate options recursively. Involution; preserves
  // canonicity.
  GameId negate(GameId g);

  // Unique canonical form of {left | right}. All option ids must themselves
  // be canonical. Idempotent on canonical forms.
  GameId canonicalize(std::span<const GameId> left,
                      std::span<const GameId> right);
  GameId canonicalize(std::initializer_list<GameId> left,
                      std::initializer_list<GameId> right);

  // Canonical form of the integer n.
  GameId integer(int n);

  // For an antichain S of games born by day n (n > 1), builds
  // {n|S}, {S|-n}, {n-1|S}, {S|-(n-1)} and audits that each one is already
  // canonical (canonicalize returns it unchanged).
  std::array<GameId, 4> build_extreme_forms(int n,
                                            std::span<const GameId> antichain);

  // Used by enumeration after verifying a form came out of canonicalize.
  void mark_canonical(GameId g);

 private:
  friend class FormSimplifierBase;

  struct Form {
    std::vector<GameId> left;
    std::vector<GameId> right;
    int birthday = 0;
    bool canonical = false;
  };

  using FormKey = std::vector<std::uint32_t>;
  struct KeyHash {
    std::size_t operator()(const FormKey& k) const noexcept;
  };

  const Form& form(GameId g) const;
  void check_known(GameId g) const;
  static std::vector<GameId> sorted_unique(std::span<const GameId> ids);
  static FormKey make_key(const std::vector<GameId>& left,
                          const std::vector<GameId>& right);

  std::vector<Form> forms_;
  std::unordered_map<FormKey, std::uint32_t, KeyHash> intern_map_;
  mutable std::unordered_map<std::uint64_t, bool> leq_cache_;
  std::vector<std::uint32_t> negate_memo_;  // id -> negated id, or kNoId
  std::unordered_map<int, GameId> integer_cache_;

  static constexpr std::uint32_t kNoId = 0xffffffffu;
};

namespace detail {

// Reduces a form {L|R} (canonical options) to its canonical form without
// interning intermediates. Dominated options are removed before each
// reversibility pass; reversible options are bypassed left side first, one at
// a time, until a fixpoint. Any processing order yields the same canonical
// form; this one is fixed so runs are reproducible.
//
// LeqFn decides g <= h for canonical ids; comparisons against the form being
// simplified use a local memo, so the shared arena is only ever read.
template <class LeqFn>
class FormSimplifier {
 public:
  FormSimplifier(const Arena& arena, LeqFn leq)
      : arena_(arena), leq_(std::move(leq)) {}

  std::pair<std::vector<GameId>, std::vector<GameId>> run(
      std::span<const GameId> left, std::span<const GameId> right) {
    left_.assign(left.begin(), left.end());
    right_.assign(right.begin(), right.end());
    sort_unique(left_);
    sort_unique(right_);
    for (;;) {
      remove_dominated(left_, /*keep_maximal=*/true);
      remove_dominated(right_, /*keep_maximal=*/false);
      memo_.clear();
      if (bypass_reversible(left_, /*left_side=*/true)) continue;
      if (bypass_reversible(right_, /*left_side=*/false)) continue;
      break;
    }
    return {std::move(left_), std::move(right_)};
  }

 private:
  static void sort_unique(std::vector<GameId>& v) {
    std::sort(v.begin(), v.end(),
              [](GameId a, GameId b) { return a.index < b.index; });
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  void remove_dominated(std::vector<GameId>& opts, bool keep_maximal) {
    if (opts.size() < 2) return;
    std::vector<GameId> kept;
    kept.reserve(opts.size());
    for (GameId x : opts) {
      bool dominated = false;
      for (GameId y : opts) {
        if (x == y) continue;
        if (keep_maximal ? leq_(x, y) : leq_(y, x)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(x);
    }
    opts.swap(kept);
  }

  bool bypass_reversible(std::vector<GameId>& opts, bool left_side) {
    for (std::size_t i = 0; i < opts.size(); ++i) {
      GameId opt = opts[i];
      const auto& replies =
          left_side ? arena_.right_options(opt) : arena_.left_options(opt);
      for (GameId reply : replies) {
        bool reverses = left_side ? leq_of_game(reply) : game_leq_of(reply);
        if (!reverses) continue;
        std::vector<GameId> repl =
            left_side ? arena_.left_options(reply) : arena_.right_options(reply);
        opts.erase(opts.begin() + static_cast<std::ptrdiff_t>(i));
        opts.insert(opts.end(), repl.begin(), repl.end());
        sort_unique(opts);
        return true;
      }
    }
    return false;
  }

  // Current form <= x.
  bool game_leq_of(GameId x) {
    std::uint64_t key = (std::uint64_t{x.index} << 1) | 0;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second != 0;
    bool result = true;
    for (GameId gl : left_) {
      if (leq_(x, gl)) {
        result = false;
        break;
      }
    }
    if (result) {
      for (GameId xr : arena_.right_options(x)) {
        if (leq_of_game(xr)) {
          result = false;
          break;
        }
      }
    }
    memo_.emplace(key, result ? 1 : 0);
    return result;
  }

  // x <= current form.
  bool leq_of_game(GameId x) {
    std::uint64_t key = (std::uint64_t{x.index} << 1) | 1;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second != 0;
    bool result = true;
    for (GameId xl : arena_.left_options(x)) {
      if (game_leq_of(xl)) {
        result = false;
        break;
      }
    }
    if (result) {
      for (GameId gr : right_) {
        if (leq_(gr, x)) {
          result = false;
          break;
        }
      }
    }
    memo_.emplace(key, result ? 1 : 0);
    return result;
  }

  const Arena& arena_;
  LeqFn leq_;
  std::vector<GameId> left_;
  std::vector<GameId> right_;
  std::unordered_map<std::uint64_t, std::uint8_t> memo_;
};

template <class LeqFn>
std::pair<std::vector<GameId>, std::vector<GameId>> simplify_form(
    const Arena& arena, std::span<const GameId> left,
    std::span<const GameId> right, LeqFn leq) {
  FormSimplifier<LeqFn> s(arena, std::move(leq));
  return s.run(left, right);
}

}  // namespace detail
}  // namespace cgt

#endif  // CGT_GAME_HPP
