#include "cgt/game.hpp"

#include <algorithm>
#include <cstdlib>

namespace cgt {

const char* to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::Less:
      return "less";
    case OrderRelation::Greater:
      return "greater";
    case OrderRelation::Equal:
      return "equal";
    case OrderRelation::Incomparable:
      return "incomparable";
  }
  return "?";
}

std::size_t Arena::KeyHash::operator()(const FormKey& k) const noexcept {
  // FNV-1a over the id words.
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t w : k) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Arena::Arena() {
  forms_.push_back(Form{{}, {}, 0, true});  // 0 = {|}
  intern_map_.emplace(make_key(forms_[0].left, forms_[0].right), 0u);
  negate_memo_.push_back(0);  // -0 = 0
  integer_cache_.emplace(0, GameId{0});
}

std::vector<GameId> Arena::sorted_unique(std::span<const GameId> ids) {
  std::vector<GameId> v(ids.begin(), ids.end());
  std::sort(v.begin(), v.end(),
            [](GameId a, GameId b) { return a.index < b.index; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Arena::FormKey Arena::make_key(const std::vector<GameId>& left,
                               const std::vector<GameId>& right) {
  FormKey key;
  key.reserve(left.size() + right.size() + 1);
  for (GameId g : left) key.push_back(g.index);
  key.push_back(kNoId);  // side separator; kNoId is never a valid id
  for (GameId g : right) key.push_back(g.index);
  return key;
}

void Arena::check_known(GameId g) const {
  if (g.index >= forms_.size())
    throw UsageError("unknown GameId " + std::to_string(g.index));
}

const Arena::Form& Arena::form(GameId g) const {
  check_known(g);
  return forms_[g.index];
}

GameId Arena::intern(std::span<const GameId> left,
                     std::span<const GameId> right) {
  std::vector<GameId> l = sorted_unique(left);
  std::vector<GameId> r = sorted_unique(right);
  int bday = 0;
  for (GameId g : l) {
    check_known(g);
    bday = std::max(bday, birthday(g) + 1);
  }
  for (GameId g : r) {
    check_known(g);
    bday = std::max(bday, birthday(g) + 1);
  }
  FormKey key = make_key(l, r);
  if (auto it = intern_map_.find(key); it != intern_map_.end())
    return GameId{it->second};
  auto idx = static_cast<std::uint32_t>(forms_.size());
  forms_.push_back(Form{std::move(l), std::move(r), bday, false});
  negate_memo_.push_back(kNoId);
  intern_map_.emplace(std::move(key), idx);
  return GameId{idx};
}

GameId Arena::intern(std::initializer_list<GameId> left,
                     std::initializer_list<GameId> right) {
  return intern(std::span<const GameId>(left.begin(), left.size()),
                std::span<const GameId>(right.begin(), right.size()));
}

const std::vector<GameId>& Arena::left_options(GameId g) const {
  return form(g).left;
}

const std::vector<GameId>& Arena::right_options(GameId g) const {
  return form(g).right;
}

int Arena::birthday(GameId g) const { return form(g).birthday; }

bool Arena::is_canonical(GameId g) const { return form(g).canonical; }

void Arena::mark_canonical(GameId g) {
  check_known(g);
  forms_[g.index].canonical = true;
}

bool Arena::leq(GameId g, GameId h) const {
  check_known(g);
  check_known(h);
  if (g == h) return true;  // G <= G for every form
  std::uint64_t key = (std::uint64_t{g.index} << 32) | h.index;
  if (auto it = leq_cache_.find(key); it != leq_cache_.end())
    return it->second;
  // G <= H unless some left option of G is >= H or some right option of H
  // is <= G.
  bool result = true;
  for (GameId gl : forms_[g.index].left) {
    if (leq(h, gl)) {
      result = false;
      break;
    }
  }
  if (result) {
    for (GameId hr : forms_[h.index].right) {
      if (leq(hr, g)) {
        result = false;
        break;
      }
    }
  }
  leq_cache_.emplace(key, result);
  return result;
}

OrderRelation Arena::compare(GameId g, GameId h) const {
  bool gh = leq(g, h);
  bool hg = leq(h, g);
  if (gh && hg) return OrderRelation::Equal;
  if (gh) return OrderRelation::Less;
  if (hg) return OrderRelation::Greater;
  return OrderRelation::Incomparable;
}

GameId Arena::negate(GameId g) {
  check_known(g);
  if (negate_memo_[g.index] != kNoId) return GameId{negate_memo_[g.index]};
  // Copy option lists first: recursion may grow forms_.
  std::vector<GameId> l = forms_[g.index].left;
  std::vector<GameId> r = forms_[g.index].right;
  bool canonical = forms_[g.index].canonical;
  std::vector<GameId> nl, nr;
  nl.reserve(r.size());
  nr.reserve(l.size());
  for (GameId x : r) nl.push_back(negate(x));
  for (GameId x : l) nr.push_back(negate(x));
  GameId neg = intern(nl, nr);
  if (canonical) forms_[neg.index].canonical = true;
  negate_memo_[g.index] = neg.index;
  negate_memo_[neg.index] = g.index;
  return neg;
}

GameId Arena::canonicalize(std::span<const GameId> left,
                           std::span<const GameId> right) {
  for (GameId g : left) {
    check_known(g);
    if (!is_canonical(g))
      throw UsageError("canonicalize: option ids must be canonical");
  }
  for (GameId g : right) {
    check_known(g);
    if (!is_canonical(g))
      throw UsageError("canonicalize: option ids must be canonical");
  }
  auto [l, r] = detail::simplify_form(
      *this, left, right, [this](GameId a, GameId b) { return leq(a, b); });
  GameId id = intern(l, r);
  forms_[id.index].canonical = true;
  return id;
}

GameId Arena::canonicalize(std::initializer_list<GameId> left,
                           std::initializer_list<GameId> right) {
  return canonicalize(std::span<const GameId>(left.begin(), left.size()),
                      std::span<const GameId>(right.begin(), right.size()));
}

GameId Arena::integer(int n) {
  if (auto it = integer_cache_.find(n); it != integer_cache_.end())
    return it->second;
  // n = {n-1 |} and -n = {| -(n-1)}; built iteratively from 0 so deep
  // integers cost no recursion. Negation pairs are linked as we go.
  int hi = 0;
  while (integer_cache_.count(hi + 1)) ++hi;
  for (int k = hi + 1; k <= std::abs(n); ++k) {
    GameId below = integer_cache_.at(k - 1);
    GameId pos = intern({{below}}, {});
    forms_[pos.index].canonical = true;
    GameId above = integer_cache_.at(-(k - 1));
    GameId neg = intern({}, {{above}});
    forms_[neg.index].canonical = true;
    negate_memo_[pos.index] = neg.index;
    negate_memo_[neg.index] = pos.index;
    integer_cache_.emplace(k, pos);
    integer_cache_.emplace(-k, neg);
  }
  return integer_cache_.at(n);
}

std::array<GameId, 4> Arena::build_extreme_forms(
    int n, std::span<const GameId> antichain) {
  if (n <= 1) throw UsageError("build_extreme_forms: n must exceed 1");
  std::vector<GameId> s = sorted_unique(antichain);
  if (s.empty()) throw UsageError("build_extreme_forms: antichain is empty");
  for (GameId g : s) {
    if (birthday(g) > n)
      throw UsageError("build_extreme_forms: member born after day " +
                       std::to_string(n));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (compare(s[i], s[j]) != OrderRelation::Incomparable)
        throw UsageError("build_extreme_forms: set is not an antichain");
    }
  }
  GameId above = integer(n);
  GameId above1 = integer(n - 1);
  GameId below = integer(-n);
  GameId below1 = integer(-(n - 1));

  auto make = [&](std::span<const GameId> l,
                  std::span<const GameId> r) -> GameId {
    GameId id = canonicalize(l, r);
    const Form& f = forms_[id.index];
    if (f.left != sorted_unique(l) || f.right != sorted_unique(r))
      throw InvariantViolation(
          "build_extreme_forms: constructed form failed the canonicity audit");
    return id;
  };

  std::array<GameId, 4> out;
  std::vector<GameId> single;
  single = {above};
  out[0] = make(single, s);  // {n | S}
  single = {below};
  out[1] = make(s, single);  // {S | -n}
  single = {above1};
  out[2] = make(single, s);  // {n-1 | S}
  single = {below1};
  out[3] = make(s, single);  // {S | -(n-1)}
  return out;
}

}  // namespace cgt
