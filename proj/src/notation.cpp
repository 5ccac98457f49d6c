#include "cgt/notation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace cgt {
namespace {

constexpr int kMaxNimberOrder = 64;      // elaboration cost grows cubically
constexpr long long kMaxInteger = 4096;  // leq recursion depth scales with it
constexpr int kMaxNesting = 500;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GameExpr parse_all() {
    GameExpr e = parse_game();
    skip_ws();
    if (pos_ != text_.size()) {
      if (peek() == '|')
        throw ParseError("'|' outside braces", pos_);
      throw ParseError("trailing input after game", pos_);
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void expect(char c) {
    if (at_end() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool is_digit() const {
    return !at_end() && std::isdigit(static_cast<unsigned char>(peek()));
  }

  long long parse_digits() {
    std::size_t start = pos_;
    while (is_digit()) ++pos_;
    if (pos_ == start) throw ParseError("expected digits", pos_);
    if (pos_ - start > 12) throw ParseError("number too large", start);
    long long v = 0;
    std::from_chars(text_.data() + start, text_.data() + pos_, v);
    return v;
  }

  GameExpr parse_game() {
    if (++depth_ > kMaxNesting) throw ParseError("nesting too deep", pos_);
    GameExpr result = parse_game_inner();
    --depth_;
    return result;
  }

  GameExpr parse_game_inner() {
    skip_ws();
    if (at_end()) throw ParseError("expected game", pos_);
    char c = peek();
    if (c == '{') {
      ++pos_;
      GameExpr::Braces braces;
      braces.left = parse_list();
      skip_ws();
      expect('|');
      braces.right = parse_list();
      skip_ws();
      expect('}');
      return GameExpr{std::move(braces)};
    }
    if (c == '+') {
      ++pos_;
      expect('-');
      skip_ws();
      GameExpr::PlusMinus pm;
      if (!at_end() && peek() == '(') {
        ++pos_;
        pm.inner.push_back(parse_game());
        skip_ws();
        expect(')');
      } else {
        pm.inner.push_back(parse_atom());
      }
      return GameExpr{std::move(pm)};
    }
    if (c == 't') {
      if (text_.substr(pos_, 4) != "tiny")
        throw ParseError("expected game", pos_);
      pos_ += 4;
      skip_ws();
      expect('(');
      GameExpr::Tiny tiny;
      tiny.inner.push_back(parse_game());
      skip_ws();
      expect(')');
      return GameExpr{std::move(tiny)};
    }
    return parse_atom();
  }

  // atom := int | int '/' pow2 | '*' [uint] | '^' ['*'] | 'v' ['*']
  GameExpr parse_atom() {
    skip_ws();
    if (at_end()) throw ParseError("expected game", pos_);
    char c = peek();
    if (c == '*') {
      ++pos_;
      long long order = 1;
      if (is_digit()) {
        std::size_t at = pos_;
        order = parse_digits();
        if (order > kMaxNimberOrder) throw ParseError("nimber too large", at);
      }
      return GameExpr{GameExpr::Nimber{static_cast<int>(order)}};
    }
    if (c == '^' || c == 'v') {
      ++pos_;
      bool star = !at_end() && peek() == '*';
      if (star) ++pos_;
      if (c == '^') return GameExpr{GameExpr::Up{star}};
      return GameExpr{GameExpr::Down{star}};
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      bool negative = c == '-';
      if (negative) ++pos_;
      long long num = parse_digits();
      if (negative) num = -num;
      if (num > kMaxInteger || num < -kMaxInteger)
        throw ParseError("integer out of range", at);
      if (!at_end() && peek() == '/') {
        ++pos_;
        std::size_t dpos = pos_;
        long long den = parse_digits();
        if (den <= 0 || (den & (den - 1)) != 0)
          throw ParseError("denominator is not a power of two", dpos);
        // Reduce to lowest terms; an integral value collapses to Integer.
        while (num % 2 == 0 && den > 1) {
          num /= 2;
          den /= 2;
        }
        if (num == 0) return GameExpr{GameExpr::Integer{0}};
        if (den == 1) return GameExpr{GameExpr::Integer{num}};
        int k = 0;
        for (long long d = den; d > 1; d >>= 1) ++k;
        return GameExpr{GameExpr::Dyadic{num, k}};
      }
      return GameExpr{GameExpr::Integer{num}};
    }
    throw ParseError("expected game", pos_);
  }

  std::vector<GameExpr> parse_list() {
    std::vector<GameExpr> items;
    skip_ws();
    if (!at_end() && (peek() == '|' || peek() == '}')) return items;
    items.push_back(parse_game());
    skip_ws();
    while (!at_end() && peek() == ',') {
      ++pos_;
      items.push_back(parse_game());
      skip_ws();
    }
    return items;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// Reduce num/2^k to lowest terms.
std::pair<long long, int> reduce_dyadic(long long num, int k) {
  while (num != 0 && num % 2 == 0 && k > 0) {
    num /= 2;
    --k;
  }
  if (num == 0) k = 0;
  return {num, k};
}

GameId dyadic_game(Arena& arena, long long num, int k) {
  if (k == 0) return arena.integer(static_cast<int>(num));
  auto [ln, lk] = reduce_dyadic(num - 1, k);
  auto [rn, rk] = reduce_dyadic(num + 1, k);
  GameId lo = dyadic_game(arena, ln, lk);
  GameId hi = dyadic_game(arena, rn, rk);
  return arena.canonicalize({{lo}}, {{hi}});
}

GameId nimber_game(Arena& arena, int order) {
  std::vector<GameId> lower;
  lower.push_back(arena.zero());
  for (int j = 1; j <= order; ++j)
    lower.push_back(arena.canonicalize(lower, lower));
  return lower[static_cast<std::size_t>(order)];
}

}  // namespace

GameExpr parse(std::string_view text) { return Parser(text).parse_all(); }

GameId elaborate(const GameExpr& expr, Arena& arena) {
  struct Visitor {
    Arena& arena;

    GameId operator()(const GameExpr::Integer& e) const {
      return arena.integer(static_cast<int>(e.value));
    }
    GameId operator()(const GameExpr::Dyadic& e) const {
      return dyadic_game(arena, e.numerator, e.den_log2);
    }
    GameId operator()(const GameExpr::Nimber& e) const {
      return nimber_game(arena, e.order);
    }
    GameId operator()(const GameExpr::Up& e) const {
      GameId star = nimber_game(arena, 1);
      if (e.star)
        return arena.canonicalize({{arena.zero(), star}}, {{arena.zero()}});
      return arena.canonicalize({{arena.zero()}}, {{star}});
    }
    GameId operator()(const GameExpr::Down& e) const {
      GameId star = nimber_game(arena, 1);
      if (e.star)
        return arena.canonicalize({{arena.zero()}}, {{arena.zero(), star}});
      return arena.canonicalize({{star}}, {{arena.zero()}});
    }
    GameId operator()(const GameExpr::PlusMinus& e) const {
      GameId g = elaborate(e.inner.front(), arena);
      GameId neg = arena.negate(g);
      return arena.canonicalize({{g}}, {{neg}});
    }
    GameId operator()(const GameExpr::Tiny& e) const {
      GameId g = elaborate(e.inner.front(), arena);
      GameId inner = arena.canonicalize({{arena.zero()}}, {{arena.negate(g)}});
      return arena.canonicalize({{arena.zero()}}, {{inner}});
    }
    GameId operator()(const GameExpr::Braces& e) const {
      std::vector<GameId> left, right;
      left.reserve(e.left.size());
      right.reserve(e.right.size());
      for (const GameExpr& sub : e.left) left.push_back(elaborate(sub, arena));
      for (const GameExpr& sub : e.right)
        right.push_back(elaborate(sub, arena));
      return arena.canonicalize(left, right);
    }
  };
  return std::visit(Visitor{arena}, expr.node);
}

GameId read_game(std::string_view text, Arena& arena) {
  return elaborate(parse(text), arena);
}

namespace {

std::optional<long long> int_value(const std::string& name) {
  if (name.empty()) return std::nullopt;
  std::size_t i = name[0] == '-' ? 1 : 0;
  if (i == name.size()) return std::nullopt;
  for (std::size_t j = i; j < name.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(name[j])))
      return std::nullopt;
  long long v = 0;
  std::from_chars(name.data() + i, name.data() + name.size(), v);
  return name[0] == '-' ? -v : v;
}

// "p" or "p/2^k" as (numerator, k), already in lowest terms.
std::optional<std::pair<long long, int>> rational_value(
    const std::string& name) {
  auto slash = name.find('/');
  if (slash == std::string::npos) {
    auto v = int_value(name);
    if (!v) return std::nullopt;
    return std::make_pair(*v, 0);
  }
  auto num = int_value(name.substr(0, slash));
  auto den = int_value(name.substr(slash + 1));
  if (!num || !den || *den <= 0 || (*den & (*den - 1)) != 0)
    return std::nullopt;
  int k = 0;
  for (long long d = *den; d > 1; d >>= 1) ++k;
  return std::make_pair(*num, k);
}

std::optional<int> nimber_value(const std::string& name) {
  if (name == "0") return 0;
  if (name.empty() || name[0] != '*') return std::nullopt;
  if (name.size() == 1) return 1;
  auto v = int_value(name.substr(1));
  if (!v || *v < 2) return std::nullopt;
  return static_cast<int>(*v);
}

bool is_atom_name(const std::string& name) {
  if (name.empty()) return false;
  char c = name[0];
  if (c == '^' || c == 'v' || c == '*') return true;
  return c == '-' || std::isdigit(static_cast<unsigned char>(c));
}

}  // namespace

const std::string& Printer::name(GameId g) {
  if (auto it = cache_.find(g.index); it != cache_.end()) return it->second;
  std::string s = render(g);
  return cache_.emplace(g.index, std::move(s)).first->second;
}

bool Printer::less(GameId a, GameId b) {
  int ba = arena_->birthday(a);
  int bb = arena_->birthday(b);
  if (ba != bb) return ba < bb;
  const std::string& na = name(a);
  const std::string& nb = name(b);
  if (na != nb) return na < nb;
  return a.index < b.index;
}

std::vector<GameId> Printer::sorted_options(const std::vector<GameId>& opts) {
  std::vector<GameId> v = opts;
  std::sort(v.begin(), v.end(),
            [this](GameId a, GameId b) { return less(a, b); });
  return v;
}

std::string Printer::render(GameId g) {
  // Copies: negate() below may intern new forms and relocate the arena's
  // storage.
  const std::vector<GameId> left = arena_->left_options(g);
  const std::vector<GameId> right = arena_->right_options(g);
  if (left.empty() && right.empty()) return "0";

  // Shorthands apply only to canonical forms; for raw forms the braces
  // rendering below shows the stored structure verbatim.
  if (arena_->is_canonical(g)) {
    if (right.empty() && left.size() == 1) {
      if (auto v = int_value(name(left[0])); v && *v >= 0)
        return std::to_string(*v + 1);
    }
    if (left.empty() && right.size() == 1) {
      if (auto v = int_value(name(right[0])); v && *v <= 0)
        return std::to_string(*v - 1);
    }
    if (left.size() == 1 && right.size() == 1) {
      auto a = rational_value(name(left[0]));
      auto b = rational_value(name(right[0]));
      if (a && b) {
        // A canonical number {a|b} is the mean (p odd, k >= 1) with
        // options exactly (p-1)/2^k and (p+1)/2^k.
        auto [na, ka] = *a;
        auto [nb, kb] = *b;
        int common = std::max(ka, kb);
        long long sum = (na << (common - ka)) + (nb << (common - kb));
        auto [p, k] = reduce_dyadic(sum, common + 1);
        if (k >= 1 && reduce_dyadic(p - 1, k) == std::make_pair(na, ka) &&
            reduce_dyadic(p + 1, k) == std::make_pair(nb, kb)) {
          return std::to_string(p) + "/" + std::to_string(1LL << k);
        }
      }
    }
    if (!left.empty() && left == right) {
      std::vector<int> orders;
      bool all = true;
      for (GameId opt : left) {
        auto v = nimber_value(name(opt));
        if (!v) {
          all = false;
          break;
        }
        orders.push_back(*v);
      }
      if (all) {
        std::sort(orders.begin(), orders.end());
        bool contiguous = true;
        for (std::size_t i = 0; i < orders.size(); ++i)
          if (orders[i] != static_cast<int>(i)) contiguous = false;
        if (contiguous) {
          int k = static_cast<int>(orders.size());
          return k == 1 ? std::string("*") : "*" + std::to_string(k);
        }
      }
    }
    if (left.size() == 1 && right.size() == 1 && name(left[0]) == "0" &&
        name(right[0]) == "*")
      return "^";
    if (left.size() == 1 && right.size() == 1 && name(left[0]) == "*" &&
        name(right[0]) == "0")
      return "v";
    if (left.size() == 2 && right.size() == 1 && name(right[0]) == "0") {
      auto names = {name(left[0]), name(left[1])};
      if (std::count(names.begin(), names.end(), "0") == 1 &&
          std::count(names.begin(), names.end(), "*") == 1)
        return "^*";
    }
    if (left.size() == 1 && right.size() == 2 && name(left[0]) == "0") {
      auto names = {name(right[0]), name(right[1])};
      if (std::count(names.begin(), names.end(), "0") == 1 &&
          std::count(names.begin(), names.end(), "*") == 1)
        return "v*";
    }
    if (left.size() == 1 && right.size() == 1 &&
        right[0] == arena_->negate(left[0]) &&
        arena_->compare(left[0], arena_->zero()) == OrderRelation::Greater) {
      const std::string& inner = name(left[0]);
      if (is_atom_name(inner)) return "+-" + inner;
      return "+-(" + inner + ")";
    }
    if (left.size() == 1 && right.size() == 1 && name(left[0]) == "0") {
      const std::vector<GameId> rl = arena_->left_options(right[0]);
      const std::vector<GameId> rr = arena_->right_options(right[0]);
      if (rl.size() == 1 && rr.size() == 1 && name(rl[0]) == "0") {
        GameId inner = arena_->negate(rr[0]);
        if (arena_->compare(inner, arena_->zero()) == OrderRelation::Greater)
          return "tiny(" + name(inner) + ")";
      }
    }
  }

  std::string out = "{";
  bool first = true;
  for (GameId opt : sorted_options(left)) {
    if (!first) out += ",";
    out += name(opt);
    first = false;
  }
  out += "|";
  first = true;
  for (GameId opt : sorted_options(right)) {
    if (!first) out += ",";
    out += name(opt);
    first = false;
  }
  out += "}";
  return out;
}

std::string print_game(Arena& arena, GameId g) {
  Printer p(arena);
  return p.name(g);
}

}  // namespace cgt
