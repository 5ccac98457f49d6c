#ifndef CGT_NOTATION_HPP
#define CGT_NOTATION_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cgt/game.hpp"

namespace cgt {

// Syntax error with the offset of the offending character.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) +
                           ")"),
        position(position) {}
  std::size_t position;
};

// Plain-text grammar for game forms:
//
//   game := int | int '/' pow2 | '*' [uint] | '^' ['*'] | 'v' ['*']
//         | '+-' '(' game ')' | '+-' atom | 'tiny' '(' game ')'
//         | '{' list '|' list '}'
//   atom := int | int '/' pow2 | '*' [uint] | '^' ['*'] | 'v' ['*']
//   list := (game (',' game)*)?
//
// Whitespace is insignificant. '^' is up, 'v' is down, '+-' is the symmetric
// form {G|-G}, 'tiny(g)' is {0|{0|-g}}.
struct GameExpr {
  struct Integer {
    long long value = 0;
  };
  struct Dyadic {  // numerator odd, den_log2 >= 1
    long long numerator = 0;
    int den_log2 = 0;
  };
  struct Nimber {
    int order = 0;
  };
  struct Up {
    bool star = false;
  };
  struct Down {
    bool star = false;
  };
  struct PlusMinus {
    std::vector<GameExpr> inner;  // exactly one element
  };
  struct Tiny {
    std::vector<GameExpr> inner;  // exactly one element
  };
  struct Braces {
    std::vector<GameExpr> left;
    std::vector<GameExpr> right;
  };

  std::variant<Integer, Dyadic, Nimber, Up, Down, PlusMinus, Tiny, Braces>
      node;
};

// Parses the whole string as a single game expression.
GameExpr parse(std::string_view text);

// Interns the canonical form denoted by the expression.
GameId elaborate(const GameExpr& expr, Arena& arena);

// parse + elaborate.
GameId read_game(std::string_view text, Arena& arena);

// Deterministic printer. Recognized canonical shapes print as shorthand
// (integers, dyadics, *k, ^, ^*, v, v*, +-g, tiny(g)); everything else as
// braces with options listed in canonical order. parse(name(g)) elaborates
// back to g.
class Printer {
 public:
  explicit Printer(Arena& arena) : arena_(&arena) {}

  const std::string& name(GameId g);

  // Total order all deterministic iteration uses: birthday ascending, then
  // printed name.
  bool less(GameId a, GameId b);

 private:
  std::string render(GameId g);
  std::vector<GameId> sorted_options(const std::vector<GameId>& opts);

  Arena* arena_;
  std::unordered_map<std::uint32_t, std::string> cache_;
};

// One-shot convenience.
std::string print_game(Arena& arena, GameId g);

}  // namespace cgt

#endif  // CGT_NOTATION_HPP
