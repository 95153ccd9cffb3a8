#pragma once

#include <string>
#include <string_view>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"
#include "besteffort/product.hpp"

namespace besteffort {

/// Syntax or semantic error in an input file. Line and column are 1-based;
/// line 0 marks problems of the file as a whole (missing goal, blocking
/// states).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct GameFile {
  Game game;
  Goal goal = Goal::truth(true);
};

/// Game file format, one declaration per line:
///
///   # comment
///   state NAME player=1|2 color=NAT
///   edge NAME NAME
///   goal EXPR
///
/// Tokens are separated by single spaces; EXPR contains no spaces. States
/// may be declared after the edges that use them. Exactly one goal line.
GameFile parse_game(std::string_view text);

/// EXPR := reach(N) | ev(N) | first(N) | buchi(N) | cobuchi(N) | parity
///       | safe(N,...) | count(N,N) | and(EXPR,EXPR) | or(EXPR,EXPR) | not(EXPR)
/// `column` is added to error positions, `line` is reported as is.
Goal parse_goal(std::string_view text, std::size_t line = 1, std::size_t column = 1);

std::string render_game(const Game& game, const Goal& goal);

/// Strategy file format:
///
///   move s -> t          move at s (every memory)
///   memory monitor       memories are the goal monitor states q0, q1, ...
///   memory m0 m1 ...     explicit memories, the first one initial
///   update m s -> m'     on entering s with memory m, switch to m'
///                        (transitions not listed keep the memory)
///   move s@m -> t        move at s with memory m, overrides `move s -> t`
///
/// Player-1 states with a single successor need no line.
MemoryStrategy parse_strategy(std::string_view text, const Game& game, const Goal& goal);

/// GraphViz digraph: Player-1 states as circles, Player-2 states as boxes,
/// labels "name:color".
std::string to_dot(const Game& game, const Goal* goal = nullptr);

std::string lasso_to_string(const Game& game, const Lasso& lasso);

}  // namespace besteffort
