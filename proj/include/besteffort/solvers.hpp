#pragma once

#include <functional>
#include <optional>
#include <set>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"

namespace besteffort {

enum class Mode { Adversarial, Cooperative };

const char* to_string(Mode m);

class UnsupportedGoal : public Error {
 public:
  using Error::Error;
};

struct AttractorResult {
  StateSet region;
  /// Moves of the attracting player on region \ target; kNoState elsewhere.
  PositionalStrategy strategy;
  /// Round in which each state joined (0 for the target), -1 outside.
  std::vector<int> rank;
};

/// Least set containing `target` into which `player` can force the play,
/// computed inside `subgraph` (all states when null). Each attracted state
/// of `player` moves to its lowest-index successor attracted in an earlier
/// round.
AttractorResult attractor(const Game& game, Player player, const StateSet& target,
                          const StateSet* subgraph = nullptr);

struct SolveResult {
  Mode mode = Mode::Adversarial;
  StateSet region;
  /// Player-1 strategy; lowest-index successor outside the region.
  PositionalStrategy strategy;
  /// Cooperative mode only: the Player-2 moves that complete the witness plays.
  std::optional<PositionalStrategy> partner;
};

/// Winning (or cooperatively winning) region with a positional witness.
/// Adversarial mode requires a non-composite goal or a bare first() atom and throws UnsupportedGoal
/// otherwise; cooperative mode accepts every goal.
SolveResult solve(const Game& game, const Goal& goal, Mode mode);

// Solvers for the individual classes. Player 1 is the protagonist; the
// parity convention is max-even.
SolveResult solve_reachability(const Game& game, const StateSet& target);
SolveResult solve_safety(const Game& game, const StateSet& allowed);
SolveResult solve_buchi(const Game& game, const StateSet& accepting);
SolveResult solve_cobuchi(const Game& game, const StateSet& stable);
SolveResult solve_parity(const Game& game);

/// Winning region of Player 1 for the Muller condition "the set of colors
/// seen infinitely often satisfies `wins`" (McNaughton–Zielonka recursion;
/// exponential in the number of colors).
StateSet solve_muller(const Game& game, const std::function<bool(const std::set<Color>&)>& wins);

/// Same game with every state handed to Player 1.
Game cooperative_copy(const Game& game);

}  // namespace besteffort
