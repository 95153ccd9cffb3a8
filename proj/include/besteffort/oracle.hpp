#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"
#include "besteffort/solvers.hpp"

namespace besteffort {

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// All positional strategies of one player, in lexicographic order of the
/// successor choices (lowest state index most significant).
class StrategySpace {
 public:
  StrategySpace(const Game& game, Player owner);

  /// Number of strategies, saturating at UINT64_MAX.
  std::uint64_t count() const { return count_; }
  PositionalStrategy at(std::uint64_t index) const;

 private:
  const Game* game_;
  Player owner_;
  std::vector<StateId> owned_;
  std::uint64_t count_ = 1;
};

/// 1 iff the play from s under (sigma, tau) satisfies the goal.
bool val(const Game& game, const Goal& goal, const PositionalStrategy& sigma, const PositionalStrategy& tau,
         StateId s);

enum class Dominance { Dominates, Dominated, Equal, Incomparable };

const char* to_string(Dominance d);

/// Dominance among Player-1 positional strategies, with adversaries ranging
/// over positional Player-2 strategies only.
struct DominanceRelation {
  std::vector<PositionalStrategy> strategies;
  /// entry[i][j]: how strategies[i] compares to strategies[j].
  std::vector<std::vector<Dominance>> entry;
  static constexpr const char* kScope = "positional adversaries";

  bool dominates(std::size_t i, std::size_t j) const { return entry[i][j] == Dominance::Dominates; }
};

/// Throws BudgetExceeded when |σ|·|τ|·|S| evaluations exceed the budget.
DominanceRelation dominance_matrix(const Game& game, const Goal& goal, std::uint64_t budget = kDefaultBudget);

/// Strategies no other positional strategy dominates.
std::vector<PositionalStrategy> maximal_positional(const Game& game, const Goal& goal,
                                                   std::uint64_t budget = kDefaultBudget);

/// Adversarial: ∃σ ∀τ val = 1; cooperative: ∃σ ∃τ val = 1 (positional σ, τ).
StateSet brute_winning_region(const Game& game, const Goal& goal, Mode mode, std::uint64_t budget = kDefaultBudget);

}  // namespace besteffort
