#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"

namespace besteffort {

/// Uniform stochastic semantics: Player-2 states pick a successor uniformly
/// at random, which turns the game into a Markov decision process for
/// Player 1. Values are winning probabilities.
struct UsgOptions {
  enum class Method { Auto, Exact, Iterative };
  Method method = Method::Auto;
  /// Iterative mode: stop once a sweep changes no value by more than
  /// tolerance * 1e-3.
  double tolerance = 1e-9;
  /// Auto switches to value iteration above this many states.
  std::size_t exact_limit = 200;
};

class ValueVector {
 public:
  static ValueVector exact(std::vector<mpq_class> values);
  static ValueVector approximate(std::vector<double> values, double tolerance);

  bool is_exact() const { return exact_; }
  std::size_t size() const { return approx_.size(); }
  double at(StateId s) const { return approx_[s]; }
  /// Exact mode only.
  const mpq_class& exact_at(StateId s) const { return values_[s]; }
  double tolerance() const { return tolerance_; }
  /// "1/2" in exact mode, shortest round-trip decimal otherwise.
  std::string to_string(StateId s) const;

  /// Value at s is strictly below other's (beyond the tolerance when inexact).
  bool below(const ValueVector& other, StateId s) const;

 private:
  bool exact_ = true;
  double tolerance_ = 0;
  std::vector<mpq_class> values_;
  std::vector<double> approx_;
};

struct UsgResult {
  ValueVector values;
  /// Optimal from every state.
  PositionalStrategy strategy;
};

/// Maximal winning probabilities and a positional optimal strategy.
/// Goals: reachability, safety, Büchi, co-Büchi, parity (throws
/// UnsupportedGoal otherwise).
UsgResult usg_value(const Game& game, const Goal& goal, const UsgOptions& options = {});

/// Winning probabilities of a fixed positional strategy.
ValueVector usg_evaluate(const Game& game, const Goal& goal, const PositionalStrategy& sigma,
                         const UsgOptions& options = {});

/// Maximal end components of the MDP restricted to `within` (all states when
/// null): sets closed under random moves in which Player 1 can stay forever.
std::vector<std::vector<StateId>> maximal_end_components(const Game& game, const StateSet* within = nullptr);

}  // namespace besteffort
