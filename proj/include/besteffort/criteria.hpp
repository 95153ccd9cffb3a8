#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"
#include "besteffort/product.hpp"
#include "besteffort/solvers.hpp"

namespace besteffort {

enum class Criterion {
  Winning,
  StronglyWinning,
  SubgamePerfect,
  CWinning,
  CsWinning,
  CPerfect,
  Admissible,
  Optimal,
};

inline constexpr Criterion kAllCriteria[] = {
    Criterion::Winning,  Criterion::StronglyWinning, Criterion::SubgamePerfect, Criterion::CWinning,
    Criterion::CsWinning, Criterion::CPerfect,       Criterion::Admissible,     Criterion::Optimal,
};

const char* to_string(Criterion c);
std::optional<Criterion> parse_criterion(std::string_view text);

enum class Verdict { Holds, Fails, Unsupported };

const char* to_string(Verdict v);

/// Evidence for a failed criterion. `history` is a winning (resp.
/// cooperatively winning) history from which the strategy does not win.
/// For the adversarial criteria `continuation` is a play from last(history),
/// consistent with the strategy, such that history[..-1]·continuation
/// violates the goal; cooperative failures have no continuation (no
/// consistent play satisfies the goal).
struct Witness {
  Path history;
  std::optional<Lasso> continuation;
};

struct CriterionResult {
  Criterion criterion = Criterion::Winning;
  Verdict verdict = Verdict::Holds;
  /// Holds because nothing was quantified over.
  bool vacuous = false;
  std::optional<Witness> witness;
  std::string note;
};

struct CriterionReport {
  std::vector<CriterionResult> results;
  const CriterionResult& at(Criterion c) const;
  bool holds(Criterion c) const { return at(c).verdict == Verdict::Holds; }
};

/// Decides the criteria for one strategy. Products are built once and
/// shared between criteria.
class StrategyChecker {
 public:
  StrategyChecker(const Game& game, const Goal& goal, const MemoryStrategy& sigma);

  CriterionResult check(Criterion c) const;
  CriterionReport check(std::span<const Criterion> criteria) const;

  const GoalAnalysis& analysis() const { return analysis_; }
  /// σ wins from the history (every consistent continuation satisfies the goal).
  bool wins_from(std::span<const StateId> history) const;
  /// Some σ-consistent continuation of the history satisfies the goal.
  bool c_wins_from(std::span<const StateId> history) const;

 private:
  enum class Scope { States, Consistent, All };
  CriterionResult adversarial(Criterion c, Scope scope) const;
  CriterionResult cooperative(Criterion c, Scope scope) const;
  CriterionResult optimal() const;

  const Game* game_;
  Goal goal_;
  MemoryStrategy sigma_;
  GoalAnalysis analysis_;
  Product joint_;
  std::vector<bool> history_win_;   // per joint node
  std::vector<bool> history_coop_;  // per joint node
  LassoFinder violation_;           // restricted view, lassos refuting the goal
  LassoFinder fulfilment_;          // restricted view, lassos satisfying the goal
};

CriterionResult is_winning_strategy(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
CriterionResult is_strongly_winning(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
CriterionResult is_subgame_perfect(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
CriterionResult is_c_winning(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
CriterionResult is_cs_winning(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
CriterionResult is_c_perfect(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
/// Strongly winning and cooperatively strongly winning.
CriterionResult is_admissible(const Game& game, const Goal& goal, const MemoryStrategy& sigma);
/// Optimal under a uniformly random Player 2; positional strategies and
/// non-composite goals only.
CriterionResult is_optimal(const Game& game, const Goal& goal, const MemoryStrategy& sigma);

CriterionReport check_criteria(const Game& game, const Goal& goal, const MemoryStrategy& sigma,
                               std::span<const Criterion> criteria = kAllCriteria);

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// Goals for which the three-step procedure is known to yield admissible
/// strategies: prefix-independent ones, reachability and safety.
bool synthesis_supported(const Goal& goal);

struct Synthesis {
  PositionalStrategy strategy;
  /// Step 1: winning states and the positional winning strategy used there.
  StateSet winning;
  PositionalStrategy winning_strategy;
  /// Step 3: cooperatively winning states of the pruned game.
  StateSet cooperative;
  Game pruned;
  bool guaranteed = false;
  CriterionReport verification;  // winning, c-winning, admissible
};

/// Three-step procedure: solve, drop the Player-1 edges the winning strategy
/// does not use inside the winning region, solve cooperatively what is left.
/// Throws PreconditionViolation outside synthesis_supported() unless `force`.
Synthesis synth_admissible(const Game& game, const Goal& goal, bool force = false);

/// First positional strategy (lexicographic enumeration) that is winning,
/// or nullopt. Throws BudgetExceeded when the space exceeds `budget`.
std::optional<PositionalStrategy> find_positional_winning(const Game& game, const Goal& goal,
                                                          std::uint64_t budget = 100000);

}  // namespace besteffort
