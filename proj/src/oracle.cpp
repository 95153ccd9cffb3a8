#include "besteffort/oracle.hpp"

#include <limits>

namespace besteffort {

StrategySpace::StrategySpace(const Game& game, Player owner) : game_(&game), owner_(owner) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) != owner) continue;
    owned_.push_back(s);
    const std::uint64_t degree = game.successors(s).size();
    count_ = count_ > kMax / degree ? kMax : count_ * degree;
  }
}

PositionalStrategy StrategySpace::at(std::uint64_t index) const {
  PositionalStrategy out{owner_, std::vector<StateId>(game_->size(), kNoState)};
  for (auto it = owned_.rbegin(); it != owned_.rend(); ++it) {
    const auto succ = game_->successors(*it);
    out.choice[*it] = succ[index % succ.size()];
    index /= succ.size();
  }
  return out;
}

bool val(const Game& game, const Goal& goal, const PositionalStrategy& sigma, const PositionalStrategy& tau,
         StateId s) {
  return eval_lasso(goal, game, outcome(game, s, sigma, tau));
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::Dominates: return "dominates";
    case Dominance::Dominated: return "dominated";
    case Dominance::Equal: return "equal";
    case Dominance::Incomparable: return "incomparable";
  }
  return "incomparable";
}

namespace {

std::uint64_t evaluations(const Game& game, const StrategySpace& ones, const StrategySpace& twos) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (game.size() == 0) return 0;
  const std::uint64_t pairs = ones.count() > kMax / twos.count() ? kMax : ones.count() * twos.count();
  return pairs > kMax / game.size() ? kMax : pairs * game.size();
}

void check_budget(const Game& game, const StrategySpace& ones, const StrategySpace& twos, std::uint64_t budget) {
  const auto needed = evaluations(game, ones, twos);
  if (needed > budget)
    throw BudgetExceeded("oracle needs " + std::to_string(needed) + " evaluations, budget is " +
                         std::to_string(budget));
}

// table[i][j * |S| + s] = val(σ_i, τ_j, s)
std::vector<std::vector<bool>> value_table(const Game& game, const Goal& goal, const StrategySpace& ones,
                                           const StrategySpace& twos) {
  std::vector<PositionalStrategy> taus;
  for (std::uint64_t j = 0; j < twos.count(); ++j) taus.push_back(twos.at(j));
  std::vector<std::vector<bool>> table;
  for (std::uint64_t i = 0; i < ones.count(); ++i) {
    const auto sigma = ones.at(i);
    std::vector<bool> row;
    row.reserve(taus.size() * game.size());
    for (const auto& tau : taus)
      for (StateId s = 0; s < game.size(); ++s) row.push_back(val(game, goal, sigma, tau, s));
    table.push_back(std::move(row));
  }
  return table;
}

Dominance compare(const std::vector<bool>& a, const std::vector<bool>& b) {
  bool better = false, worse = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    better = better || (a[k] && !b[k]);
    worse = worse || (!a[k] && b[k]);
  }
  if (better && worse) return Dominance::Incomparable;
  if (better) return Dominance::Dominates;
  if (worse) return Dominance::Dominated;
  return Dominance::Equal;
}

}  // namespace

DominanceRelation dominance_matrix(const Game& game, const Goal& goal, std::uint64_t budget) {
  const StrategySpace ones(game, Player::One);
  const StrategySpace twos(game, Player::Two);
  check_budget(game, ones, twos, budget);
  const auto table = value_table(game, goal, ones, twos);

  DominanceRelation rel;
  for (std::uint64_t i = 0; i < ones.count(); ++i) rel.strategies.push_back(ones.at(i));
  const std::size_t n = rel.strategies.size();
  rel.entry.assign(n, std::vector<Dominance>(n, Dominance::Equal));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      rel.entry[i][j] = compare(table[i], table[j]);
      rel.entry[j][i] = compare(table[j], table[i]);
    }
  return rel;
}

std::vector<PositionalStrategy> maximal_positional(const Game& game, const Goal& goal, std::uint64_t budget) {
  const auto rel = dominance_matrix(game, goal, budget);
  std::vector<PositionalStrategy> out;
  for (std::size_t j = 0; j < rel.strategies.size(); ++j) {
    bool dominated = false;
    for (std::size_t i = 0; i < rel.strategies.size() && !dominated; ++i) dominated = rel.dominates(i, j);
    if (!dominated) out.push_back(rel.strategies[j]);
  }
  return out;
}

StateSet brute_winning_region(const Game& game, const Goal& goal, Mode mode, std::uint64_t budget) {
  const StrategySpace ones(game, Player::One);
  const StrategySpace twos(game, Player::Two);
  check_budget(game, ones, twos, budget);
  const auto table = value_table(game, goal, ones, twos);
  const std::size_t n = game.size();
  StateSet region(n, false);
  for (const auto& row : table) {
    for (StateId s = 0; s < n; ++s) {
      if (region[s]) continue;
      bool all = true, some = false;
      for (std::uint64_t j = 0; j < twos.count(); ++j) {
        const bool v = row[j * n + s];
        all = all && v;
        some = some || v;
      }
      region[s] = mode == Mode::Adversarial ? all : some;
    }
  }
  return region;
}

}  // namespace besteffort
