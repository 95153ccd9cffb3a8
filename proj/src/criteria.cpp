#include "besteffort/criteria.hpp"

#include <algorithm>
#include <deque>

#include "besteffort/mdp.hpp"
#include "besteffort/oracle.hpp"

namespace besteffort {

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::Winning: return "winning";
    case Criterion::StronglyWinning: return "strongly-winning";
    case Criterion::SubgamePerfect: return "subgame-perfect";
    case Criterion::CWinning: return "c-winning";
    case Criterion::CsWinning: return "cs-winning";
    case Criterion::CPerfect: return "c-perfect";
    case Criterion::Admissible: return "admissible";
    case Criterion::Optimal: return "optimal";
  }
  return "winning";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
  for (auto c : kAllCriteria)
    if (text == to_string(c)) return c;
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unsupported: return "unsupported";
  }
  return "unsupported";
}

const CriterionResult& CriterionReport::at(Criterion c) const {
  for (const auto& r : results)
    if (r.criterion == c) return r;
  throw Error(std::string("criterion not checked: ") + to_string(c));
}

namespace {

std::vector<Color> colors_per_node(const Product& p) {
  std::vector<Color> out;
  for (NodeId n = 0; n < p.size(); ++n) out.push_back(p.game().color(p.node(n).state));
  return out;
}

std::vector<Goal> limits_per_node(const Product& p) {
  std::vector<Goal> out;
  for (NodeId n = 0; n < p.size(); ++n) out.push_back(p.monitor().limit(p.node(n).monitor));
  return out;
}

struct Scan {
  bool any = false;  // some node was quantified over
  std::optional<Path> failing;
  NodeId node = 0;
};

// Breadth-first over histories (initial nodes in state order), so the first
// failure found has a shortest history.
Scan scan(const Product& p, const std::vector<std::vector<NodeId>>* adj, const std::function<bool(NodeId)>& in_domain,
          const std::function<bool(NodeId)>& fails) {
  Scan out;
  std::vector<NodeId> parent(p.size(), kNoState);
  std::vector<bool> seen(p.size(), false);
  std::deque<NodeId> queue;
  for (StateId s = 0; s < p.game().size(); ++s) {
    const auto n = p.initial(s);
    if (!seen[n]) {
      seen[n] = true;
      queue.push_back(n);
    }
  }
  while (!queue.empty()) {
    const auto n = queue.front();
    queue.pop_front();
    if (in_domain(n)) {
      out.any = true;
      if (fails(n)) {
        Path history;
        for (NodeId x = n; x != kNoState; x = parent[x]) history.push_back(p.node(x).state);
        std::reverse(history.begin(), history.end());
        out.failing = std::move(history);
        out.node = n;
        return out;
      }
    }
    if (!adj) continue;
    for (auto m : (*adj)[n]) {
      if (seen[m]) continue;
      seen[m] = true;
      parent[m] = n;
      queue.push_back(m);
    }
  }
  return out;
}

}  // namespace

StrategyChecker::StrategyChecker(const Game& game, const Goal& goal, const MemoryStrategy& sigma)
    : game_(&game),
      goal_(goal),
      sigma_(sigma),
      analysis_(game, goal),
      joint_(game, goal, &sigma_),
      violation_(joint_.restricted(), colors_per_node(joint_), limits_per_node(joint_), false),
      fulfilment_(joint_.restricted(), colors_per_node(joint_), limits_per_node(joint_), true) {
  for (NodeId n = 0; n < joint_.size(); ++n) {
    history_win_.push_back(analysis_.winning(joint_.node(n)));
    history_coop_.push_back(analysis_.c_winning(joint_.node(n)));
  }
}

bool StrategyChecker::wins_from(std::span<const StateId> history) const {
  return !violation_.found(joint_.node_of(history));
}

bool StrategyChecker::c_wins_from(std::span<const StateId> history) const {
  return fulfilment_.found(joint_.node_of(history));
}

CriterionResult StrategyChecker::adversarial(Criterion c, Scope scope) const {
  const auto* adj = scope == Scope::States ? nullptr : scope == Scope::Consistent ? &joint_.restricted() : &joint_.full();
  auto res = scan(joint_, adj, [&](NodeId n) { return history_win_[n]; },
                  [&](NodeId n) { return violation_.found(n); });
  CriterionResult out{c, Verdict::Holds, !res.any, std::nullopt, {}};
  if (!res.failing) return out;
  out.verdict = Verdict::Fails;
  const auto w = *violation_.witness(res.node);
  out.witness = Witness{*res.failing, Lasso{joint_.project(w.first), joint_.project(w.second)}};
  return out;
}

CriterionResult StrategyChecker::cooperative(Criterion c, Scope scope) const {
  const auto* adj = scope == Scope::States ? nullptr : scope == Scope::Consistent ? &joint_.restricted() : &joint_.full();
  auto res = scan(joint_, adj, [&](NodeId n) { return history_coop_[n]; },
                  [&](NodeId n) { return !fulfilment_.found(n); });
  CriterionResult out{c, Verdict::Holds, !res.any, std::nullopt, {}};
  if (!res.failing) return out;
  out.verdict = Verdict::Fails;
  out.witness = Witness{*res.failing, std::nullopt};
  return out;
}

CriterionResult StrategyChecker::optimal() const {
  CriterionResult out{Criterion::Optimal, Verdict::Unsupported, false, std::nullopt, {}};
  if (!sigma_.is_positional()) {
    out.note = "optimality is decided for positional strategies only";
    return out;
  }
  if (solver_form(goal_).cls == SolverClass::Composite) {
    out.note = "no stochastic values for composite goal " + goal_.to_string();
    return out;
  }
  const auto best = usg_value(*game_, goal_);
  const auto mine = usg_evaluate(*game_, goal_, sigma_.positional());
  out.verdict = Verdict::Holds;
  for (StateId s = 0; s < game_->size(); ++s) {
    if (mine.below(best.values, s)) {
      out.verdict = Verdict::Fails;
      out.witness = Witness{{s}, std::nullopt};
      out.note = "value " + mine.to_string(s) + " < " + best.values.to_string(s) + " at " + game_->name(s);
      break;
    }
  }
  return out;
}

CriterionResult StrategyChecker::check(Criterion c) const {
  switch (c) {
    case Criterion::Winning: return adversarial(c, Scope::States);
    case Criterion::StronglyWinning: return adversarial(c, Scope::Consistent);
    case Criterion::SubgamePerfect: return adversarial(c, Scope::All);
    case Criterion::CWinning: return cooperative(c, Scope::States);
    case Criterion::CsWinning: return cooperative(c, Scope::Consistent);
    case Criterion::CPerfect: return cooperative(c, Scope::All);
    case Criterion::Admissible: {
      auto strong = adversarial(Criterion::StronglyWinning, Scope::Consistent);
      auto coop = cooperative(Criterion::CsWinning, Scope::Consistent);
      CriterionResult out{c, Verdict::Holds, strong.vacuous && coop.vacuous, std::nullopt, {}};
      for (auto* part : {&strong, &coop}) {
        if (part->verdict != Verdict::Fails) continue;
        out.verdict = Verdict::Fails;
        out.witness = part->witness;
        out.note = std::string(to_string(part->criterion)) + " fails";
        break;
      }
      return out;
    }
    case Criterion::Optimal: return optimal();
  }
  return {};
}

CriterionReport StrategyChecker::check(std::span<const Criterion> criteria) const {
  CriterionReport report;
  for (auto c : criteria) report.results.push_back(check(c));
  return report;
}

namespace {

CriterionResult one(const Game& game, const Goal& goal, const MemoryStrategy& sigma, Criterion c) {
  return StrategyChecker(game, goal, sigma).check(c);
}

}  // namespace

CriterionResult is_winning_strategy(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::Winning);
}
CriterionResult is_strongly_winning(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::StronglyWinning);
}
CriterionResult is_subgame_perfect(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::SubgamePerfect);
}
CriterionResult is_c_winning(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::CWinning);
}
CriterionResult is_cs_winning(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::CsWinning);
}
CriterionResult is_c_perfect(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::CPerfect);
}
CriterionResult is_admissible(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::Admissible);
}
CriterionResult is_optimal(const Game& game, const Goal& goal, const MemoryStrategy& sigma) {
  return one(game, goal, sigma, Criterion::Optimal);
}

CriterionReport check_criteria(const Game& game, const Goal& goal, const MemoryStrategy& sigma,
                               std::span<const Criterion> criteria) {
  return StrategyChecker(game, goal, sigma).check(criteria);
}

bool synthesis_supported(const Goal& goal) {
  const auto cls = classify(goal);
  return cls.prefix_independent == Tri::Yes || cls.solver_class == SolverClass::Reachability ||
         cls.solver_class == SolverClass::Safety;
}

std::optional<PositionalStrategy> find_positional_winning(const Game& game, const Goal& goal, std::uint64_t budget) {
  StrategySpace space(game, Player::One);
  if (space.count() > budget)
    throw BudgetExceeded("positional strategy search needs " + std::to_string(space.count()) +
                         " candidates, budget " + std::to_string(budget));
  const GoalAnalysis analysis(game, goal);
  const auto win = analysis.winning_states();
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    auto candidate = space.at(i);
    const MemoryStrategy sigma(candidate);
    const Product joint(game, goal, &sigma);
    const LassoFinder bad(joint.restricted(), colors_per_node(joint), limits_per_node(joint), false);
    bool ok = true;
    for (StateId s = 0; s < game.size() && ok; ++s) ok = !win[s] || !bad.found(joint.initial(s));
    if (ok) return candidate;
  }
  return std::nullopt;
}

Synthesis synth_admissible(const Game& game, const Goal& goal, bool force) {
  Synthesis out;
  out.guaranteed = synthesis_supported(goal);
  if (!out.guaranteed && !force)
    throw PreconditionViolation("goal " + goal.to_string() +
                                " is neither prefix-independent nor reachability/safety; "
                                "the procedure is only proven for those (use --force to run it anyway)");

  if (solver_form(goal).cls != SolverClass::Composite) {
    auto step1 = solve(game, goal, Mode::Adversarial);
    out.winning = std::move(step1.region);
    out.winning_strategy = std::move(step1.strategy);
  } else {
    out.winning = GoalAnalysis(game, goal).winning_states();
    auto sigma = find_positional_winning(game, goal);
    if (!sigma)
      throw UnsupportedGoal("no positional winning strategy exists for " + goal.to_string() +
                            "; the procedure needs one in step 1");
    out.winning_strategy = std::move(*sigma);
  }

  for (StateId s = 0; s < game.size(); ++s) out.pruned.add_state(game.name(s), game.owner(s), game.color(s));
  for (StateId s = 0; s < game.size(); ++s) {
    for (auto t : game.successors(s)) {
      if (game.owner(s) == Player::One && out.winning[s] && t != out.winning_strategy.choice[s]) continue;
      out.pruned.add_edge(s, t);
    }
  }

  auto step3 = solve(out.pruned, goal, Mode::Cooperative);
  out.cooperative = std::move(step3.region);
  out.strategy = std::move(step3.strategy);

  static constexpr Criterion kVerified[] = {Criterion::Winning, Criterion::CWinning, Criterion::Admissible};
  out.verification = check_criteria(game, goal, out.strategy, kVerified);
  return out;
}

}  // namespace besteffort
