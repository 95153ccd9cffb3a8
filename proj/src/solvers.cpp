#include "besteffort/solvers.hpp"

#include <algorithm>

#include "besteffort/product.hpp"

namespace besteffort {

const char* to_string(Mode m) { return m == Mode::Adversarial ? "adversarial" : "cooperative"; }

namespace {

std::vector<std::vector<StateId>> predecessors(const Game& game) {
  std::vector<std::vector<StateId>> pred(game.size());
  for (StateId s = 0; s < game.size(); ++s)
    for (auto t : game.successors(s)) pred[t].push_back(s);
  return pred;
}

StateSet all_states(const Game& game) { return StateSet(game.size(), true); }

StateSet minus(const StateSet& a, const StateSet& b) {
  StateSet out(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && !b[i];
  return out;
}

bool empty(const StateSet& a) { return std::none_of(a.begin(), a.end(), [](bool b) { return b; }); }

StateId lowest_in(const Game& game, StateId s, const StateSet& within) {
  for (auto t : game.successors(s))
    if (within[t]) return t;
  return game.successors(s).front();
}

// Player-1 strategy from a partial choice vector; gaps get the lowest successor.
PositionalStrategy complete(const Game& game, std::vector<StateId> choice) {
  PositionalStrategy strategy{Player::One, std::move(choice)};
  strategy.choice.resize(game.size(), kNoState);
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) != Player::One) {
      strategy.choice[s] = kNoState;
    } else if (strategy.choice[s] == kNoState) {
      strategy.choice[s] = game.successors(s).front();
    }
  }
  return strategy;
}

StateSet states_with(const Game& game, const std::function<bool(Color)>& pred) {
  StateSet out(game.size(), false);
  for (StateId s = 0; s < game.size(); ++s) out[s] = pred(game.color(s));
  return out;
}

struct ParityResult {
  StateSet win1;
  std::vector<StateId> choice1;
  std::vector<StateId> choice2;
};

// Zielonka's recursion restricted to the subgame `sub`.
ParityResult zielonka(const Game& game, const StateSet& sub) {
  const std::size_t n = game.size();
  ParityResult out{StateSet(n, false), std::vector<StateId>(n, kNoState), std::vector<StateId>(n, kNoState)};
  if (empty(sub)) return out;

  Color top = 0;
  for (StateId s = 0; s < n; ++s)
    if (sub[s]) top = std::max(top, game.color(s));
  const Player player = top % 2 == 0 ? Player::One : Player::Two;
  const Player other = opponent(player);
  auto choices_of = [&](ParityResult& r, Player p) -> std::vector<StateId>& {
    return p == Player::One ? r.choice1 : r.choice2;
  };

  StateSet top_states(n, false);
  for (StateId s = 0; s < n; ++s) top_states[s] = sub[s] && game.color(s) == top;
  auto attr = attractor(game, player, top_states, &sub);
  auto rest = minus(sub, attr.region);
  auto inner = zielonka(game, rest);

  StateSet lost_inner(n, false);  // won by `other` inside rest
  for (StateId s = 0; s < n; ++s)
    lost_inner[s] = rest[s] && (player == Player::One ? !inner.win1[s] : inner.win1[s]);

  if (empty(lost_inner)) {
    for (StateId s = 0; s < n; ++s) {
      if (!sub[s]) continue;
      out.win1[s] = player == Player::One;
      const Player own = game.owner(s);
      StateId pick = kNoState;
      if (rest[s]) {
        pick = choices_of(inner, own)[s];
      } else if (own == player && attr.strategy.choice[s] != kNoState) {
        pick = attr.strategy.choice[s];
      }
      if (pick == kNoState) pick = lowest_in(game, s, sub);
      choices_of(out, own)[s] = pick;
    }
    return out;
  }

  auto back = attractor(game, other, lost_inner, &sub);
  auto remaining = minus(sub, back.region);
  auto outer = zielonka(game, remaining);
  for (StateId s = 0; s < n; ++s) {
    if (!sub[s]) continue;
    const Player own = game.owner(s);
    StateId pick = kNoState;
    if (remaining[s]) {
      out.win1[s] = outer.win1[s];
      pick = choices_of(outer, own)[s];
    } else {
      out.win1[s] = other == Player::One;
      if (own == other) pick = lost_inner[s] ? choices_of(inner, own)[s] : back.strategy.choice[s];
    }
    if (pick == kNoState) pick = lowest_in(game, s, sub);
    choices_of(out, own)[s] = pick;
  }
  return out;
}

// Cooperative solve of a class handled by the fixpoint solvers.
SolveResult cooperative_by_copy(const Game& game, const Goal& goal) {
  const Game copy = cooperative_copy(game);
  auto res = solve(copy, goal, Mode::Adversarial);
  SolveResult out;
  out.mode = Mode::Cooperative;
  out.region = res.region;
  out.strategy = PositionalStrategy{Player::One, std::vector<StateId>(game.size(), kNoState)};
  PositionalStrategy partner{Player::Two, std::vector<StateId>(game.size(), kNoState)};
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) == Player::One) {
      out.strategy.choice[s] = res.strategy.choice[s];
    } else {
      partner.choice[s] = res.strategy.choice[s];
    }
  }
  out.partner = std::move(partner);
  return out;
}

StateSet muller_rec(const Game& game, const StateSet& sub, const std::function<bool(const std::set<Color>&)>& wins) {
  const std::size_t n = game.size();
  if (empty(sub)) return StateSet(n, false);
  std::set<Color> colors;
  for (StateId s = 0; s < n; ++s)
    if (sub[s]) colors.insert(game.color(s));

  const bool favourable = wins(colors);
  const Player mover = favourable ? Player::One : Player::Two;
  for (auto c : colors) {
    StateSet target(n, false);
    for (StateId s = 0; s < n; ++s) target[s] = sub[s] && game.color(s) == c;
    auto attr = attractor(game, mover, target, &sub);
    auto rest = minus(sub, attr.region);
    if (empty(rest)) continue;
    auto win1 = muller_rec(game, rest, wins);
    if (favourable) {
      auto lost = minus(rest, win1);
      if (empty(lost)) continue;
      auto pull = attractor(game, Player::Two, lost, &sub);
      return muller_rec(game, minus(sub, pull.region), wins);
    }
    if (empty(win1)) continue;
    auto pull = attractor(game, Player::One, win1, &sub);
    auto more = muller_rec(game, minus(sub, pull.region), wins);
    for (StateId s = 0; s < n; ++s) more[s] = more[s] || pull.region[s];
    return more;
  }
  return favourable ? sub : StateSet(n, false);
}

}  // namespace

AttractorResult attractor(const Game& game, Player player, const StateSet& target, const StateSet* subgraph) {
  const std::size_t n = game.size();
  const StateSet sub = subgraph ? *subgraph : all_states(game);
  const auto pred = predecessors(game);

  AttractorResult out{StateSet(n, false), PositionalStrategy{player, std::vector<StateId>(n, kNoState)},
                      std::vector<int>(n, -1)};
  std::vector<std::size_t> pending(n, 0);
  for (StateId s = 0; s < n; ++s) {
    if (!sub[s]) continue;
    for (auto t : game.successors(s)) pending[s] += sub[t] ? 1 : 0;
  }

  std::vector<StateId> level;
  for (StateId s = 0; s < n; ++s) {
    if (sub[s] && target[s]) {
      out.region[s] = true;
      out.rank[s] = 0;
      level.push_back(s);
    }
  }
  int round = 0;
  std::vector<bool> queued(n, false);
  while (!level.empty()) {
    std::vector<StateId> next;
    for (auto t : level) {
      for (auto s : pred[t]) {
        if (!sub[s] || out.region[s] || queued[s]) continue;
        if (game.owner(s) == player || --pending[s] == 0) {
          queued[s] = true;
          next.push_back(s);
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (auto s : next) {
      if (game.owner(s) == player) {
        for (auto t : game.successors(s)) {
          if (out.rank[t] >= 0 && out.rank[t] <= round) {
            out.strategy.choice[s] = t;
            break;
          }
        }
      }
    }
    ++round;
    for (auto s : next) {
      out.region[s] = true;
      out.rank[s] = round;
    }
    level = std::move(next);
  }
  return out;
}

Game cooperative_copy(const Game& game) {
  Game copy;
  for (StateId s = 0; s < game.size(); ++s) copy.add_state(game.name(s), Player::One, game.color(s));
  for (StateId s = 0; s < game.size(); ++s)
    for (auto t : game.successors(s)) copy.add_edge(s, t);
  return copy;
}

SolveResult solve_reachability(const Game& game, const StateSet& target) {
  auto attr = attractor(game, Player::One, target);
  return {Mode::Adversarial, attr.region, complete(game, attr.strategy.choice), std::nullopt};
}

SolveResult solve_safety(const Game& game, const StateSet& allowed) {
  StateSet bad(game.size(), false);
  for (StateId s = 0; s < game.size(); ++s) bad[s] = !allowed[s];
  auto trap = attractor(game, Player::Two, bad);
  StateSet region(game.size(), false);
  std::vector<StateId> choice(game.size(), kNoState);
  for (StateId s = 0; s < game.size(); ++s) region[s] = !trap.region[s];
  for (StateId s = 0; s < game.size(); ++s)
    if (region[s] && game.owner(s) == Player::One) choice[s] = lowest_in(game, s, region);
  return {Mode::Adversarial, region, complete(game, std::move(choice)), std::nullopt};
}

SolveResult solve_buchi(const Game& game, const StateSet& accepting) {
  const std::size_t n = game.size();
  StateSet win = all_states(game);
  AttractorResult reach;
  for (;;) {
    StateSet target(n, false);
    for (StateId s = 0; s < n; ++s) target[s] = win[s] && accepting[s];
    reach = attractor(game, Player::One, target, &win);
    auto trapped = minus(win, reach.region);
    if (empty(trapped)) break;
    auto lost = attractor(game, Player::Two, trapped, &win);
    win = minus(win, lost.region);
  }
  std::vector<StateId> choice(n, kNoState);
  for (StateId s = 0; s < n; ++s) {
    if (!win[s] || game.owner(s) != Player::One) continue;
    choice[s] = reach.strategy.choice[s] != kNoState ? reach.strategy.choice[s] : lowest_in(game, s, win);
  }
  return {Mode::Adversarial, win, complete(game, std::move(choice)), std::nullopt};
}

SolveResult solve_cobuchi(const Game& game, const StateSet& stable) {
  const std::size_t n = game.size();
  StateSet win(n, false);
  std::vector<StateId> choice(n, kNoState);
  for (;;) {
    auto attr = attractor(game, Player::One, win);
    for (StateId s = 0; s < n; ++s)
      if (attr.region[s] && !win[s] && attr.strategy.choice[s] != kNoState) choice[s] = attr.strategy.choice[s];
    StateSet bad(n, false);
    for (StateId s = 0; s < n; ++s) bad[s] = !attr.region[s] && !stable[s];
    auto doomed = attractor(game, Player::Two, bad);
    StateSet safe(n, false);
    for (StateId s = 0; s < n; ++s) safe[s] = !doomed.region[s];
    auto fresh = minus(safe, attr.region);
    if (empty(fresh)) {
      win = attr.region;
      break;
    }
    for (StateId s = 0; s < n; ++s)
      if (fresh[s] && game.owner(s) == Player::One) choice[s] = lowest_in(game, s, safe);
    win = safe;
  }
  return {Mode::Adversarial, win, complete(game, std::move(choice)), std::nullopt};
}

SolveResult solve_parity(const Game& game) {
  auto res = zielonka(game, all_states(game));
  std::vector<StateId> choice(game.size(), kNoState);
  for (StateId s = 0; s < game.size(); ++s)
    if (res.win1[s] && game.owner(s) == Player::One) choice[s] = res.choice1[s];
  return {Mode::Adversarial, res.win1, complete(game, std::move(choice)), std::nullopt};
}

StateSet solve_muller(const Game& game, const std::function<bool(const std::set<Color>&)>& wins) {
  return muller_rec(game, all_states(game), wins);
}

SolveResult solve(const Game& game, const Goal& goal, Mode mode) {
  const auto form = solver_form(goal);
  if (goal.kind() == Goal::Kind::First) {
    // Decided by the starting state alone; any strategy does.
    SolveResult r{mode, states_with(game, [&](Color c) { return c == goal.color(); }),
                  lowest_successor_strategy(game, Player::One), std::nullopt};
    if (mode == Mode::Cooperative) r.partner = lowest_successor_strategy(game, Player::Two);
    return r;
  }
  if (mode == Mode::Cooperative) {
    if (form.cls == SolverClass::Composite) return cooperative_composite(game, goal);
    return cooperative_by_copy(game, goal);
  }
  auto in = [&](Color c) { return form.colors.count(c) > 0; };
  switch (form.cls) {
    case SolverClass::Reachability: return solve_reachability(game, states_with(game, in));
    case SolverClass::Safety: return solve_safety(game, states_with(game, in));
    case SolverClass::Buchi: return solve_buchi(game, states_with(game, in));
    case SolverClass::CoBuchi: return solve_cobuchi(game, states_with(game, in));
    case SolverClass::Parity: return solve_parity(game);
    case SolverClass::Composite: break;
  }
  throw UnsupportedGoal("adversarial solving of composite goal " + goal.to_string() +
                        " is not supported; use the oracle for small games");
}

}  // namespace besteffort
