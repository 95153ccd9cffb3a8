#include "besteffort/mdp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>

#include "besteffort/product.hpp"
#include "besteffort/solvers.hpp"

namespace besteffort {

ValueVector ValueVector::exact(std::vector<mpq_class> values) {
  ValueVector out;
  out.exact_ = true;
  for (const auto& v : values) out.approx_.push_back(v.get_d());
  out.values_ = std::move(values);
  return out;
}

ValueVector ValueVector::approximate(std::vector<double> values, double tolerance) {
  ValueVector out;
  out.exact_ = false;
  out.tolerance_ = tolerance;
  out.approx_ = std::move(values);
  return out;
}

std::string ValueVector::to_string(StateId s) const {
  if (exact_) return values_[s].get_str();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, approx_[s]);
  return std::string(buf, res.ptr);
}

bool ValueVector::below(const ValueVector& other, StateId s) const {
  if (exact_ && other.exact_) return values_[s] < other.values_[s];
  const double slack = 10 * std::max(tolerance_, other.tolerance_);
  return approx_[s] < other.approx_[s] - slack;
}

namespace {

std::vector<std::vector<NodeId>> adjacency(const Game& game) {
  std::vector<std::vector<NodeId>> adj(game.size());
  for (StateId s = 0; s < game.size(); ++s) adj[s].assign(game.successors(s).begin(), game.successors(s).end());
  return adj;
}

}  // namespace

std::vector<std::vector<StateId>> maximal_end_components(const Game& game, const StateSet* within) {
  const auto adj = adjacency(game);
  std::vector<std::vector<StateId>> work;
  {
    std::vector<StateId> all;
    for (StateId s = 0; s < game.size(); ++s)
      if (!within || (*within)[s]) all.push_back(s);
    if (!all.empty()) work.push_back(std::move(all));
  }
  std::vector<std::vector<StateId>> out;
  std::vector<bool> in(game.size(), false);
  while (!work.empty()) {
    auto comp = std::move(work.back());
    work.pop_back();
    for (auto s : comp) in[s] = true;
    // Random states must keep all moves inside, Player-1 states one.
    bool pruned = false;
    for (bool changed = true; changed;) {
      changed = false;
      for (auto s : comp) {
        if (!in[s]) continue;
        const auto succ = game.successors(s);
        const bool keep = game.owner(s) == Player::Two
                              ? std::all_of(succ.begin(), succ.end(), [&](StateId t) { return in[t]; })
                              : std::any_of(succ.begin(), succ.end(), [&](StateId t) { return in[t]; });
        if (!keep) {
          in[s] = false;
          changed = pruned = true;
        }
      }
    }
    auto sccs = strongly_connected(adj, &in);
    for (auto s : comp) in[s] = false;
    for (auto& scc : sccs) {
      const bool cyclic = scc.size() > 1 || game.has_edge(scc.front(), scc.front());
      if (!cyclic) continue;
      if (!pruned && sccs.size() == 1) {
        out.push_back(std::move(scc));
      } else {
        work.push_back(std::move(scc));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Reduction {
  StateSet target;
  StateSet avoid;
  /// Player-1 moves inside the target that keep satisfying the goal.
  std::vector<StateId> inside;
};

// Inside an end component: move toward `goal` states (ranked by distance,
// Player-2 states count their best successor), stay inside at goal states.
void settle(const Game& game, const std::vector<StateId>& ec, const std::function<bool(StateId)>& goal,
            Reduction& red) {
  std::vector<bool> member(game.size(), false);
  for (auto s : ec) member[s] = true;
  std::vector<int> rank(game.size(), -1);
  for (auto s : ec)
    if (goal(s)) rank[s] = 0;
  for (int r = 1;; ++r) {
    std::vector<StateId> fresh;
    for (auto s : ec) {
      if (rank[s] >= 0) continue;
      for (auto t : game.successors(s))
        if (member[t] && rank[t] >= 0 && rank[t] < r) {
          fresh.push_back(s);
          break;
        }
    }
    if (fresh.empty()) break;
    for (auto s : fresh) rank[s] = r;
  }
  for (auto s : ec) {
    if (game.owner(s) != Player::One || red.inside[s] != kNoState) continue;
    StateId pick = kNoState;
    for (auto t : game.successors(s)) {
      if (!member[t]) continue;
      if (pick == kNoState || (rank[s] > 0 && rank[t] < rank[pick])) pick = t;
    }
    red.inside[s] = pick;
  }
  for (auto s : ec) red.target[s] = true;
}

Reduction reduce(const Game& game, const Goal& goal) {
  const std::size_t n = game.size();
  const auto form = solver_form(goal);
  Reduction red{StateSet(n, false), StateSet(n, false), std::vector<StateId>(n, kNoState)};
  auto with_colors = [&](const std::function<bool(Color)>& pred) {
    StateSet out(n, false);
    for (StateId s = 0; s < n; ++s) out[s] = pred(game.color(s));
    return out;
  };
  auto in_form = [&](Color c) { return form.colors.count(c) > 0; };
  auto any_goal = [](StateId) { return true; };

  switch (form.cls) {
    case SolverClass::Reachability:
      red.target = with_colors(in_form);
      break;
    case SolverClass::Safety: {
      const auto allowed = with_colors(in_form);
      for (StateId s = 0; s < n; ++s) red.avoid[s] = !allowed[s];
      for (const auto& ec : maximal_end_components(game, &allowed)) settle(game, ec, any_goal, red);
      break;
    }
    case SolverClass::Buchi: {
      const Color c = *form.colors.begin();
      for (const auto& ec : maximal_end_components(game)) {
        if (std::none_of(ec.begin(), ec.end(), [&](StateId s) { return game.color(s) == c; })) continue;
        settle(game, ec, [&](StateId s) { return game.color(s) == c; }, red);
      }
      break;
    }
    case SolverClass::CoBuchi: {
      const Color c = *form.colors.begin();
      const auto stable = with_colors([&](Color x) { return x == c; });
      for (const auto& ec : maximal_end_components(game, &stable)) settle(game, ec, any_goal, red);
      break;
    }
    case SolverClass::Parity: {
      const auto colors = game.colors();
      for (auto it = colors.rbegin(); it != colors.rend(); ++it) {
        const Color e = *it;
        if (e % 2) continue;
        const auto low = with_colors([&](Color x) { return x <= e; });
        for (const auto& ec : maximal_end_components(game, &low)) {
          if (std::none_of(ec.begin(), ec.end(), [&](StateId s) { return game.color(s) == e; })) continue;
          settle(game, ec, [&](StateId s) { return game.color(s) == e; }, red);
        }
      }
      break;
    }
    case SolverClass::Composite:
      throw UnsupportedGoal("stochastic values are not defined here for composite goal " + goal.to_string());
  }
  return red;
}

// States that can reach the target without entering `avoid`.
StateSet can_reach(const Game& game, const Reduction& red) {
  std::vector<std::vector<StateId>> pred(game.size());
  for (StateId s = 0; s < game.size(); ++s)
    for (auto t : game.successors(s)) pred[t].push_back(s);
  StateSet out = red.target;
  std::deque<StateId> queue;
  for (StateId s = 0; s < game.size(); ++s)
    if (out[s]) queue.push_back(s);
  while (!queue.empty()) {
    auto t = queue.front();
    queue.pop_front();
    for (auto s : pred[t]) {
      if (out[s] || red.avoid[s]) continue;
      out[s] = true;
      queue.push_back(s);
    }
  }
  return out;
}

// Solves (I - P) x = b over the unknown states; dense elimination on rationals.
std::vector<mpq_class> solve_linear(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("singular system in exact value computation");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const mpq_class inv = 1 / a[col][col];
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const mpq_class f = a[row][col];
      for (std::size_t k = col; k < n; ++k)
        if (a[col][k] != 0) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  return b;
}

// Graph distance to the target; Player-2 states take their nearest successor.
std::vector<int> distances(const Game& game, const StateSet& target, const StateSet& usable) {
  std::vector<int> dist(game.size(), -1);
  for (StateId s = 0; s < game.size(); ++s)
    if (target[s]) dist[s] = 0;
  for (int r = 1;; ++r) {
    std::vector<StateId> fresh;
    for (StateId s = 0; s < game.size(); ++s) {
      if (dist[s] >= 0 || !usable[s]) continue;
      for (auto t : game.successors(s))
        if (dist[t] >= 0 && dist[t] < r) {
          fresh.push_back(s);
          break;
        }
    }
    if (fresh.empty()) break;
    for (auto s : fresh) dist[s] = r;
  }
  return dist;
}

std::vector<mpq_class> exact_values(const Game& game, const Reduction& red, const StateSet& maybe) {
  const std::size_t n = game.size();
  std::vector<StateId> unknowns;
  std::vector<std::size_t> slot(n, 0);
  for (StateId s = 0; s < n; ++s) {
    if (!maybe[s]) continue;
    slot[s] = unknowns.size();
    unknowns.push_back(s);
  }
  std::vector<mpq_class> value(n, 0);
  for (StateId s = 0; s < n; ++s)
    if (red.target[s]) value[s] = 1;
  if (unknowns.empty()) return value;

  // Initial proper policy: follow the distance to the target.
  const auto dist = distances(game, red.target, maybe);
  std::vector<StateId> policy(n, kNoState);
  for (auto s : unknowns) {
    if (game.owner(s) != Player::One) continue;
    for (auto t : game.successors(s))
      if (dist[t] >= 0 && (policy[s] == kNoState || dist[t] < dist[policy[s]])) policy[s] = t;
  }

  for (;;) {
    const std::size_t m = unknowns.size();
    std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(m, 0));
    std::vector<mpq_class> b(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const StateId s = unknowns[i];
      a[i][i] = 1;
      std::vector<StateId> moves;
      if (game.owner(s) == Player::One) {
        moves.push_back(policy[s]);
      } else {
        moves.assign(game.successors(s).begin(), game.successors(s).end());
      }
      const mpq_class p(1, static_cast<unsigned long>(moves.size()));
      for (auto t : moves) {
        if (maybe[t]) {
          a[i][slot[t]] -= p;
        } else if (red.target[t]) {
          b[i] += p;
        }
      }
    }
    const auto x = solve_linear(std::move(a), std::move(b));
    for (std::size_t i = 0; i < m; ++i) value[unknowns[i]] = x[i];

    bool switched = false;
    for (auto s : unknowns) {
      if (game.owner(s) != Player::One) continue;
      StateId best = policy[s];
      for (auto t : game.successors(s))
        if (value[t] > value[best]) best = t;
      if (best != policy[s]) {
        policy[s] = best;
        switched = true;
      }
    }
    if (!switched) return value;
  }
}

std::vector<double> iterative_values(const Game& game, const Reduction& red, const StateSet& maybe, double tol) {
  const std::size_t n = game.size();
  std::vector<double> value(n, 0);
  for (StateId s = 0; s < n; ++s)
    if (red.target[s]) value[s] = 1;
  const double stop = tol * 1e-3;
  for (;;) {
    double delta = 0;
    for (StateId s = 0; s < n; ++s) {
      if (!maybe[s]) continue;
      const auto succ = game.successors(s);
      double v = 0;
      if (game.owner(s) == Player::One) {
        for (auto t : succ) v = std::max(v, value[t]);
      } else {
        for (auto t : succ) v += value[t];
        v /= static_cast<double>(succ.size());
      }
      delta = std::max(delta, std::abs(v - value[s]));
      value[s] = v;
    }
    if (delta <= stop) return value;
  }
}

// Value-preserving moves that make progress toward the target.
PositionalStrategy extract(const Game& game, const Reduction& red, const std::vector<double>& value,
                           const std::function<bool(StateId, StateId)>& same) {
  const std::size_t n = game.size();
  std::vector<int> rank(n, -1);
  for (StateId s = 0; s < n; ++s)
    if (red.target[s]) rank[s] = 0;
  auto optimal = [&](StateId s, StateId t) { return game.owner(s) == Player::Two || same(s, t); };
  for (int r = 1;; ++r) {
    std::vector<StateId> fresh;
    for (StateId s = 0; s < n; ++s) {
      if (rank[s] >= 0 || value[s] <= 0) continue;
      for (auto t : game.successors(s))
        if (rank[t] >= 0 && rank[t] < r && optimal(s, t)) {
          fresh.push_back(s);
          break;
        }
    }
    if (fresh.empty()) break;
    for (auto s : fresh) rank[s] = r;
  }

  PositionalStrategy sigma{Player::One, std::vector<StateId>(n, kNoState)};
  for (StateId s = 0; s < n; ++s) {
    if (game.owner(s) != Player::One) continue;
    const auto succ = game.successors(s);
    StateId pick = succ.front();
    if (red.target[s]) {
      if (red.inside[s] != kNoState) pick = red.inside[s];
    } else if (value[s] > 0) {
      int best = -1;
      for (auto t : succ) {
        if (!same(s, t) || rank[t] < 0) continue;
        if (best < 0 || rank[t] < best) {
          best = rank[t];
          pick = t;
        }
      }
    }
    sigma.choice[s] = pick;
  }
  return sigma;
}

bool use_exact(const Game& game, const UsgOptions& options) {
  switch (options.method) {
    case UsgOptions::Method::Exact: return true;
    case UsgOptions::Method::Iterative: return false;
    case UsgOptions::Method::Auto: break;
  }
  return game.size() <= options.exact_limit;
}

}  // namespace

UsgResult usg_value(const Game& game, const Goal& goal, const UsgOptions& options) {
  const auto red = reduce(game, goal);
  auto maybe = can_reach(game, red);
  for (StateId s = 0; s < game.size(); ++s) maybe[s] = maybe[s] && !red.target[s];

  if (use_exact(game, options)) {
    auto exact = exact_values(game, red, maybe);
    std::vector<double> approx;
    for (const auto& v : exact) approx.push_back(v.get_d());
    auto sigma = extract(game, red, approx, [&](StateId s, StateId t) {
      for (auto u : game.successors(s))
        if (exact[u] > exact[t]) return false;
      return true;
    });
    return {ValueVector::exact(std::move(exact)), std::move(sigma)};
  }
  auto approx = iterative_values(game, red, maybe, options.tolerance);
  const double slack = 10 * options.tolerance;
  auto sigma = extract(game, red, approx, [&](StateId s, StateId t) {
    double best = 0;
    for (auto u : game.successors(s)) best = std::max(best, approx[u]);
    return approx[t] >= best - slack;
  });
  return {ValueVector::approximate(std::move(approx), options.tolerance), std::move(sigma)};
}

ValueVector usg_evaluate(const Game& game, const Goal& goal, const PositionalStrategy& sigma,
                         const UsgOptions& options) {
  Game chain;
  for (StateId s = 0; s < game.size(); ++s) chain.add_state(game.name(s), game.owner(s), game.color(s));
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) == Player::One) {
      chain.add_edge(s, sigma.choice[s]);
    } else {
      for (auto t : game.successors(s)) chain.add_edge(s, t);
    }
  }
  return usg_value(chain, goal, options).values;
}

}  // namespace besteffort
