#include "besteffort/game.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace besteffort {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid game";
  for (const auto& issue : issues) {
    out += "; ";
    out += issue;
  }
  return out;
}

}  // namespace

InvalidGame::InvalidGame(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

StateId Game::add_state(std::string name, Player owner, Color color) {
  const auto id = static_cast<StateId>(states_.size());
  states_.push_back({owner, color});
  edges_.emplace_back();
  if (!by_name_.emplace(name, id).second) duplicate_names_.push_back(name);
  names_.push_back(std::move(name));
  return id;
}

void Game::add_edge(StateId from, StateId to) {
  if (from >= states_.size()) throw std::out_of_range("add_edge: unknown source state");
  auto& succ = edges_[from];
  succ.insert(std::upper_bound(succ.begin(), succ.end(), to), to);
}

bool Game::has_edge(StateId from, StateId to) const {
  const auto& succ = edges_[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::optional<StateId> Game::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<Color> Game::colors() const {
  std::set<Color> seen;
  for (const auto& st : states_) seen.insert(st.color);
  return {seen.begin(), seen.end()};
}

Color Game::max_color() const {
  Color m = 0;
  for (const auto& st : states_) m = std::max(m, st.color);
  return m;
}

bool operator==(const Game& a, const Game& b) {
  if (a.states_.size() != b.states_.size()) return false;
  for (std::size_t i = 0; i < a.states_.size(); ++i) {
    if (a.states_[i].owner != b.states_[i].owner || a.states_[i].color != b.states_[i].color)
      return false;
  }
  return a.edges_ == b.edges_ && a.names_ == b.names_;
}

std::vector<std::string> validate(const Game& game) {
  std::vector<std::string> issues;
  for (const auto& name : game.duplicate_names_) issues.push_back("duplicate state name " + name);
  std::vector<std::string> blocking;
  for (StateId s = 0; s < game.size(); ++s) {
    const auto& succ = game.edges_[s];
    if (succ.empty()) blocking.push_back(game.names_[s]);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (succ[i] >= game.size()) {
        issues.push_back("dangling edge from " + game.names_[s]);
      } else if (i > 0 && succ[i] == succ[i - 1]) {
        issues.push_back("duplicate edge " + game.names_[s] + " -> " + game.names_[succ[i]]);
      }
    }
  }
  if (!blocking.empty()) {
    std::string msg = "blocking state";
    for (std::size_t i = 0; i < blocking.size(); ++i) msg += (i ? ", " : " ") + blocking[i];
    issues.push_back(msg);
  }
  if (game.size() == 0) issues.push_back("game has no states");
  return issues;
}

void require_valid(const Game& game) {
  auto issues = validate(game);
  if (!issues.empty()) throw InvalidGame(std::move(issues));
}

bool is_path(const Game& game, std::span<const StateId> path) {
  if (path.empty()) return false;
  for (auto s : path)
    if (s >= game.size()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!game.has_edge(path[i], path[i + 1])) return false;
  return true;
}

bool is_lasso(const Game& game, const Lasso& lasso) {
  if (lasso.cycle.empty()) return false;
  Path unrolled = lasso.prefix;
  unrolled.insert(unrolled.end(), lasso.cycle.begin(), lasso.cycle.end());
  unrolled.push_back(lasso.cycle.front());
  return is_path(game, unrolled);
}

PositionalStrategy lowest_successor_strategy(const Game& game, Player owner) {
  PositionalStrategy strategy{owner, std::vector<StateId>(game.size(), kNoState)};
  for (StateId s = 0; s < game.size(); ++s)
    if (game.owner(s) == owner) strategy.choice[s] = game.successors(s).front();
  return strategy;
}

bool is_valid_strategy(const Game& game, const PositionalStrategy& strategy) {
  if (strategy.choice.size() != game.size()) return false;
  for (StateId s = 0; s < game.size(); ++s) {
    const StateId t = strategy.choice[s];
    if (game.owner(s) == strategy.owner) {
      if (t == kNoState || t >= game.size() || !game.has_edge(s, t)) return false;
    } else if (t != kNoState) {
      return false;
    }
  }
  return true;
}

Lasso outcome(const Game& game, StateId start, const PositionalStrategy& sigma,
              const PositionalStrategy& tau) {
  std::vector<std::size_t> seen_at(game.size(), static_cast<std::size_t>(-1));
  Path play;
  StateId s = start;
  while (seen_at[s] == static_cast<std::size_t>(-1)) {
    seen_at[s] = play.size();
    play.push_back(s);
    s = game.owner(s) == sigma.owner ? sigma(s) : tau(s);
  }
  const auto cut = static_cast<std::ptrdiff_t>(seen_at[s]);
  return Lasso{Path(play.begin(), play.begin() + cut), Path(play.begin() + cut, play.end())};
}

Detached detach(const Game& game, std::span<const StateId> path) {
  if (path.size() < 2 || !is_path(game, path))
    throw Error("detach: argument is not a path of at least two states");
  Detached out{game, {}};
  const std::size_t n = path.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = game.name(path[i]) + "'";
    while (out.game.find(name)) name += "'";
    out.copies.push_back(out.game.add_state(name, Player::Two, game.color(path[i])));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) out.game.add_edge(out.copies[i], out.copies[i + 1]);
  out.game.add_edge(out.copies[n - 1], path[n]);
  return out;
}

StateSet reachable(const Game& game, const StateSet& from, const PositionalStrategy* restriction) {
  StateSet seen(game.size(), false);
  std::deque<StateId> queue;
  for (StateId s = 0; s < game.size(); ++s) {
    if (from[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    auto visit = [&](StateId t) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    };
    if (restriction && game.owner(s) == restriction->owner) {
      visit(restriction->choice[s]);
    } else {
      for (auto t : game.successors(s)) visit(t);
    }
  }
  return seen;
}

StateSet make_set(std::size_t n, std::initializer_list<StateId> members) {
  StateSet set(n, false);
  for (auto s : members) set[s] = true;
  return set;
}

std::vector<StateId> members(const StateSet& set) {
  std::vector<StateId> out;
  for (StateId s = 0; s < set.size(); ++s)
    if (set[s]) out.push_back(s);
  return out;
}

std::string path_to_string(const Game& game, std::span<const StateId> path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ' ';
    out += game.name(path[i]);
  }
  return out;
}

}  // namespace besteffort
