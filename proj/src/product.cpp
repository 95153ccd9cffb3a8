#include "besteffort/product.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace besteffort {

MemoryStrategy::MemoryStrategy(const PositionalStrategy& sigma)
    : memory_size(1),
      initial(0),
      update{std::vector<MemoryId>(sigma.choice.size(), 0)},
      choice{sigma.choice},
      memory_names{"m0"} {}

PositionalStrategy MemoryStrategy::positional() const {
  if (!is_positional()) throw Error("strategy uses memory; no positional view");
  return {Player::One, choice[0]};
}

std::vector<MemoryId> MemoryStrategy::run(std::span<const StateId> path) const {
  std::vector<MemoryId> out;
  if (path.empty()) return out;
  MemoryId m = start(path[0]);
  out.push_back(m);
  for (std::size_t i = 1; i < path.size(); ++i) {
    m = update[m][path[i]];
    out.push_back(m);
  }
  return out;
}

MemoryStrategy monitor_strategy(const Game& game, const Monitor& monitor,
                                std::vector<std::vector<StateId>> choice) {
  MemoryStrategy out;
  out.memory_size = monitor.size();
  out.initial = monitor.initial();
  out.update.assign(monitor.size(), std::vector<MemoryId>(game.size(), 0));
  for (MemoryId m = 0; m < monitor.size(); ++m) {
    for (StateId s = 0; s < game.size(); ++s) out.update[m][s] = monitor.next(m, game.color(s));
    out.memory_names.push_back("q" + std::to_string(m));
  }
  out.choice = std::move(choice);
  out.choice.resize(monitor.size(), std::vector<StateId>(game.size(), kNoState));
  return out;
}

Product::Product(const Game& game, const Goal& goal, const MemoryStrategy* strategy)
    : game_(&game), monitor_(compile_monitor(goal, game.colors())) {
  if (strategy) strategy_ = *strategy;
  auto intern = [&](const ProductNode& key) {
    auto [it, inserted] = index_.emplace(key, static_cast<NodeId>(nodes_.size()));
    if (inserted) nodes_.push_back(key);
    return it->second;
  };
  for (StateId s = 0; s < game.size(); ++s)
    initial_.push_back(intern({s, strategy_ ? strategy_->start(s) : 0, monitor_.initial()}));
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    const auto cur = nodes_[n];
    const auto q = monitor_.next(cur.monitor, game.color(cur.state));
    std::vector<NodeId> row;
    for (auto t : game.successors(cur.state))
      row.push_back(intern({t, strategy_ ? strategy_->update[cur.memory][t] : 0, q}));
    succ_.push_back(std::move(row));
  }

  restricted_ = succ_;
  if (!strategy_) return;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    const auto& cur = nodes_[n];
    if (game.owner(cur.state) != Player::One) continue;
    const auto& names = strategy_->memory_names;
    const std::string where =
        game.name(cur.state) + (cur.memory < names.size() ? "@" + names[cur.memory] : std::string());
    StateId pick = cur.memory < strategy_->choice.size() ? strategy_->choice[cur.memory][cur.state] : kNoState;
    if (pick == kNoState) throw Error("strategy has no move at " + where);
    if (!game.has_edge(cur.state, pick))
      throw Error("strategy move " + where + " -> " + game.name(pick) + " is not an edge");
    restricted_[n] = {step(n, pick)};
  }
}

std::optional<NodeId> Product::find(const ProductNode& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Product::step(NodeId n, StateId t) const {
  for (auto m : succ_[n])
    if (nodes_[m].state == t) return m;
  throw Error("no edge " + game_->name(nodes_[n].state) + " -> " + game_->name(t));
}

NodeId Product::node_of(std::span<const StateId> path) const {
  if (path.empty()) throw Error("empty history");
  NodeId n = initial(path[0]);
  for (std::size_t i = 1; i < path.size(); ++i) n = step(n, path[i]);
  return n;
}

std::vector<StateId> Product::project(std::span<const NodeId> nodes) const {
  std::vector<StateId> out;
  for (auto n : nodes) out.push_back(nodes_[n].state);
  return out;
}

namespace {

std::vector<std::vector<NodeId>> tarjan(const std::vector<std::vector<NodeId>>& adj,
                                        const std::vector<NodeId>& roots, const std::vector<bool>* within) {
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> calls;
  std::vector<std::vector<NodeId>> out;
  int counter = 0;
  auto inside = [&](NodeId v) { return !within || (*within)[v]; };
  auto open = [&](NodeId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    calls.emplace_back(v, 0);
  };
  for (auto root : roots) {
    if (index[root] != -1 || !inside(root)) continue;
    open(root);
    while (!calls.empty()) {
      const NodeId v = calls.back().first;
      const std::size_t i = calls.back().second;
      if (i < adj[v].size()) {
        ++calls.back().second;
        const NodeId w = adj[v][i];
        if (!inside(w)) continue;
        if (index[w] == -1) {
          open(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      calls.pop_back();
      if (!calls.empty()) low[calls.back().first] = std::min(low[calls.back().first], low[v]);
    }
  }
  return out;
}

bool nontrivial(const std::vector<std::vector<NodeId>>& adj, const std::vector<NodeId>& comp) {
  if (comp.size() > 1) return true;
  const auto& succ = adj[comp.front()];
  return std::find(succ.begin(), succ.end(), comp.front()) != succ.end();
}

}  // namespace

std::vector<std::vector<NodeId>> strongly_connected(const std::vector<std::vector<NodeId>>& adj,
                                                    const std::vector<bool>* within) {
  std::vector<NodeId> roots(adj.size());
  for (NodeId v = 0; v < adj.size(); ++v) roots[v] = v;
  return tarjan(adj, roots, within);
}

LassoFinder::LassoFinder(const std::vector<std::vector<NodeId>>& adj, std::vector<Color> color,
                         std::vector<Goal> limit, bool want)
    : adj_(adj), color_(std::move(color)), limit_(std::move(limit)), want_(want) {
  const std::size_t n = adj_.size();
  anchor_of_.assign(n, -1);
  for (const auto& comp : strongly_connected(adj_))
    if (nontrivial(adj_, comp)) add_anchors(comp);

  std::vector<std::vector<NodeId>> pred(n);
  for (NodeId v = 0; v < n; ++v)
    for (auto w : adj_[v]) pred[w].push_back(v);
  found_.assign(n, false);
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    if (anchor_of_[v] >= 0) {
      found_[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto u : pred[v]) {
      if (!found_[u]) {
        found_[u] = true;
        queue.push_back(u);
      }
    }
  }
}

void LassoFinder::add_anchors(const std::vector<NodeId>& scc) {
  using K = Goal::Kind;
  Goal goal = limit_[scc.front()];
  bool want = want_;
  while (goal.kind() == K::Not) {
    goal = goal.operand();
    want = !want;
  }
  std::set<Color> present;
  for (auto v : scc) present.insert(color_[v]);

  auto add = [&](const std::vector<NodeId>& nodes) {
    Anchor anchor{nodes, {}};
    std::set<Color> cs;
    for (auto v : nodes) cs.insert(color_[v]);
    anchor.colors.assign(cs.begin(), cs.end());
    const int id = static_cast<int>(anchors_.size());
    for (auto v : nodes)
      if (anchor_of_[v] < 0) anchor_of_[v] = id;
    anchors_.push_back(std::move(anchor));
  };
  // Nontrivial sub-components using only colors accepted by `keep`.
  auto components = [&](auto keep) {
    std::vector<bool> within(adj_.size(), false);
    for (auto v : scc) within[v] = keep(color_[v]);
    std::vector<std::vector<NodeId>> out;
    for (auto& comp : tarjan(adj_, scc, &within))
      if (nontrivial(adj_, comp)) out.push_back(std::move(comp));
    return out;
  };

  switch (goal.kind()) {
    case K::True:
    case K::False:
      if ((goal.kind() == K::True) == want) add(scc);
      return;
    case K::Buchi:
    case K::CoBuchi: {
      const Color c = goal.color();
      // buchi wanted, or cobuchi refuted: some color of the cycle hits a set.
      if ((goal.kind() == K::Buchi) == want) {
        const bool hit = goal.kind() == K::Buchi ? present.count(c) > 0
                                                 : std::any_of(present.begin(), present.end(),
                                                               [&](Color x) { return x != c; });
        if (hit) add(scc);
        return;
      }
      const bool keep_c = goal.kind() == K::CoBuchi;
      for (const auto& comp : components([&](Color x) { return (x == c) == keep_c; })) add(comp);
      return;
    }
    case K::Parity: {
      for (auto it = present.rbegin(); it != present.rend(); ++it) {
        const Color e = *it;
        if ((e % 2 == 0) != want) continue;
        for (const auto& comp : components([&](Color x) { return x <= e; })) {
          if (std::any_of(comp.begin(), comp.end(), [&](NodeId v) { return color_[v] == e; })) add(comp);
        }
      }
      return;
    }
    default: break;
  }

  if (eval_limit(goal, present) == want) {
    add(scc);
    return;
  }
  const std::vector<Color> colors(present.begin(), present.end());
  if (colors.size() > 20)
    throw UnsupportedGoal("cycle search over " + std::to_string(colors.size()) + " colors is too large for " +
                          goal.to_string());
  const std::uint64_t full = (std::uint64_t{1} << colors.size()) - 1;
  for (std::uint64_t mask = full - 1; mask > 0; --mask) {
    std::set<Color> subset;
    for (std::size_t i = 0; i < colors.size(); ++i)
      if (mask >> i & 1) subset.insert(colors[i]);
    if (eval_limit(goal, subset) != want) continue;
    for (const auto& comp : components([&](Color x) { return subset.count(x) > 0; })) {
      std::set<Color> got;
      for (auto v : comp) got.insert(color_[v]);
      if (got == subset) {
        add(comp);
        return;
      }
    }
  }
}

std::vector<NodeId> LassoFinder::route(NodeId from, const std::vector<bool>& goal, const std::vector<bool>* within,
                                       bool nonempty) const {
  if (!nonempty && goal[from]) return {from};
  std::vector<NodeId> parent(adj_.size(), kNoState);
  std::vector<bool> seen(adj_.size(), false);
  std::deque<NodeId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : adj_[u]) {
      if (within && !(*within)[v]) continue;
      if (goal[v]) {
        std::vector<NodeId> path{v};
        for (NodeId x = u;; x = parent[x]) {
          path.push_back(x);
          if (x == from) break;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  throw Error("lasso search: target unreachable");
}

std::optional<std::pair<std::vector<NodeId>, std::vector<NodeId>>> LassoFinder::witness(NodeId n) const {
  if (!found_[n]) return std::nullopt;
  std::vector<bool> is_anchor(adj_.size(), false);
  for (NodeId v = 0; v < adj_.size(); ++v) is_anchor[v] = anchor_of_[v] >= 0;
  auto path = route(n, is_anchor, nullptr, false);
  const NodeId a = path.back();
  path.pop_back();
  const auto& anchor = anchors_[anchor_of_[a]];
  std::vector<bool> within(adj_.size(), false);
  for (auto v : anchor.nodes) within[v] = true;

  std::vector<NodeId> cycle{a};
  std::set<Color> seen{color_[a]};
  NodeId cur = a;
  for (auto c : anchor.colors) {
    if (seen.count(c)) continue;
    std::vector<bool> target(adj_.size(), false);
    for (auto v : anchor.nodes) target[v] = color_[v] == c;
    auto seg = route(cur, target, &within, false);
    for (std::size_t i = 1; i < seg.size(); ++i) {
      cycle.push_back(seg[i]);
      seen.insert(color_[seg[i]]);
    }
    cur = seg.back();
  }
  std::vector<bool> home(adj_.size(), false);
  home[a] = true;
  auto back = route(cur, home, &within, true);
  for (std::size_t i = 1; i + 1 < back.size(); ++i) cycle.push_back(back[i]);
  return std::make_pair(std::move(path), std::move(cycle));
}

namespace {

std::vector<Color> node_colors(const Product& p) {
  std::vector<Color> out;
  for (NodeId n = 0; n < p.size(); ++n) out.push_back(p.game().color(p.node(n).state));
  return out;
}

std::vector<Goal> node_limits(const Product& p) {
  std::vector<Goal> out;
  for (NodeId n = 0; n < p.size(); ++n) out.push_back(p.monitor().limit(p.node(n).monitor));
  return out;
}

Lasso to_lasso(const Product& p, const std::pair<std::vector<NodeId>, std::vector<NodeId>>& w) {
  return {p.project(w.first), p.project(w.second)};
}

struct Layer {
  std::vector<Player> owner;
  std::vector<Color> color;
  std::vector<std::vector<StateId>> edges;
  StateId win = 0;
  StateId lose = 0;

  Game build(const std::function<Color(StateId)>& recolor) const {
    Game g;
    for (StateId s = 0; s < owner.size(); ++s) g.add_state(std::to_string(s), owner[s], recolor(s));
    for (StateId s = 0; s < owner.size(); ++s)
      for (auto t : edges[s]) g.add_edge(s, t);
    return g;
  }
};

StateSet solve_layer(const Layer& layer, Goal goal) {
  using K = Goal::Kind;
  bool want = true;
  while (goal.kind() == K::Not) {
    goal = goal.operand();
    want = !want;
  }
  const std::size_t n = layer.owner.size();
  const auto plain = layer.build([&](StateId s) { return layer.color[s]; });
  auto marked = [&](const std::function<bool(Color)>& pred) {
    StateSet out(n, false);
    for (StateId s = 0; s < n; ++s) out[s] = s != layer.win && s != layer.lose && pred(layer.color[s]);
    out[layer.win] = true;
    return out;
  };
  Color top = 0;
  for (StateId s = 0; s < n; ++s)
    if (s != layer.win && s != layer.lose) top = std::max(top, layer.color[s]);

  switch (goal.kind()) {
    case K::True:
    case K::False: {
      if ((goal.kind() == K::True) == want) {
        StateSet allowed(n, true);
        allowed[layer.lose] = false;
        return solve_safety(plain, allowed).region;
      }
      return solve_reachability(plain, make_set(n, {layer.win})).region;
    }
    case K::Buchi:
    case K::CoBuchi: {
      const Color c = goal.color();
      const bool is_buchi = goal.kind() == K::Buchi;
      if (is_buchi == want) {
        // infinitely often a color matching the set
        return solve_buchi(plain, marked([&](Color x) { return is_buchi ? x == c : x != c; })).region;
      }
      return solve_cobuchi(plain, marked([&](Color x) { return is_buchi ? x != c : x == c; })).region;
    }
    case K::Parity: {
      const Color shift = want ? 0 : 1;
      Color win_color = top + shift + 1;
      if (win_color % 2) ++win_color;
      const auto g = layer.build([&](StateId s) {
        if (s == layer.win) return win_color;
        if (s == layer.lose) return win_color + 1;
        return layer.color[s] + shift;
      });
      return solve_parity(g).region;
    }
    default: break;
  }
  const Color win_color = top + 1;
  const Color lose_color = top + 2;
  const auto g = layer.build([&](StateId s) {
    if (s == layer.win) return win_color;
    if (s == layer.lose) return lose_color;
    return layer.color[s];
  });
  return solve_muller(g, [&](const std::set<Color>& inf) {
    if (inf.count(win_color)) return true;
    if (inf.count(lose_color)) return false;
    return eval_limit(goal, inf) == want;
  });
}

}  // namespace

std::vector<bool> adversarial_nodes(const Product& product) {
  const auto& mon = product.monitor();
  const auto& game = product.game();
  std::vector<std::vector<NodeId>> buckets(mon.size());
  for (NodeId n = 0; n < product.size(); ++n) buckets[product.node(n).monitor].push_back(n);

  std::vector<bool> win(product.size(), false);
  std::vector<StateId> local(product.size(), kNoState);
  auto order = mon.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& nodes = buckets[*it];
    if (nodes.empty()) continue;
    Layer layer;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      local[nodes[i]] = static_cast<StateId>(i);
      const auto s = product.node(nodes[i]).state;
      layer.owner.push_back(game.owner(s));
      layer.color.push_back(game.color(s));
    }
    layer.win = static_cast<StateId>(nodes.size());
    layer.lose = layer.win + 1;
    layer.owner.push_back(Player::One);
    layer.owner.push_back(Player::One);
    layer.color.push_back(0);
    layer.color.push_back(0);
    layer.edges.resize(nodes.size() + 2);
    layer.edges[layer.win] = {layer.win};
    layer.edges[layer.lose] = {layer.lose};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::set<StateId> targets;
      for (auto v : product.successors(nodes[i])) {
        if (product.node(v).monitor == *it) {
          targets.insert(local[v]);
        } else {
          targets.insert(win[v] ? layer.win : layer.lose);
        }
      }
      layer.edges[i].assign(targets.begin(), targets.end());
    }
    const auto region = solve_layer(layer, mon.limit(*it));
    for (std::size_t i = 0; i < nodes.size(); ++i) win[nodes[i]] = region[i];
  }
  return win;
}

GoalAnalysis::GoalAnalysis(const Game& game, const Goal& goal)
    : product_(game, goal),
      win_(adversarial_nodes(product_)),
      finder_(product_.full(), node_colors(product_), node_limits(product_), true) {}

bool GoalAnalysis::winning(std::span<const StateId> history) const { return win_[product_.node_of(history)]; }

bool GoalAnalysis::c_winning(std::span<const StateId> history) const {
  return finder_.found(product_.node_of(history));
}

bool GoalAnalysis::winning(const ProductNode& config) const {
  auto n = product_.find({config.state, 0, config.monitor});
  return n && win_[*n];
}

bool GoalAnalysis::c_winning(const ProductNode& config) const {
  auto n = product_.find({config.state, 0, config.monitor});
  return n && finder_.found(*n);
}

StateSet GoalAnalysis::winning_states() const {
  const auto& game = product_.game();
  StateSet out(game.size(), false);
  for (StateId s = 0; s < game.size(); ++s) out[s] = win_[product_.initial(s)];
  return out;
}

StateSet GoalAnalysis::c_winning_states() const {
  const auto& game = product_.game();
  StateSet out(game.size(), false);
  for (StateId s = 0; s < game.size(); ++s) out[s] = finder_.found(product_.initial(s));
  return out;
}

std::optional<Lasso> GoalAnalysis::c_witness(StateId s) const {
  auto w = finder_.witness(product_.initial(s));
  if (!w) return std::nullopt;
  return to_lasso(product_, *w);
}

namespace {

// Positional strategy assembled from one witness lasso per c-winning state,
// taken in the given order; earlier commitments of Player 1 are respected.
SolveResult assemble(const Game& game, const GoalAnalysis& analysis, const std::vector<StateId>& order) {
  const auto& p = analysis.product();
  const auto colors = node_colors(p);
  const auto limits = node_limits(p);
  std::vector<StateId> assigned(game.size(), kNoState);
  std::vector<StateId> partner_moves(game.size(), kNoState);

  SolveResult out;
  out.mode = Mode::Cooperative;
  out.region = analysis.c_winning_states();
  for (auto s : order) {
    std::vector<std::vector<NodeId>> adj(p.size());
    for (NodeId n = 0; n < p.size(); ++n) {
      const auto st = p.node(n).state;
      adj[n] = assigned[st] == kNoState ? p.successors(n) : std::vector<NodeId>{p.step(n, assigned[st])};
    }
    const LassoFinder finder(adj, colors, limits, true);
    auto w = finder.witness(p.initial(s));
    if (!w) continue;  // earlier commitments block every witness from s
    auto lasso = to_lasso(p, *w);
    std::vector<StateId> seq = lasso.prefix;
    seq.insert(seq.end(), lasso.cycle.begin(), lasso.cycle.end());
    seq.push_back(lasso.cycle.front());
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      auto& slot = game.owner(seq[i]) == Player::One ? assigned[seq[i]] : partner_moves[seq[i]];
      if (slot == kNoState) slot = seq[i + 1];
    }
  }

  out.strategy = PositionalStrategy{Player::One, std::vector<StateId>(game.size(), kNoState)};
  PositionalStrategy partner{Player::Two, std::vector<StateId>(game.size(), kNoState)};
  for (StateId s = 0; s < game.size(); ++s) {
    const bool mine = game.owner(s) == Player::One;
    const StateId pick = mine ? assigned[s] : partner_moves[s];
    (mine ? out.strategy : partner).choice[s] = pick != kNoState ? pick : game.successors(s).front();
  }
  out.partner = std::move(partner);
  return out;
}

bool c_winning_on_region(const Game& game, const Goal& goal, const SolveResult& r) {
  const MemoryStrategy sigma(r.strategy);
  const Product p(game, goal, &sigma);
  const LassoFinder finder(p.restricted(), node_colors(p), node_limits(p), true);
  for (StateId s = 0; s < game.size(); ++s)
    if (r.region[s] && !finder.found(p.initial(s))) return false;
  return true;
}

}  // namespace

SolveResult cooperative_composite(const Game& game, const Goal& goal) {
  const GoalAnalysis analysis(game, goal);
  const auto region = analysis.c_winning_states();

  // States deep in the game first, so that upstream witnesses can run into
  // the commitments made for them; plain index order as a second attempt.
  std::vector<StateId> by_depth = members(region);
  std::vector<std::size_t> reach(game.size(), 0);
  for (auto s : by_depth) reach[s] = members(reachable(game, make_set(game.size(), {s}))).size();
  std::stable_sort(by_depth.begin(), by_depth.end(), [&](StateId a, StateId b) { return reach[a] < reach[b]; });

  auto first = assemble(game, analysis, by_depth);
  if (c_winning_on_region(game, goal, first)) return first;
  auto second = assemble(game, analysis, members(region));
  if (c_winning_on_region(game, goal, second)) return second;
  return first;
}

}  // namespace besteffort
