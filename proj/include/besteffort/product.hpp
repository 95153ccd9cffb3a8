#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"
#include "besteffort/monitor.hpp"
#include "besteffort/solvers.hpp"

namespace besteffort {

/// Finite-memory Player-1 strategy as a Moore machine over states.
///
/// The memory is updated on entering a state: after the history s0..sk the
/// machine is in update(..update(start(s0), s1).., sk) and plays
/// choice[m][sk]. A positional strategy is the one-memory case.
struct MemoryStrategy {
  std::size_t memory_size = 1;
  MemoryId initial = 0;
  /// update[m][s]: memory after entering s with memory m.
  std::vector<std::vector<MemoryId>> update;
  /// choice[m][s] for Player-1 states; kNoState where undefined.
  std::vector<std::vector<StateId>> choice;
  std::vector<std::string> memory_names;

  MemoryStrategy() = default;
  // Implicit on purpose: every criterion accepts positional strategies.
  MemoryStrategy(const PositionalStrategy& sigma);  // NOLINT

  MemoryId start(StateId s) const { return update[initial][s]; }
  bool is_positional() const { return memory_size == 1; }
  /// The strategy itself when memoryless.
  PositionalStrategy positional() const;
  /// Memory after each prefix of `path`.
  std::vector<MemoryId> run(std::span<const StateId> path) const;
};

/// Memory that follows the goal monitor (memory = monitor state after
/// reading the colors of the history, current state included).
MemoryStrategy monitor_strategy(const Game& game, const Monitor& monitor,
                                std::vector<std::vector<StateId>> choice);

using NodeId = std::uint32_t;

struct ProductNode {
  StateId state;
  MemoryId memory;   // strategy memory, history included
  MemoryId monitor;  // goal monitor, history excluded: residual(monitor) applies from `state` on
  friend auto operator<=>(const ProductNode&, const ProductNode&) = default;
};

/// Game × strategy memory × goal monitor, restricted to configurations
/// reachable from the length-1 histories. Every history ρ of the game maps
/// to one node; ρ is winning iff residual(node.monitor) is winnable from
/// node.state, which turns path quantifiers into node quantifiers.
class Product {
 public:
  Product(const Game& game, const Goal& goal, const MemoryStrategy* strategy = nullptr);

  const Game& game() const { return *game_; }
  const Monitor& monitor() const { return monitor_; }
  bool has_strategy() const { return strategy_.has_value(); }

  std::size_t size() const { return nodes_.size(); }
  const ProductNode& node(NodeId n) const { return nodes_[n]; }
  std::optional<NodeId> find(const ProductNode& key) const;
  NodeId initial(StateId s) const { return initial_[s]; }
  /// All moves (both players unrestricted).
  const std::vector<NodeId>& successors(NodeId n) const { return succ_[n]; }
  /// Node reached by moving along edge node.state -> t.
  NodeId step(NodeId n, StateId t) const;
  /// Player-1 nodes follow the strategy, Player-2 nodes keep every move.
  const std::vector<std::vector<NodeId>>& restricted() const { return restricted_; }
  const std::vector<std::vector<NodeId>>& full() const { return succ_; }

  /// Node of the history (in the given product), or throws if `path` is not a path.
  NodeId node_of(std::span<const StateId> path) const;
  std::vector<StateId> project(std::span<const NodeId> nodes) const;

 private:
  const Game* game_;
  Monitor monitor_;
  std::optional<MemoryStrategy> strategy_;
  std::vector<ProductNode> nodes_;
  std::map<ProductNode, NodeId> index_;
  std::vector<NodeId> initial_;
  std::vector<std::vector<NodeId>> succ_;
  std::vector<std::vector<NodeId>> restricted_;
};

/// Searches for lassos whose limit verdict (per-node limit goal applied to
/// the cycle colors) equals `want`, in a graph given by adjacency lists.
class LassoFinder {
 public:
  LassoFinder(const std::vector<std::vector<NodeId>>& adj, std::vector<Color> color,
              std::vector<Goal> limit, bool want);

  bool found(NodeId n) const { return found_[n]; }
  const std::vector<bool>& region() const { return found_; }
  /// Shortest route to a good cycle plus a cycle covering it; node lists.
  std::optional<std::pair<std::vector<NodeId>, std::vector<NodeId>>> witness(NodeId n) const;

 private:
  struct Anchor {
    std::vector<NodeId> nodes;
    std::vector<Color> colors;
  };
  void add_anchors(const std::vector<NodeId>& scc);
  std::vector<NodeId> route(NodeId from, const std::vector<bool>& goal, const std::vector<bool>* within,
                            bool nonempty) const;

  std::vector<std::vector<NodeId>> adj_;
  std::vector<Color> color_;
  std::vector<Goal> limit_;
  bool want_;
  std::vector<Anchor> anchors_;
  std::vector<int> anchor_of_;
  std::vector<bool> found_;
};

/// Strongly connected components (Tarjan), restricted to `within` when given.
/// Components are listed in reverse topological order.
std::vector<std::vector<NodeId>> strongly_connected(const std::vector<std::vector<NodeId>>& adj,
                                                    const std::vector<bool>* within = nullptr);

/// Winning and cooperatively winning histories of a game for a goal.
class GoalAnalysis {
 public:
  GoalAnalysis(const Game& game, const Goal& goal);

  const Product& product() const { return product_; }
  bool node_winning(NodeId n) const { return win_[n]; }
  bool node_c_winning(NodeId n) const { return finder_.found(n); }
  bool winning(std::span<const StateId> history) const;
  bool c_winning(std::span<const StateId> history) const;
  bool winning(const ProductNode& config) const;
  bool c_winning(const ProductNode& config) const;
  /// Winning / cooperatively winning states.
  StateSet winning_states() const;
  StateSet c_winning_states() const;
  /// A cooperative witness play from the state, as a game lasso.
  std::optional<Lasso> c_witness(StateId s) const;

 private:
  Product product_;
  std::vector<bool> win_;
  LassoFinder finder_;
};

/// Winning configurations of the product (strategy memory ignored), solved
/// layer by layer along the monitor order.
std::vector<bool> adversarial_nodes(const Product& product);

/// Cooperative solve for goals outside the fixpoint classes: region from the
/// product search, strategy assembled from one witness lasso per state.
SolveResult cooperative_composite(const Game& game, const Goal& goal);

}  // namespace besteffort
