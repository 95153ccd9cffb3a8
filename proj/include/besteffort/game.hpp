#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace besteffort {

using StateId = std::uint32_t;
using Color = std::uint32_t;

inline constexpr StateId kNoState = static_cast<StateId>(-1);

enum class Player : std::uint8_t { One = 1, Two = 2 };

inline Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGame : public Error {
 public:
  explicit InvalidGame(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct StateRecord {
  Player owner = Player::One;
  Color color = 0;
};

/// A finite two-player game graph with colored states.
///
/// States are dense indices; names live only in the name table. Successor
/// lists are kept sorted by index, which is what every "lowest index wins"
/// tie-break in the library relies on. A Game may be constructed in an
/// invalid shape (blocking states, dangling edges) so that validate() can
/// report on it; every algorithm assumes validate(game) is empty.
class Game {
 public:
  Game() = default;

  StateId add_state(std::string name, Player owner, Color color);
  void add_edge(StateId from, StateId to);

  std::size_t size() const { return states_.size(); }
  const StateRecord& state(StateId s) const { return states_[s]; }
  Player owner(StateId s) const { return states_[s].owner; }
  Color color(StateId s) const { return states_[s].color; }
  std::span<const StateId> successors(StateId s) const { return edges_[s]; }
  bool has_edge(StateId from, StateId to) const;

  const std::string& name(StateId s) const { return names_[s]; }
  std::optional<StateId> find(std::string_view name) const;

  /// Distinct colors in ascending order.
  std::vector<Color> colors() const;
  Color max_color() const;

  friend bool operator==(const Game& a, const Game& b);

 private:
  friend std::vector<std::string> validate(const Game& game);

  std::vector<StateRecord> states_;
  std::vector<std::vector<StateId>> edges_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> by_name_;
  std::vector<std::string> duplicate_names_;
};

/// Lists every violated game invariant; empty means valid.
std::vector<std::string> validate(const Game& game);

/// Throws InvalidGame when validate() reports anything.
void require_valid(const Game& game);

using Path = std::vector<StateId>;

bool is_path(const Game& game, std::span<const StateId> path);

/// Ultimately periodic play: prefix followed by cycle repeated forever.
struct Lasso {
  Path prefix;
  Path cycle;

  StateId first() const { return prefix.empty() ? cycle.front() : prefix.front(); }
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// prefix·cycle^ω is a valid infinite path of the game.
bool is_lasso(const Game& game, const Lasso& lasso);

/// Memoryless strategy: `choice[s]` is the successor picked at every state
/// owned by `owner`, kNoState elsewhere.
struct PositionalStrategy {
  Player owner = Player::One;
  std::vector<StateId> choice;

  StateId operator()(StateId s) const { return choice[s]; }
  friend bool operator==(const PositionalStrategy&, const PositionalStrategy&) = default;
};

/// Strategy for `owner` picking the lowest-index successor everywhere.
PositionalStrategy lowest_successor_strategy(const Game& game, Player owner);

/// True when the strategy is total on exactly its owner's states and uses
/// only game edges.
bool is_valid_strategy(const Game& game, const PositionalStrategy& strategy);

/// The unique play from `start` under two positional strategies, folded at
/// the first repeated state.
Lasso outcome(const Game& game, StateId start, const PositionalStrategy& sigma,
              const PositionalStrategy& tau);

struct Detached {
  Game game;
  /// copies[i] is the fresh state standing for path[i], i < path.size() - 1.
  std::vector<StateId> copies;
};

/// Grafts a fresh Player-2 copy of `path` onto the game: a chain of new
/// states s0'..s(n-1)' with the colors of s0..s(n-1), the last one feeding
/// into the original path end. The old part of the game is untouched.
Detached detach(const Game& game, std::span<const StateId> path);

using StateSet = std::vector<bool>;

/// Forward reachable set. With a restriction, states owned by the
/// restriction's player follow only the strategy's edge.
StateSet reachable(const Game& game, const StateSet& from,
                   const PositionalStrategy* restriction = nullptr);

StateSet make_set(std::size_t n, std::initializer_list<StateId> members);
std::vector<StateId> members(const StateSet& set);

std::string path_to_string(const Game& game, std::span<const StateId> path);

}  // namespace besteffort
