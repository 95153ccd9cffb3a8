#pragma once

#include <random>
#include <string>

#include "besteffort/game.hpp"
#include "besteffort/goal.hpp"
#include "besteffort/io.hpp"
#include "besteffort/product.hpp"

namespace testing {

struct RandomSpec {
  std::size_t states = 5;
  std::size_t max_out = 2;
  besteffort::Color colors = 3;
};

/// Non-blocking game with uniformly drawn owners, colors and successors.
besteffort::Game random_game(std::mt19937& rng, const RandomSpec& spec);

/// Random goal from the single-objective fragment over the colors [0, colors).
besteffort::Goal random_simple_goal(std::mt19937& rng, besteffort::Color colors);

/// Random goal including boolean combinations and counting.
besteffort::Goal random_goal(std::mt19937& rng, besteffort::Color colors, int depth = 2);

/// Random Moore-machine strategy for Player 1 with the given memory size.
besteffort::MemoryStrategy random_strategy(std::mt19937& rng, const besteffort::Game& game, std::size_t memories);

/// Random positional strategy for `owner`.
besteffort::PositionalStrategy random_positional(std::mt19937& rng, const besteffort::Game& game,
                                                 besteffort::Player owner);

std::string fixture(const std::string& name);
std::string read_fixture(const std::string& name);
besteffort::GameFile load_fixture(const std::string& name);
besteffort::MemoryStrategy load_strategy(const std::string& name, const besteffort::GameFile& file);

/// State id by name, failing the current test when absent.
besteffort::StateId id(const besteffort::Game& game, const std::string& name);

}  // namespace testing
