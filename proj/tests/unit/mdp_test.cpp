#include <doctest.h>

#include "besteffort/io.hpp"
#include "besteffort/mdp.hpp"
#include "besteffort/oracle.hpp"
#include "besteffort/product.hpp"
#include "random_games.hpp"

using namespace besteffort;
using testing::id;

namespace {

// Markov chain of a positional strategy against the uniform adversary.
std::vector<std::vector<StateId>> chain(const Game& g, const PositionalStrategy& sigma) {
  std::vector<std::vector<StateId>> next(g.size());
  for (StateId s = 0; s < g.size(); ++s) {
    if (g.owner(s) == Player::One) {
      next[s] = {sigma(s)};
    } else {
      next[s].assign(g.successors(s).begin(), g.successors(s).end());
    }
  }
  return next;
}

std::vector<bool> can_reach(const std::vector<std::vector<StateId>>& next, const std::vector<bool>& target) {
  auto seen = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < next.size(); ++s)
      if (!seen[s])
        for (auto t : next[s])
          if (seen[t]) {
            seen[s] = changed = true;
            break;
          }
  }
  return seen;
}

// Probability of reaching `target`, by Gaussian elimination over the
// states that can reach it.
std::vector<mpq_class> reach_probability(const std::vector<std::vector<StateId>>& next,
                                         const std::vector<bool>& target) {
  const auto n = next.size();
  const auto live = can_reach(next, target);
  std::vector<std::size_t> var(n, n);
  std::vector<std::size_t> unknown;
  for (std::size_t s = 0; s < n; ++s)
    if (live[s] && !target[s]) {
      var[s] = unknown.size();
      unknown.push_back(s);
    }
  const auto m = unknown.size();
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(m + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    const auto s = unknown[i];
    a[i][i] = 1;
    const mpq_class p(1, static_cast<unsigned long>(next[s].size()));
    for (auto t : next[s]) {
      if (target[t]) {
        a[i][m] += p;
      } else if (var[t] != n) {
        a[i][var[t]] -= p;
      }
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<mpq_class> x(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    if (target[s]) x[s] = 1;
  for (std::size_t i = 0; i < m; ++i) x[unknown[i]] = a[i][m] / a[i][i];
  return x;
}

// Winning probability of a positional strategy: reachability directly,
// limit goals through the bottom components of the chain.
std::vector<mpq_class> chain_value(const Game& g, const Goal& goal, const PositionalStrategy& sigma) {
  const auto next = chain(g, sigma);
  std::vector<bool> target(g.size());
  const auto form = solver_form(goal);
  if (form.cls == SolverClass::Reachability) {
    for (StateId s = 0; s < g.size(); ++s) target[s] = form.colors.count(g.color(s)) > 0;
    return reach_probability(next, target);
  }
  if (form.cls == SolverClass::Safety) {
    for (StateId s = 0; s < g.size(); ++s) target[s] = form.colors.count(g.color(s)) == 0;
    auto bad = reach_probability(next, target);
    for (auto& v : bad) v = 1 - v;
    return bad;
  }
  // Bottom SCCs: s is in one iff every state reachable from s reaches s back.
  std::vector<std::vector<bool>> reach(g.size());
  for (StateId s = 0; s < g.size(); ++s) {
    std::vector<bool> from(g.size());
    from[s] = true;
    std::vector<StateId> stack{s};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto t : next[u])
        if (!from[t]) {
          from[t] = true;
          stack.push_back(t);
        }
    }
    reach[s] = from;
  }
  for (StateId s = 0; s < g.size(); ++s) {
    bool bottom = true;
    std::set<Color> colors;
    for (StateId t = 0; t < g.size(); ++t) {
      if (!reach[s][t]) continue;
      if (!reach[t][s]) bottom = false;
      colors.insert(g.color(t));
    }
    if (bottom) target[s] = eval_limit(goal, colors);
  }
  return reach_probability(next, target);
}

std::vector<mpq_class> best_value(const Game& g, const Goal& goal) {
  StrategySpace space(g, Player::One);
  std::vector<mpq_class> best(g.size(), 0);
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    auto v = chain_value(g, goal, space.at(i));
    for (StateId s = 0; s < g.size(); ++s)
      if (v[s] > best[s]) best[s] = v[s];
  }
  return best;
}

Goal random_mdp_goal(std::mt19937& rng) {
  for (;;) {
    auto goal = testing::random_simple_goal(rng, 3);
    if (goal.kind() != Goal::Kind::First) return goal;
  }
}

}  // namespace

TEST_CASE("values on the fixtures") {
  auto four = testing::load_fixture("admissible_not_optimal.game");
  const auto& g = four.game;
  auto r = usg_value(g, four.goal, {UsgOptions::Method::Exact});
  REQUIRE(r.values.is_exact());
  CHECK(r.values.exact_at(id(g, "s0")) == mpq_class(1, 2));
  CHECK(r.values.to_string(id(g, "s0")) == "1/2");
  CHECK(r.strategy(id(g, "s0")) == id(g, "s1"));
  auto other = r.strategy;
  other.choice[id(g, "s0")] = id(g, "s2");
  CHECK(usg_evaluate(g, four.goal, other).exact_at(id(g, "s0")) == mpq_class(1, 3));
  CHECK(usg_evaluate(g, four.goal, other).exact_at(id(g, "s4")) == 1);

  auto two = testing::load_fixture("optimal_not_winning.game");
  r = usg_value(two.game, two.goal, {UsgOptions::Method::Exact});
  for (StateId s = 0; s < 3; ++s) CHECK(r.values.exact_at(s) == 1);
  for (auto t : {id(two.game, "s1"), id(two.game, "s2")}) {
    auto sigma = r.strategy;
    sigma.choice[id(two.game, "s0")] = t;
    CHECK(usg_evaluate(two.game, two.goal, sigma).exact_at(id(two.game, "s0")) == 1);
  }

  auto one = testing::load_fixture("keep_trying.game");
  r = usg_value(one.game, one.goal, {UsgOptions::Method::Exact});
  for (StateId s = 0; s < 3; ++s) CHECK(r.values.exact_at(s) == 0);
  auto keep = r.strategy;
  keep.choice[id(one.game, "s0")] = id(one.game, "s1");
  CHECK(usg_evaluate(one.game, one.goal, keep).exact_at(id(one.game, "s0")) == 0);

  auto composite = testing::load_fixture("count_twice.game");
  CHECK_THROWS_AS(usg_value(composite.game, composite.goal), UnsupportedGoal);
}

TEST_CASE("exact values match the best positional chain") {
  std::mt19937 rng(89);
  for (int round = 0; round < 200; ++round) {
    auto g = testing::random_game(rng, {6, 3, 3});
    const auto goal = random_mdp_goal(rng);
    auto r = usg_value(g, goal, {UsgOptions::Method::Exact});
    const auto best = best_value(g, goal);
    const auto achieved = chain_value(g, goal, r.strategy);
    for (StateId s = 0; s < g.size(); ++s) {
      CHECK_MESSAGE(r.values.exact_at(s) == best[s], goal.to_string());
      CHECK(achieved[s] == best[s]);
    }
    auto sigma = testing::random_positional(rng, g, Player::One);
    auto mine = usg_evaluate(g, goal, sigma, {UsgOptions::Method::Exact});
    const auto ref = chain_value(g, goal, sigma);
    for (StateId s = 0; s < g.size(); ++s) {
      CHECK(mine.exact_at(s) == ref[s]);
      CHECK(mine.exact_at(s) <= r.values.exact_at(s));
    }
  }
}

TEST_CASE("value iteration agrees with the exact solution") {
  std::mt19937 rng(97);
  for (int round = 0; round < 100; ++round) {
    auto g = testing::random_game(rng, {12, 3, 3});
    const auto goal = random_mdp_goal(rng);
    auto exact = usg_value(g, goal, {UsgOptions::Method::Exact});
    auto approx = usg_value(g, goal, {UsgOptions::Method::Iterative, 1e-9});
    CHECK_FALSE(approx.values.is_exact());
    for (StateId s = 0; s < g.size(); ++s) CHECK(std::abs(approx.values.at(s) - exact.values.at(s)) <= 1e-9);
  }
}

TEST_CASE("adversarially winning states have value 1") {
  std::mt19937 rng(101);
  for (int round = 0; round < 100; ++round) {
    auto g = testing::random_game(rng, {7, 3, 3});
    const auto goal = random_mdp_goal(rng);
    auto win = solve(g, goal, Mode::Adversarial).region;
    auto r = usg_value(g, goal);
    for (StateId s = 0; s < g.size(); ++s)
      if (win[s]) CHECK(r.values.exact_at(s) == 1);
  }
}

TEST_CASE("maximal end components") {
  auto one = testing::load_fixture("keep_trying.game");
  auto mecs = maximal_end_components(one.game);
  // {s0, s1} is not an end component: s1 may leave to s2 at random.
  REQUIRE(mecs.size() == 1);
  CHECK(mecs[0] == std::vector<StateId>{id(one.game, "s2")});

  auto five = testing::load_fixture("win_not_strongly.game");
  mecs = maximal_end_components(five.game);
  REQUIRE(mecs.size() == 1);
  CHECK(mecs[0].size() == 2);
}
