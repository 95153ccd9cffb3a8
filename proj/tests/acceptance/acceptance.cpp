// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "besteffort/criteria.hpp"
#include "besteffort/io.hpp"
#include "besteffort/mdp.hpp"
#include "besteffort/oracle.hpp"
#include "besteffort/solvers.hpp"
#include "random_games.hpp"

using namespace besteffort;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

StateId id(const Game& g, const std::string& name) {
  auto s = g.find(name);
  if (!s) throw Error("no state " + name);
  return *s;
}

PositionalStrategy with(const Game& g, std::initializer_list<std::pair<const char*, const char*>> moves) {
  auto out = lowest_successor_strategy(g, Player::One);
  for (auto [from, to] : moves) out.choice[id(g, from)] = id(g, to);
  return out;
}

bool holds(const CriterionResult& r) { return r.verdict == Verdict::Holds; }
bool fails(const CriterionResult& r) { return r.verdict == Verdict::Fails; }

std::string describe(const Game& g, const Goal& goal) { return "\n" + render_game(g, goal); }

// Winning-ness of a history decided on the game with a Player-2 copy of it
// grafted on, by enumerating positional strategies.
bool brute_history(const Game& game, const Goal& goal, const Path& history, Mode mode) {
  if (history.size() == 1) return brute_winning_region(game, goal, mode)[history[0]];
  auto d = detach(game, history);
  return brute_winning_region(d.game, goal, mode)[d.copies[0]];
}

bool consistent(const Game& game, const MemoryStrategy& sigma, const Path& path, std::size_t from) {
  if (!is_path(game, path)) return false;
  const auto mem = sigma.run(path);
  for (std::size_t i = from; i + 1 < path.size(); ++i)
    if (game.owner(path[i]) == Player::One && sigma.choice[mem[i]][path[i]] != path[i + 1]) return false;
  return true;
}

// The failure witness is a path, and history[..-1]·continuation is a
// σ-consistent (after the history) play refuting the goal.
bool replays(const Game& game, const Goal& goal, const MemoryStrategy& sigma, const CriterionResult& r) {
  if (!r.witness || r.witness->history.empty() || !is_path(game, r.witness->history)) return false;
  const auto& w = *r.witness;
  if (!w.continuation) return true;
  const auto& cont = *w.continuation;
  if (!is_lasso(game, cont) || cont.first() != w.history.back()) return false;
  Path play(w.history.begin(), w.history.end() - 1);
  play.insert(play.end(), cont.prefix.begin(), cont.prefix.end());
  if (eval_lasso(goal, game, Lasso{play, cont.cycle})) return false;
  Path unrolled = play;
  for (int k = 0; k < 3; ++k) unrolled.insert(unrolled.end(), cont.cycle.begin(), cont.cycle.end());
  return consistent(game, sigma, unrolled, w.history.size() - 1);
}

Game recolor(const Game& g, const std::function<Color(Color)>& f) {
  Game out;
  for (StateId s = 0; s < g.size(); ++s) out.add_state(g.name(s), g.owner(s), f(g.color(s)));
  for (StateId s = 0; s < g.size(); ++s)
    for (auto t : g.successors(s)) out.add_edge(s, t);
  return out;
}

Path random_path(std::mt19937& rng, const Game& g, std::size_t length) {
  Path p{static_cast<StateId>(std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng))};
  while (p.size() < length) {
    auto succ = g.successors(p.back());
    p.push_back(succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)]);
  }
  return p;
}

std::size_t draw(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Color draw_color(std::mt19937& rng, Color colors) {
  return static_cast<Color>(std::uniform_int_distribution<unsigned>(0, colors - 1)(rng));
}

// ---------------------------------------------------------------------------

void optimal_not_winning(Check& c) {
  auto f = testing::load_fixture("optimal_not_winning.game");
  const auto& g = f.game;
  const auto s0 = id(g, "s0"), s1 = id(g, "s1"), s2 = id(g, "s2");
  auto r = solve(g, f.goal, Mode::Adversarial);
  c.expect(r.region == make_set(3, {s0, s2}), "region is not {s0, s2}");
  c.expect(r.strategy(s0) == s2, "solver does not pick s0 -> s2");
  c.expect(brute_winning_region(g, f.goal, Mode::Adversarial) == r.region, "oracle region differs");
  StrategySpace space(g, Player::One);
  std::size_t winners = 0;
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    const auto sigma = space.at(i);
    const bool wins = holds(is_winning_strategy(g, f.goal, sigma));
    c.expect(wins == (sigma(s0) == s2), "winning verdict is not tied to the s0 -> s2 choice");
    // Independent: the s0 -> s1 strategy loses from s0 against some adversary.
    bool beaten = false;
    StrategySpace taus(g, Player::Two);
    for (std::uint64_t j = 0; j < taus.count(); ++j) beaten = beaten || !val(g, f.goal, sigma, taus.at(j), s0);
    c.expect(beaten == (sigma(s0) == s1), "oracle disagrees on the s0 choice");
    winners += wins;
  }
  c.expect(winners == 1, "winning choice is not unique");

  auto v = usg_value(g, f.goal, {UsgOptions::Method::Exact});
  for (StateId s = 0; s < g.size(); ++s) c.expect(v.values.exact_at(s) == 1, "value is not exactly 1");
  for (auto t : {s1, s2}) {
    auto sigma = v.strategy;
    sigma.choice[s0] = t;
    c.expect(usg_evaluate(g, f.goal, sigma, {UsgOptions::Method::Exact}).exact_at(s0) == 1,
             "an s0 choice is not optimal");
    c.expect(holds(is_optimal(g, f.goal, sigma)), "is_optimal rejects an optimal choice");
  }
}

void keep_trying(Check& c) {
  auto f = testing::load_fixture("keep_trying.game");
  const auto& g = f.game;
  c.expect(members(solve(g, f.goal, Mode::Adversarial).region).empty(), "adversarial region is not empty");
  c.expect(members(brute_winning_region(g, f.goal, Mode::Adversarial)).empty(), "oracle region is not empty");
  auto v = usg_value(g, f.goal, {UsgOptions::Method::Exact});
  for (StateId s = 0; s < g.size(); ++s) c.expect(v.values.exact_at(s) == 0, "value is not exactly 0");

  const auto to_s1 = with(g, {{"s0", "s1"}});
  const auto to_s2 = with(g, {{"s0", "s2"}});
  auto rel = dominance_matrix(g, f.goal);
  std::optional<std::size_t> i1, i2;
  for (std::size_t i = 0; i < rel.strategies.size(); ++i) {
    if (rel.strategies[i] == to_s1) i1 = i;
    if (rel.strategies[i] == to_s2) i2 = i;
  }
  c.expect(i1 && i2, "strategies missing from the dominance matrix");
  if (i1 && i2) {
    c.expect(rel.entry[*i1][*i2] == Dominance::Dominates, "s0 -> s1 does not dominate s0 -> s2");
    c.expect(rel.entry[*i2][*i1] == Dominance::Dominated, "matrix is not antisymmetric");
  }
  c.expect(holds(is_admissible(g, f.goal, to_s1)), "s0 -> s1 is not admissible");
  c.expect(fails(is_admissible(g, f.goal, to_s2)), "s0 -> s2 is admissible");
}

void count_twice(Check& c) {
  auto f = testing::load_fixture("count_twice.game");
  const auto& g = f.game;
  c.expect(brute_winning_region(g, f.goal, Mode::Adversarial) == make_set(g.size(), {id(g, "s0"), id(g, "s3")}),
           "oracle region is not {s0, s3}");
  StrategySpace space(g, Player::One);
  c.expect(space.count() > 0, "no positional strategies");
  for (std::uint64_t i = 0; i < space.count(); ++i)
    c.expect(fails(is_admissible(g, f.goal, space.at(i))), "a positional strategy is admissible");
  auto monitor = testing::load_strategy("count_twice_monitor.strat", f);
  c.expect(holds(is_admissible(g, f.goal, monitor)), "monitor strategy is not admissible");
}

void admissible_not_optimal(Check& c) {
  auto f = testing::load_fixture("admissible_not_optimal.game");
  const auto& g = f.game;
  const auto s0 = id(g, "s0");
  auto v = usg_value(g, f.goal, {UsgOptions::Method::Exact});
  c.expect(v.values.exact_at(s0) == mpq_class(1, 2), "value(s0) is not 1/2");
  c.expect(v.strategy(s0) == id(g, "s1"), "optimal move is not s0 -> s1");
  auto other = v.strategy;
  other.choice[s0] = id(g, "s2");
  c.expect(usg_evaluate(g, f.goal, other, {UsgOptions::Method::Exact}).exact_at(s0) == mpq_class(1, 3),
           "s0 -> s2 is not worth 1/3");
}

void win_not_strongly(Check& c) {
  auto f = testing::load_fixture("win_not_strongly.game");
  const auto& g = f.game;
  auto thick = testing::load_strategy("win_not_strongly_thick.strat", f);
  c.expect(holds(is_winning_strategy(g, f.goal, thick)), "thick strategy is not winning");
  auto sw = is_strongly_winning(g, f.goal, thick);
  c.expect(fails(sw), "thick strategy is strongly winning");
  c.expect(replays(g, f.goal, thick, sw), "strongly-winning witness does not replay");
  if (sw.witness)
    c.expect(brute_history(g, f.goal, sw.witness->history, Mode::Adversarial), "witness history is not winning");

  auto blocks = testing::load_strategy("win_not_strongly_blocks.strat", f);
  c.expect(holds(is_strongly_winning(g, f.goal, blocks)), "memory strategy is not strongly winning");
  auto sp = is_subgame_perfect(g, f.goal, blocks);
  c.expect(fails(sp), "memory strategy is subgame perfect");
  const Path expected{id(g, "s0"), id(g, "s1"), id(g, "s0"), id(g, "s1")};
  c.expect(sp.witness && sp.witness->history == expected, "subgame-perfect witness is not s0 s1 s0 s1");
  c.expect(replays(g, f.goal, blocks, sp), "subgame-perfect witness does not replay");
  c.expect(brute_history(g, f.goal, expected, Mode::Adversarial), "s0 s1 s0 s1 is not winning");
}

void cwin_not_cs(Check& c) {
  auto f = testing::load_fixture("cwin_not_cs.game");
  const auto& g = f.game;
  const auto region = make_set(g.size(), {id(g, "s0")});
  c.expect(solve(g, f.goal, Mode::Cooperative).region == region, "cooperative region is not {s0}");
  c.expect(brute_winning_region(g, f.goal, Mode::Cooperative) == region, "oracle cooperative region is not {s0}");

  auto positional = testing::load_strategy("cwin_not_cs_positional.strat", f);
  c.expect(holds(is_c_winning(g, f.goal, positional)), "positional strategy is not c-winning");
  auto cs = is_cs_winning(g, f.goal, positional);
  c.expect(fails(cs), "positional strategy is cs-winning");
  if (cs.witness)
    c.expect(brute_history(g, f.goal, cs.witness->history, Mode::Cooperative),
             "cs-winning witness is not cooperatively winning");

  auto memory = testing::load_strategy("cwin_not_cs_memory.strat", f);
  c.expect(holds(is_cs_winning(g, f.goal, memory)), "memory strategy is not cs-winning");
  auto cp = is_c_perfect(g, f.goal, memory);
  c.expect(fails(cp), "memory strategy is c-perfect");
  c.expect(cp.witness && cp.witness->history == Path{id(g, "s0"), id(g, "s2")}, "c-perfect witness is not s0 s2");
}

void perfect_needs_memory(Check& c) {
  auto f = testing::load_fixture("perfect_needs_memory.game");
  const auto& g = f.game;
  const auto sigma = with(g, {{"s0", "s1"}, {"s3", "s4"}});
  c.expect(holds(is_strongly_winning(g, f.goal, sigma)), "{s0->s1, s3->s4} is not strongly winning");
  StrategySpace space(g, Player::One);
  c.expect(space.count() == 4, "expected four positional strategies");
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    const auto tau = space.at(i);
    auto r = is_subgame_perfect(g, f.goal, tau);
    c.expect(fails(r), "a positional strategy is subgame perfect");
    c.expect(replays(g, f.goal, tau, r), "subgame-perfect witness does not replay");
  }
  auto memory = testing::load_strategy("perfect_needs_memory_memory.strat", f);
  c.expect(memory.memory_size == 2, "memory strategy does not have two memory states");
  c.expect(holds(is_subgame_perfect(g, f.goal, memory)), "memory strategy is not subgame perfect");
}

// Positional strategies winning (resp. c-winning) for a prefix-independent
// goal are strongly winning (resp. cs-winning).
void positional_is_strong(Check& c) {
  std::mt19937 rng(1001);
  for (int round = 0; round < 200; ++round) {
    const auto colors = static_cast<Color>(draw(rng, 2, 4));
    auto g = testing::random_game(rng, {draw(rng, 2, 8), 3, colors});
    const Color k = draw_color(rng, colors);
    for (const auto& goal : {Goal::buchi(k), Goal::cobuchi(k), Goal::parity()}) {
      const auto adv = solve(g, goal, Mode::Adversarial);
      c.expect(holds(is_winning_strategy(g, goal, adv.strategy)), "solver strategy is not winning" + describe(g, goal));
      c.expect(holds(is_strongly_winning(g, goal, adv.strategy)),
               "solver strategy is not strongly winning" + describe(g, goal));
      const auto coop = solve(g, goal, Mode::Cooperative);
      c.expect(holds(is_c_winning(g, goal, coop.strategy)), "cooperative strategy is not c-winning" + describe(g, goal));
      c.expect(holds(is_cs_winning(g, goal, coop.strategy)),
               "cooperative strategy is not cs-winning" + describe(g, goal));

      StrategySpace space(g, Player::One);
      if (space.count() > 64) continue;
      for (std::uint64_t i = 0; i < space.count(); ++i) {
        const auto sigma = space.at(i);
        const std::array<Criterion, 4> cs{Criterion::Winning, Criterion::StronglyWinning, Criterion::CWinning,
                                          Criterion::CsWinning};
        auto r = check_criteria(g, goal, sigma, cs);
        if (r.holds(Criterion::Winning))
          c.expect(r.holds(Criterion::StronglyWinning), "winning positional strategy is not strongly winning" +
                                                            describe(g, goal));
        if (r.holds(Criterion::CWinning))
          c.expect(r.holds(Criterion::CsWinning), "c-winning positional strategy is not cs-winning" +
                                                      describe(g, goal));
      }
    }
  }
}

void synthesis(Check& c) {
  std::mt19937 rng(1003);
  for (int round = 0; round < 200; ++round) {
    const auto colors = static_cast<Color>(draw(rng, 2, 4));
    auto g = testing::random_game(rng, {draw(rng, 2, 8), 2, colors});
    const Color k = draw_color(rng, colors);
    const Goal goals[] = {Goal::buchi(k), Goal::cobuchi(k), Goal::parity()};
    const auto& goal = goals[round % 3];
    auto s = synth_admissible(g, goal);
    c.expect(s.guaranteed, "synthesis not guaranteed for a prefix-independent goal");
    c.expect(holds(is_winning_strategy(g, goal, s.strategy)), "synthesized strategy is not winning" + describe(g, goal));
    c.expect(holds(is_c_winning(g, goal, s.strategy)), "synthesized strategy is not c-winning" + describe(g, goal));
    c.expect(holds(is_admissible(g, goal, s.strategy)), "synthesized strategy is not admissible" + describe(g, goal));
    const auto best = maximal_positional(g, goal);
    std::string moves;
    for (StateId x = 0; x < g.size(); ++x)
      if (g.owner(x) == Player::One) moves += " " + g.name(x) + "->" + g.name(s.strategy(x));
    c.expect(std::find(best.begin(), best.end(), s.strategy) != best.end(),
             "synthesized strategy" + moves + " is dominated by a positional strategy" + describe(g, goal));
  }
}

void oracle_equivalence(Check& c) {
  std::mt19937 rng(1005);
  for (int round = 0; round < 500; ++round) {
    const auto colors = static_cast<Color>(draw(rng, 2, 4));
    auto g = testing::random_game(rng, {draw(rng, 1, 6), static_cast<std::size_t>(2 + round % 2), colors});
    const Color k = draw_color(rng, colors);
    std::set<Color> allowed;
    for (Color x = 0; x < colors; ++x)
      if (rng() % 2) allowed.insert(x);
    if (allowed.empty()) allowed.insert(k);
    for (const auto& goal : {Goal::reach(k), Goal::safe(allowed), Goal::buchi(k), Goal::cobuchi(k), Goal::parity(),
                             Goal::first(k)}) {
      for (auto mode : {Mode::Adversarial, Mode::Cooperative}) {
        c.expect(brute_winning_region(g, goal, mode) == solve(g, goal, mode).region,
                 std::string("oracle and solver differ, ") + to_string(mode) + describe(g, goal));
      }
    }
    for (auto mode : {Mode::Adversarial, Mode::Cooperative}) {
      const auto& h = mode == Mode::Adversarial ? g : cooperative_copy(g);
      const auto buchi = recolor(h, [&](Color x) { return x == k ? 2u : 1u; });
      const auto cobuchi = recolor(h, [&](Color x) { return x == k ? 0u : 1u; });
      c.expect(solve(g, Goal::buchi(k), mode).region == solve_parity(buchi).region,
               "Büchi differs from its parity encoding" + describe(g, Goal::buchi(k)));
      c.expect(solve(g, Goal::cobuchi(k), mode).region == solve_parity(cobuchi).region,
               "co-Büchi differs from its parity encoding" + describe(g, Goal::cobuchi(k)));
    }
  }
}

// Implication chains, constructive existence, projection of winning
// configurations and one-step shrinking of winning histories.
void lemma_suites(Check& c) {
  struct Case {
    Game game;
    Goal goal;
    std::vector<MemoryStrategy> strategies;
  };
  std::vector<Case> corpus;
  const std::pair<const char*, std::vector<const char*>> fixtures[] = {
      {"keep_trying.game", {"keep_trying_s1.strat", "keep_trying_s2.strat"}},
      {"optimal_not_winning.game", {}},
      {"count_twice.game", {"count_twice_monitor.strat"}},
      {"admissible_not_optimal.game", {"admissible_not_optimal_s1.strat", "admissible_not_optimal_s2.strat"}},
      {"win_not_strongly.game",
       {"win_not_strongly_thick.strat", "win_not_strongly_blocks.strat", "win_not_strongly_literal.strat"}},
      {"cwin_not_cs.game", {"cwin_not_cs_positional.strat", "cwin_not_cs_memory.strat"}},
      {"perfect_needs_memory.game", {"perfect_needs_memory_positional.strat", "perfect_needs_memory_memory.strat"}},
  };
  for (const auto& [game, strats] : fixtures) {
    auto f = testing::load_fixture(game);
    Case k{f.game, f.goal, {}};
    for (const auto* s : strats) k.strategies.push_back(testing::load_strategy(s, f));
    StrategySpace space(f.game, Player::One);
    for (std::uint64_t i = 0; i < space.count() && i < 16; ++i) k.strategies.emplace_back(space.at(i));
    corpus.push_back(std::move(k));
  }
  std::mt19937 rng(1007);
  for (int round = 0; round < 150; ++round) {
    auto g = testing::random_game(rng, {draw(rng, 2, 6), 2, 3});
    const auto goal = round % 2 ? testing::random_goal(rng, 3, 2) : testing::random_simple_goal(rng, 3);
    Case k{g, goal, {}};
    for (int i = 0; i < 3; ++i) k.strategies.push_back(testing::random_strategy(rng, g, 1 + i % 2));
    corpus.push_back(std::move(k));
  }

  for (const auto& k : corpus) {
    const auto& g = k.game;
    const auto& goal = k.goal;
    const auto where = describe(g, goal);
    GoalAnalysis analysis(g, goal);
    std::vector<Path> witnesses;

    for (const auto& sigma : k.strategies) {
      auto r = check_criteria(g, goal, sigma);
      auto implies = [&](Criterion a, Criterion b) {
        c.expect(!r.holds(a) || r.holds(b), std::string(to_string(a)) + " without " + to_string(b) + where);
      };
      implies(Criterion::SubgamePerfect, Criterion::StronglyWinning);
      implies(Criterion::StronglyWinning, Criterion::Winning);
      implies(Criterion::CPerfect, Criterion::CsWinning);
      implies(Criterion::CsWinning, Criterion::CWinning);
      c.expect(r.holds(Criterion::Admissible) ==
                   (r.holds(Criterion::StronglyWinning) && r.holds(Criterion::CsWinning)),
               "admissible is not strongly winning and cs-winning" + where);
      for (const auto& res : r.results)
        if (res.verdict == Verdict::Fails && res.witness && res.criterion != Criterion::Optimal &&
            res.criterion != Criterion::Admissible)
          if (res.criterion == Criterion::Winning || res.criterion == Criterion::StronglyWinning ||
              res.criterion == Criterion::SubgamePerfect)
            witnesses.push_back(res.witness->history);
    }

    if (synthesis_supported(goal)) {
      auto s = synth_admissible(g, goal);
      auto r = check_criteria(g, goal, s.strategy);
      for (auto crit : {Criterion::Winning, Criterion::StronglyWinning, Criterion::CWinning, Criterion::CsWinning,
                        Criterion::Admissible})
        c.expect(r.holds(crit), std::string("synthesized strategy fails ") + to_string(crit) + where);
    }
    // Existence of a winning and a c-winning strategy, from the solvers.
    c.expect(holds(is_c_winning(g, goal, solve(g, goal, Mode::Cooperative).strategy)),
             "cooperative solve is not c-winning" + where);
    if (classify(goal).solver_class != SolverClass::Composite || goal.kind() == Goal::Kind::First)
      c.expect(holds(is_winning_strategy(g, goal, solve(g, goal, Mode::Adversarial).strategy)),
               "adversarial solve is not winning" + where);

    if (classify(goal).shrinkable == Tri::Yes) {
      const auto& p = analysis.product();
      const auto states = analysis.winning_states();
      for (NodeId n = 0; n < p.size(); ++n)
        if (analysis.node_winning(n))
          c.expect(states[p.node(n).state], "winning configuration over a losing state" + where);
    }

    for (int i = 0; i < 20; ++i) witnesses.push_back(random_path(rng, g, draw(rng, 2, 6)));
    for (const auto& h : witnesses) {
      if (h.size() < 2 || g.owner(h[h.size() - 2]) != Player::One || !analysis.winning(h)) continue;
      const Path prefix(h.begin(), h.end() - 1);
      c.expect(analysis.winning(prefix), "winning history with a losing one-step prefix" + where);
      if (solver_form(goal).cls != SolverClass::Composite && g.size() <= 6)
        c.expect(brute_history(g, goal, prefix, Mode::Adversarial), "oracle: one-step prefix is losing" + where);
    }
  }
}

void mdp_numerics(Check& c) {
  auto compare = [&](const Game& g, const Goal& goal, const std::string& where) {
    auto exact = usg_value(g, goal, {UsgOptions::Method::Exact});
    auto approx = usg_value(g, goal, {UsgOptions::Method::Iterative, 1e-9});
    for (StateId s = 0; s < g.size(); ++s)
      c.expect(std::abs(exact.values.at(s) - approx.values.at(s)) <= 1e-9, "values differ at " + g.name(s) + where);
  };
  for (const auto* name : {"keep_trying.game", "optimal_not_winning.game", "count_twice.game",
                           "admissible_not_optimal.game", "win_not_strongly.game", "cwin_not_cs.game",
                           "perfect_needs_memory.game"}) {
    auto f = testing::load_fixture(name);
    if (solver_form(f.goal).cls == SolverClass::Composite) continue;
    compare(f.game, f.goal, std::string(" in ") + name);
  }
  std::mt19937 rng(1009);
  for (int round = 0; round < 100; ++round) {
    const auto colors = static_cast<Color>(draw(rng, 2, 5));
    auto g = testing::random_game(rng, {draw(rng, 5, 50), 3, colors});
    const auto goal = Goal::reach(draw_color(rng, colors));
    compare(g, goal, describe(g, goal));
  }
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    void (*run)(Check&);
  };
  const Entry entries[] = {
      {"optimal strategies need not be winning", optimal_not_winning},
      {"all strategies have value 0, keeping trying dominates", keep_trying},
      {"count twice: no positional admissible strategy", count_twice},
      {"admissible but not optimal: value 1/2", admissible_not_optimal},
      {"winning but not strongly winning", win_not_strongly},
      {"c-winning but not cs-winning", cwin_not_cs},
      {"subgame perfection needs memory", perfect_needs_memory},
      {"positional winning strategies are strongly winning", positional_is_strong},
      {"three-step synthesis yields maximal admissible strategies", synthesis},
      {"oracle and solver regions coincide", oracle_equivalence},
      {"criterion implications and history lemmas", lemma_suites},
      {"exact and iterative MDP values agree", mdp_numerics},
  };
  int failed = 0;
  int number = 0;
  for (const auto& e : entries) {
    ++number;
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok() ? "PASS" : "FAIL") << ' ' << number << ". " << e.title << " (" << c.checks() << " checks, "
              << ms << " ms)\n";
    if (!c.ok()) {
      ++failed;
      std::cout << "  " << c.failed() << " failed checks, first ones:\n";
      for (const auto& f : c.failures()) {
        std::istringstream lines(f);
        for (std::string line; std::getline(lines, line);) std::cout << "    " << line << '\n';
      }
    }
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : 1;
}
