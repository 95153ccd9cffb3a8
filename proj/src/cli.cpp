#include "besteffort/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "besteffort/criteria.hpp"
#include "besteffort/io.hpp"
#include "besteffort/mdp.hpp"
#include "besteffort/oracle.hpp"
#include "besteffort/solvers.hpp"

namespace besteffort::cli {

namespace {

using json = nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GameFile load_game(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_game(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

MemoryStrategy load_strategy(const std::string& path, const GameFile& file) {
  const auto text = read_file(path);
  try {
    return parse_strategy(text, file.game, file.goal);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json names_json(const Game& game, const StateSet& set) {
  std::vector<std::string> names;
  for (StateId s = 0; s < game.size(); ++s)
    if (set[s]) names.push_back(game.name(s));
  std::sort(names.begin(), names.end());
  return names;
}

json path_json(const Game& game, std::span<const StateId> path) {
  json out = json::array();
  for (auto s : path) out.push_back(game.name(s));
  return out;
}

json strategy_json(const Game& game, const PositionalStrategy& sigma) {
  json out = json::object();
  for (StateId s = 0; s < game.size(); ++s)
    if (game.owner(s) == sigma.owner && sigma.choice[s] != kNoState) out[game.name(s)] = game.name(sigma.choice[s]);
  return out;
}

std::string set_text(const Game& game, const StateSet& set) {
  std::string out = "{";
  bool first = true;
  for (StateId s = 0; s < game.size(); ++s) {
    if (!set[s]) continue;
    out += (first ? "" : ", ") + game.name(s);
    first = false;
  }
  return out + "}";
}

void strategy_text(std::ostream& out, const Game& game, const PositionalStrategy& sigma, const std::string& indent) {
  for (StateId s = 0; s < game.size(); ++s)
    if (game.owner(s) == sigma.owner && sigma.choice[s] != kNoState)
      out << indent << game.name(s) << " -> " << game.name(sigma.choice[s]) << "\n";
}

json criterion_json(const Game& game, const CriterionResult& r) {
  json out = {{"verdict", to_string(r.verdict)}, {"vacuous", r.vacuous}};
  if (r.witness) {
    json w = {{"history", path_json(game, r.witness->history)}};
    if (r.witness->continuation)
      w["continuation"] = {{"prefix", path_json(game, r.witness->continuation->prefix)},
                           {"cycle", path_json(game, r.witness->continuation->cycle)}};
    out["witness"] = std::move(w);
  }
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

void criterion_text(std::ostream& out, const Game& game, const CriterionResult& r, const std::string& indent) {
  out << indent << to_string(r.criterion) << ": " << to_string(r.verdict);
  if (r.vacuous) out << " (vacuous)";
  if (!r.note.empty()) out << " (" << r.note << ")";
  out << "\n";
  if (!r.witness) return;
  out << indent << "  witness history: " << path_to_string(game, r.witness->history) << "\n";
  if (r.witness->continuation)
    out << indent << "  continuation: " << lasso_to_string(game, *r.witness->continuation) << "\n";
}

json envelope(const std::string& command, const std::string& path, const GameFile& file, json result) {
  return {{"version", kVersion},
          {"command", command},
          {"game", {{"path", path}, {"states", file.game.size()}, {"goal", file.goal.to_string()}}},
          {"result", std::move(result)}};
}

struct Options {
  std::string file;
  bool as_json = false;
  bool cooperative = false;
  bool force = false;
  std::string strategy;
  std::string criteria;
  bool exact = false;
  double tol = 0;
  std::string what;
  std::uint64_t budget = kDefaultBudget;
  std::string output;
};

int cmd_solve(const Options& o, std::ostream& out) {
  const auto file = load_game(o.file);
  const auto& game = file.game;
  const auto res = solve(game, file.goal, o.cooperative ? Mode::Cooperative : Mode::Adversarial);
  if (o.as_json) {
    json result = {{"mode", to_string(res.mode)},
                   {"region", names_json(game, res.region)},
                   {"strategy", strategy_json(game, res.strategy)}};
    if (res.partner) result["partner"] = strategy_json(game, *res.partner);
    out << envelope("solve", o.file, file, std::move(result)).dump(2) << "\n";
    return kOk;
  }
  out << "goal: " << file.goal.to_string() << "\n";
  out << "mode: " << to_string(res.mode) << "\n";
  out << "region: " << set_text(game, res.region) << "\n";
  out << "strategy:\n";
  strategy_text(out, game, res.strategy, "  ");
  if (res.partner) {
    out << "partner (Player 2):\n";
    strategy_text(out, game, *res.partner, "  ");
  }
  return kOk;
}

int cmd_admissible(const Options& o, std::ostream& out) {
  const auto file = load_game(o.file);
  const auto& game = file.game;
  const auto syn = synth_admissible(game, file.goal, o.force);
  if (o.as_json) {
    json verification = json::object();
    for (const auto& r : syn.verification.results) verification[to_string(r.criterion)] = criterion_json(game, r);
    json result = {{"guaranteed", syn.guaranteed},
                   {"strategy", strategy_json(game, syn.strategy)},
                   {"certificate",
                    {{"winning_region", names_json(game, syn.winning)},
                     {"winning_strategy", strategy_json(game, syn.winning_strategy)},
                     {"cooperative_region", names_json(game, syn.cooperative)}}},
                   {"verification", std::move(verification)}};
    out << envelope("admissible", o.file, file, std::move(result)).dump(2) << "\n";
    return kOk;
  }
  out << "goal: " << file.goal.to_string() << "\n";
  out << "precondition: " << (syn.guaranteed ? "satisfied" : "not satisfied (forced run, verdicts below are not guaranteed)")
      << "\n";
  out << "strategy:\n";
  strategy_text(out, game, syn.strategy, "  ");
  out << "certificate:\n";
  out << "  winning region: " << set_text(game, syn.winning) << "\n";
  out << "  winning strategy:\n";
  strategy_text(out, game, syn.winning_strategy, "    ");
  out << "  cooperative region of the pruned game: " << set_text(game, syn.cooperative) << "\n";
  out << "verification:\n";
  for (const auto& r : syn.verification.results) criterion_text(out, game, r, "  ");
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<Criterion> criteria;
  if (o.criteria.empty()) {
    criteria.assign(std::begin(kAllCriteria), std::end(kAllCriteria));
  } else {
    std::stringstream list(o.criteria);
    std::string item;
    while (std::getline(list, item, ',')) {
      auto c = parse_criterion(item);
      if (!c) {
        err << "unknown criterion '" << item << "'; known: winning, strongly-winning, subgame-perfect, c-winning, "
            << "cs-winning, c-perfect, admissible, optimal\n";
        return kUsage;
      }
      criteria.push_back(*c);
    }
  }
  const auto file = load_game(o.file);
  const auto& game = file.game;
  const auto sigma = load_strategy(o.strategy, file);
  const auto report = check_criteria(game, file.goal, sigma, criteria);
  if (o.as_json) {
    json results = json::object();
    for (const auto& r : report.results) results[to_string(r.criterion)] = criterion_json(game, r);
    json result = {{"strategy", {{"path", o.strategy}, {"memory", sigma.memory_size}}}, {"criteria", std::move(results)}};
    out << envelope("check", o.file, file, std::move(result)).dump(2) << "\n";
    return kOk;
  }
  out << "goal: " << file.goal.to_string() << "\n";
  out << "strategy: " << o.strategy << " (" << sigma.memory_size << (sigma.memory_size == 1 ? " memory state" : " memory states")
      << ")\n";
  for (const auto& r : report.results) criterion_text(out, game, r, "");
  return kOk;
}

int cmd_mdp(const Options& o, std::ostream& out) {
  const auto file = load_game(o.file);
  const auto& game = file.game;
  UsgOptions options;
  if (o.exact) options.method = UsgOptions::Method::Exact;
  if (o.tol > 0) {
    options.method = UsgOptions::Method::Iterative;
    options.tolerance = o.tol;
  }
  const auto res = usg_value(game, file.goal, options);
  const bool exact = res.values.is_exact();
  if (o.as_json) {
    json values = json::object();
    for (StateId s = 0; s < game.size(); ++s) {
      if (exact) {
        values[game.name(s)] = res.values.to_string(s);
      } else {
        values[game.name(s)] = res.values.at(s);
      }
    }
    json result = {{"method", exact ? "exact" : "iterative"},
                   {"values", std::move(values)},
                   {"strategy", strategy_json(game, res.strategy)}};
    if (!exact) result["tolerance"] = res.values.tolerance();
    out << envelope("mdp", o.file, file, std::move(result)).dump(2) << "\n";
    return kOk;
  }
  out << "goal: " << file.goal.to_string() << "\n";
  out << "method: " << (exact ? "exact" : "iterative") << "\n";
  out << "values (Player 2 uniform):\n";
  for (StateId s = 0; s < game.size(); ++s) out << "  " << game.name(s) << " " << res.values.to_string(s) << "\n";
  out << "optimal strategy:\n";
  strategy_text(out, game, res.strategy, "  ");
  return kOk;
}

std::string compact(const Game& game, const PositionalStrategy& sigma) {
  std::string out;
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) != sigma.owner) continue;
    out += (out.empty() ? "" : ", ") + game.name(s) + "->" + game.name(sigma.choice[s]);
  }
  return out.empty() ? "(no choices)" : out;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const auto file = load_game(o.file);
  const auto& game = file.game;
  const std::string scope = DominanceRelation::kScope;
  json result = {{"scope", scope}, {"what", o.what}};
  std::ostringstream text;
  text << "goal: " << file.goal.to_string() << "\n";
  text << "scope: positional Player-1 strategies against " << scope << "\n";
  if (o.what == "region") {
    const auto adv = brute_winning_region(game, file.goal, Mode::Adversarial, o.budget);
    const auto coop = brute_winning_region(game, file.goal, Mode::Cooperative, o.budget);
    result["adversarial"] = names_json(game, adv);
    result["cooperative"] = names_json(game, coop);
    text << "winning region: " << set_text(game, adv) << "\n";
    text << "cooperative region: " << set_text(game, coop) << "\n";
  } else if (o.what == "dominance") {
    const auto rel = dominance_matrix(game, file.goal, o.budget);
    json strategies = json::array();
    json pairs = json::array();
    for (std::size_t i = 0; i < rel.strategies.size(); ++i) {
      strategies.push_back(strategy_json(game, rel.strategies[i]));
      text << "#" << i << ": " << compact(game, rel.strategies[i]) << "\n";
    }
    for (std::size_t i = 0; i < rel.strategies.size(); ++i)
      for (std::size_t j = 0; j < rel.strategies.size(); ++j)
        if (rel.dominates(i, j)) {
          pairs.push_back({i, j});
          text << "#" << i << " dominates #" << j << "\n";
        }
    result["strategies"] = std::move(strategies);
    result["dominates"] = std::move(pairs);
  } else {
    const auto best = maximal_positional(game, file.goal, o.budget);
    json list = json::array();
    text << "maximal strategies:\n";
    for (const auto& sigma : best) {
      list.push_back(strategy_json(game, sigma));
      text << "  " << compact(game, sigma) << "\n";
    }
    result["maximal"] = std::move(list);
  }
  if (o.as_json) {
    out << envelope("oracle", o.file, file, std::move(result)).dump(2) << "\n";
  } else {
    out << text.str();
  }
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto file = load_game(o.file);
  const auto cls = classify(file.goal);
  if (o.as_json) {
    json result = {{"shrinkable", to_string(cls.shrinkable)},
                   {"extensible", to_string(cls.extensible)},
                   {"prefix_independent", to_string(cls.prefix_independent)},
                   {"solver_class", to_string(cls.solver_class)}};
    out << envelope("classify", o.file, file, std::move(result)).dump(2) << "\n";
    return kOk;
  }
  out << "goal: " << file.goal.to_string() << "\n";
  out << "shrinkable: " << to_string(cls.shrinkable) << "\n";
  out << "extensible: " << to_string(cls.extensible) << "\n";
  out << "prefix-independent: " << to_string(cls.prefix_independent) << "\n";
  out << "solver class: " << to_string(cls.solver_class) << "\n";
  return kOk;
}

int cmd_dot(const Options& o, std::ostream& out) {
  const auto file = load_game(o.file);
  const auto text = to_dot(file.game, &file.goal);
  if (o.output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f || !(f << text)) throw InputError("cannot write " + o.output);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Winning, cooperative and admissible strategies for two-player games on colored graphs.\n"
               "Parity goals use the max-even convention.",
               "besteffort"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "game file")->required(); };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.as_json, "machine-readable output"); };

  auto* solve_cmd = app.add_subcommand("solve", "winning region and a positional strategy");
  file_arg(solve_cmd);
  solve_cmd->add_flag("--cooperative", o.cooperative, "let Player 2 cooperate");
  json_flag(solve_cmd);

  auto* adm_cmd = app.add_subcommand("admissible", "synthesize a positional admissible strategy");
  file_arg(adm_cmd);
  adm_cmd->add_flag("--force", o.force, "run even when the goal is outside the proven class");
  json_flag(adm_cmd);

  auto* check_cmd = app.add_subcommand("check", "decide the winning criteria for a strategy");
  file_arg(check_cmd);
  check_cmd->add_option("--strategy", o.strategy, "strategy file")->required();
  check_cmd->add_option("--criteria", o.criteria, "comma-separated subset of the criteria");
  json_flag(check_cmd);

  auto* mdp_cmd = app.add_subcommand("mdp", "winning probabilities against a uniformly random Player 2");
  file_arg(mdp_cmd);
  auto* exact_opt = mdp_cmd->add_flag("--exact", o.exact, "exact rational values");
  auto* tol_opt = mdp_cmd->add_option("--tol", o.tol, "value iteration with this tolerance")->check(CLI::PositiveNumber);
  exact_opt->excludes(tol_opt);
  json_flag(mdp_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute force over positional strategies");
  file_arg(oracle_cmd);
  oracle_cmd->add_option("--what", o.what, "region, dominance or maximal")
      ->required()
      ->check(CLI::IsMember({"region", "dominance", "maximal"}));
  oracle_cmd->add_option("--budget", o.budget, "maximal number of play evaluations");
  json_flag(oracle_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "structural goal classification");
  file_arg(classify_cmd);
  json_flag(classify_cmd);

  auto* dot_cmd = app.add_subcommand("dot", "GraphViz rendering");
  file_arg(dot_cmd);
  dot_cmd->add_option("-o", o.output, "output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "besteffort: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (app.got_subcommand(solve_cmd)) return cmd_solve(o, out);
    if (app.got_subcommand(adm_cmd)) return cmd_admissible(o, out);
    if (app.got_subcommand(check_cmd)) return cmd_check(o, out, err);
    if (app.got_subcommand(mdp_cmd)) return cmd_mdp(o, out);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(o, out);
    if (app.got_subcommand(classify_cmd)) return cmd_classify(o, out);
    if (app.got_subcommand(dot_cmd)) return cmd_dot(o, out);
  } catch (const PreconditionViolation& e) {
    err << "besteffort: precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const UnsupportedGoal& e) {
    err << "besteffort: unsupported: " << e.what() << "\n";
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "besteffort: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << "besteffort: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace besteffort::cli
