#include "besteffort/goal.hpp"

#include <algorithm>
#include <iterator>
#include <optional>

namespace besteffort {

Goal Goal::make(Node node) { return Goal(std::make_shared<const Node>(std::move(node))); }

Goal Goal::truth(bool value) { return make({value ? Kind::True : Kind::False}); }
Goal Goal::first(Color c) { return make({Kind::First, c}); }
Goal Goal::ev(Color c) { return make({Kind::Ev, c}); }
Goal Goal::safe(std::set<Color> allowed) { return make({Kind::Safe, 0, 0, std::move(allowed)}); }
Goal Goal::buchi(Color c) { return make({Kind::Buchi, c}); }
Goal Goal::cobuchi(Color c) { return make({Kind::CoBuchi, c}); }
Goal Goal::parity() { return make({Kind::Parity}); }

Goal Goal::count(Color c, unsigned k) {
  if (k == 0) throw Error("count() needs a bound of at least 1");
  return make({Kind::Count, c, k});
}

Goal Goal::conj(Goal a, Goal b) { return make({Kind::And, 0, 0, {}, {std::move(a), std::move(b)}}); }
Goal Goal::disj(Goal a, Goal b) { return make({Kind::Or, 0, 0, {}, {std::move(a), std::move(b)}}); }
Goal Goal::negate(Goal a) { return make({Kind::Not, 0, 0, {}, {std::move(a)}}); }

bool Goal::is_atom() const {
  auto k = kind();
  return k != Kind::And && k != Kind::Or && k != Kind::Not;
}

std::string Goal::to_string() const {
  const auto c = std::to_string(color());
  switch (kind()) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::First: return "first(" + c + ")";
    case Kind::Ev: return "ev(" + c + ")";
    case Kind::Buchi: return "buchi(" + c + ")";
    case Kind::CoBuchi: return "cobuchi(" + c + ")";
    case Kind::Parity: return "parity";
    case Kind::Count: return "count(" + c + "," + std::to_string(bound()) + ")";
    case Kind::Safe: {
      std::string out = "safe(";
      bool first_item = true;
      for (auto a : allowed()) {
        if (!first_item) out += ',';
        out += std::to_string(a);
        first_item = false;
      }
      return out + ")";
    }
    case Kind::And: return "and(" + lhs().to_string() + "," + rhs().to_string() + ")";
    case Kind::Or: return "or(" + lhs().to_string() + "," + rhs().to_string() + ")";
    case Kind::Not: return "not(" + operand().to_string() + ")";
  }
  return {};
}

std::strong_ordering operator<=>(const Goal& a, const Goal& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.color() <=> b.color(); c != 0) return c;
  if (auto c = a.bound() <=> b.bound(); c != 0) return c;
  if (auto c = a.allowed() <=> b.allowed(); c != 0) return c;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  if (auto c = ca.size() <=> cb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (auto c = ca[i] <=> cb[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

bool operator==(const Goal& a, const Goal& b) { return (a <=> b) == 0; }

ColorLasso colors_of(const Game& game, const Lasso& lasso) {
  ColorLasso word;
  for (auto s : lasso.prefix) word.prefix.push_back(game.color(s));
  for (auto s : lasso.cycle) word.cycle.push_back(game.color(s));
  return word;
}

namespace {

bool contains(const std::vector<Color>& v, Color c) { return std::find(v.begin(), v.end(), c) != v.end(); }

}  // namespace

bool eval_lasso(const Goal& goal, const ColorLasso& word) {
  using K = Goal::Kind;
  const auto& pre = word.prefix;
  const auto& cyc = word.cycle;
  switch (goal.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::First: return (pre.empty() ? cyc.front() : pre.front()) == goal.color();
    case K::Ev: return contains(pre, goal.color()) || contains(cyc, goal.color());
    case K::Safe: {
      auto in = [&](Color c) { return goal.allowed().count(c) > 0; };
      return std::all_of(pre.begin(), pre.end(), in) && std::all_of(cyc.begin(), cyc.end(), in);
    }
    case K::Buchi: return contains(cyc, goal.color());
    case K::CoBuchi:
      return std::all_of(cyc.begin(), cyc.end(), [&](Color c) { return c == goal.color(); });
    case K::Parity: return *std::max_element(cyc.begin(), cyc.end()) % 2 == 0;
    case K::Count: {
      if (contains(cyc, goal.color())) return true;
      const auto n = std::count(pre.begin(), pre.end(), goal.color());
      return static_cast<unsigned>(n) >= goal.bound();
    }
    case K::And: return eval_lasso(goal.lhs(), word) && eval_lasso(goal.rhs(), word);
    case K::Or: return eval_lasso(goal.lhs(), word) || eval_lasso(goal.rhs(), word);
    case K::Not: return !eval_lasso(goal.operand(), word);
  }
  return false;
}

bool eval_lasso(const Goal& goal, const Game& game, const Lasso& lasso) {
  return eval_lasso(goal, colors_of(game, lasso));
}

bool eval_limit(const Goal& goal, const std::set<Color>& inf) {
  using K = Goal::Kind;
  switch (goal.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Buchi: return inf.count(goal.color()) > 0;
    case K::CoBuchi: return inf.size() == 1 && *inf.begin() == goal.color();
    case K::Parity: return !inf.empty() && *inf.rbegin() % 2 == 0;
    case K::And: return eval_limit(goal.lhs(), inf) && eval_limit(goal.rhs(), inf);
    case K::Or: return eval_limit(goal.lhs(), inf) || eval_limit(goal.rhs(), inf);
    case K::Not: return !eval_limit(goal.operand(), inf);
    default: throw Error("eval_limit: prefix-dependent atom " + goal.to_string());
  }
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(SolverClass c) {
  switch (c) {
    case SolverClass::Reachability: return "reachability";
    case SolverClass::Safety: return "safety";
    case SolverClass::Buchi: return "buchi";
    case SolverClass::CoBuchi: return "cobuchi";
    case SolverClass::Parity: return "parity";
    case SolverClass::Composite: return "composite";
  }
  return "composite";
}

namespace {

struct Flags {
  Tri shrinkable;
  Tri extensible;
};

Tri both_yes(Tri a, Tri b) { return a == Tri::Yes && b == Tri::Yes ? Tri::Yes : Tri::Unknown; }

Flags classify_flags(const Goal& goal) {
  using K = Goal::Kind;
  switch (goal.kind()) {
    case K::True:
    case K::False:
    case K::Buchi:
    case K::CoBuchi:
    case K::Parity: return {Tri::Yes, Tri::Yes};
    case K::Ev:
    case K::Count: return {Tri::No, Tri::Yes};
    case K::Safe: return {Tri::Yes, Tri::No};
    case K::First: return {Tri::No, Tri::No};
    case K::And:
    case K::Or: {
      auto a = classify_flags(goal.lhs());
      auto b = classify_flags(goal.rhs());
      return {both_yes(a.shrinkable, b.shrinkable), both_yes(a.extensible, b.extensible)};
    }
    case K::Not: {
      auto a = classify_flags(goal.operand());
      if (a.shrinkable == Tri::Yes && a.extensible == Tri::Yes) return {Tri::Yes, Tri::Yes};
      return {Tri::Unknown, Tri::Unknown};
    }
  }
  return {Tri::Unknown, Tri::Unknown};
}

bool collect_ev(const Goal& g, std::set<Color>& out) {
  if (g.kind() == Goal::Kind::Ev) {
    out.insert(g.color());
    return true;
  }
  return g.kind() == Goal::Kind::Or && collect_ev(g.lhs(), out) && collect_ev(g.rhs(), out);
}

bool collect_safe(const Goal& g, std::optional<std::set<Color>>& out) {
  if (g.kind() == Goal::Kind::Safe) {
    if (!out) {
      out = g.allowed();
    } else {
      std::set<Color> both;
      std::set_intersection(out->begin(), out->end(), g.allowed().begin(), g.allowed().end(),
                            std::inserter(both, both.end()));
      out = std::move(both);
    }
    return true;
  }
  return g.kind() == Goal::Kind::And && collect_safe(g.lhs(), out) && collect_safe(g.rhs(), out);
}

}  // namespace

SolverForm solver_form(const Goal& goal) {
  using K = Goal::Kind;
  switch (goal.kind()) {
    case K::Buchi: return {SolverClass::Buchi, {goal.color()}};
    case K::CoBuchi: return {SolverClass::CoBuchi, {goal.color()}};
    case K::Parity: return {SolverClass::Parity, {}};
    default: break;
  }
  std::set<Color> targets;
  if (collect_ev(goal, targets)) return {SolverClass::Reachability, std::move(targets)};
  std::optional<std::set<Color>> allowed;
  if (collect_safe(goal, allowed)) return {SolverClass::Safety, std::move(*allowed)};
  return {SolverClass::Composite, {}};
}

GoalClass classify(const Goal& goal) {
  auto flags = classify_flags(goal);
  GoalClass out;
  out.shrinkable = flags.shrinkable;
  out.extensible = flags.extensible;
  if (flags.shrinkable == Tri::Yes && flags.extensible == Tri::Yes) {
    out.prefix_independent = Tri::Yes;
  } else if (flags.shrinkable == Tri::No || flags.extensible == Tri::No) {
    out.prefix_independent = Tri::No;
  } else {
    out.prefix_independent = Tri::Unknown;
  }
  out.solver_class = solver_form(goal).cls;
  return out;
}

Goal simplify(const Goal& goal) {
  using K = Goal::Kind;
  switch (goal.kind()) {
    case K::And: {
      auto a = simplify(goal.lhs());
      auto b = simplify(goal.rhs());
      if (a.kind() == K::False || b.kind() == K::False) return Goal::truth(false);
      if (a.kind() == K::True) return b;
      if (b.kind() == K::True) return a;
      return Goal::conj(a, b);
    }
    case K::Or: {
      auto a = simplify(goal.lhs());
      auto b = simplify(goal.rhs());
      if (a.kind() == K::True || b.kind() == K::True) return Goal::truth(true);
      if (a.kind() == K::False) return b;
      if (b.kind() == K::False) return a;
      return Goal::disj(a, b);
    }
    case K::Not: {
      auto a = simplify(goal.operand());
      if (a.kind() == K::True) return Goal::truth(false);
      if (a.kind() == K::False) return Goal::truth(true);
      return Goal::negate(a);
    }
    default: return goal;
  }
}

}  // namespace besteffort
