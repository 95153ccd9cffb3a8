#pragma once

#include <compare>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "besteffort/game.hpp"

namespace besteffort {

/// Goal expressions over the color sequence of a play.
///
/// Atoms:
///   first(c)      the first color is c
///   ev(c)         c occurs at least once (reach(c) is the same atom)
///   safe(C)       every color belongs to C
///   buchi(c)      c occurs infinitely often
///   cobuchi(c)    from some point on, every color is c
///   parity        the largest color occurring infinitely often is even
///   count(c, k)   c occurs at least k times
/// closed under and/or/not. `true`/`false` only arise in monitor residuals.
class Goal {
 public:
  enum class Kind { True, False, First, Ev, Safe, Buchi, CoBuchi, Parity, Count, And, Or, Not };

  static Goal truth(bool value);
  static Goal first(Color c);
  static Goal ev(Color c);
  static Goal reach(Color c) { return ev(c); }
  static Goal safe(std::set<Color> allowed);
  static Goal buchi(Color c);
  static Goal cobuchi(Color c);
  static Goal parity();
  static Goal count(Color c, unsigned k);
  static Goal conj(Goal a, Goal b);
  static Goal disj(Goal a, Goal b);
  static Goal negate(Goal a);

  Kind kind() const { return node_->kind; }
  Color color() const { return node_->color; }
  unsigned bound() const { return node_->bound; }
  const std::set<Color>& allowed() const { return node_->allowed; }
  const Goal& lhs() const { return node_->children[0]; }
  const Goal& rhs() const { return node_->children[1]; }
  const Goal& operand() const { return node_->children[0]; }

  bool is_atom() const;
  /// Surface syntax accepted by the game file parser (plus true/false).
  std::string to_string() const;

  friend bool operator==(const Goal& a, const Goal& b);
  friend std::strong_ordering operator<=>(const Goal& a, const Goal& b);

 private:
  struct Node {
    Kind kind;
    Color color = 0;
    unsigned bound = 0;
    std::set<Color> allowed;
    std::vector<Goal> children;
  };
  explicit Goal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Goal make(Node node);

  std::shared_ptr<const Node> node_;
};

/// Color word prefix·cycle^ω.
struct ColorLasso {
  std::vector<Color> prefix;
  std::vector<Color> cycle;
};

ColorLasso colors_of(const Game& game, const Lasso& lasso);

bool eval_lasso(const Goal& goal, const ColorLasso& word);
bool eval_lasso(const Goal& goal, const Game& game, const Lasso& lasso);

/// Truth of a limit formula (and/or/not over buchi, cobuchi, parity,
/// true, false) for a play whose set of infinitely-visited colors is `inf`.
/// Throws if the formula contains a prefix-dependent atom.
bool eval_limit(const Goal& goal, const std::set<Color>& inf);

enum class Tri { Yes, No, Unknown };

const char* to_string(Tri t);

enum class SolverClass { Reachability, Safety, Buchi, CoBuchi, Parity, Composite };

const char* to_string(SolverClass c);

struct GoalClass {
  Tri shrinkable = Tri::Unknown;
  Tri extensible = Tri::Unknown;
  Tri prefix_independent = Tri::Unknown;
  SolverClass solver_class = SolverClass::Composite;
};

/// Conservative structural classification.
GoalClass classify(const Goal& goal);

/// Shape consumed by the fixpoint solvers: for reachability the target
/// colors, for safety the allowed colors, for (co-)Büchi the single color.
struct SolverForm {
  SolverClass cls = SolverClass::Composite;
  std::set<Color> colors;
};

/// Recognizes bare atoms, disjunctions of ev() atoms (reachability of a color
/// set) and conjunctions of safe() atoms.
SolverForm solver_form(const Goal& goal);

/// Rewrites and/or/not with boolean constants folded away.
Goal simplify(const Goal& goal);

}  // namespace besteffort
