// Tactic combinators over proof states, the bounded `auto` procedure, and the
// elaborator from surface notation (lam / use / {..} / with) down to
// rule-level tactic trees.
//
// Tactics are transactional: a failing tactic leaves the proof state exactly
// as it was, which the immutable ProofState makes trivial.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cartprl/refiner.hpp"

namespace cartprl {

inline constexpr int kDefaultAutoDepth = 5;

struct Tactic;
using TacticPtr = std::shared_ptr<const Tactic>;

struct Tactic {
  enum class Kind {
    Rule,         // one refinement rule application
    Seq,          // t1 ; t2         (t2 on every resulting subgoal)
    SeqList,      // t ; [t0,..,tn]  (arity checked at run time)
    OrElse,       // t1 | t2
    Auto,         // bounded automation
    Id,           // no-op
    Fail,         // always fails
    With,         // with x => t : names the next introduced hypothesis
    IntroLayer,   // runtime-dispatched intro (pi or path) + body + trailing auto;
                  // what surface `lam` elaborates into
    SurfaceLam,   // lam x y => t
    SurfaceUse,   // use x
    SurfaceTuple  // {t0, .., tn} : sigma/intro with trailing auto
  };

  Kind kind = Kind::Id;
  RuleApplication rule;          // Rule
  std::vector<TacticPtr> args;   // combinator children
  std::vector<Symbol> names;     // SurfaceLam binders / With name / SurfaceUse name / IntroLayer name
  int depth = kDefaultAutoDepth; // Auto
  std::string message;           // Fail

  static TacticPtr make_rule(RuleApplication r);
  static TacticPtr make_seq(TacticPtr a, TacticPtr b);
  static TacticPtr make_seq_list(TacticPtr t, std::vector<TacticPtr> branches);
  static TacticPtr make_or_else(TacticPtr a, TacticPtr b);
  static TacticPtr make_auto(int depth = kDefaultAutoDepth);
  static TacticPtr make_id();
  static TacticPtr make_fail(std::string msg);
  static TacticPtr make_with(Symbol name, TacticPtr t);
  static TacticPtr make_intro_layer(Symbol name, TacticPtr body);
  static TacticPtr make_surface_lam(std::vector<Symbol> names, TacticPtr body);
  static TacticPtr make_surface_use(Symbol name);
  static TacticPtr make_surface_tuple(std::vector<TacticPtr> parts);
};

struct TacticFailure {
  std::string path;    // combinator path down to the failing leaf
  std::string reason;
  std::optional<std::pair<int, int>> arity;  // SeqList: (expected, got)
};

struct TacticOutcome {
  ProofState state;
  std::vector<GoalId> produced;  // open goals this run left behind, in order
};

using TacticResult = std::variant<TacticOutcome, TacticFailure>;

// Runs `t` on an open goal. Surface forms are elaborated on the fly.
TacticResult run_tactic(const ProofState& state, GoalId goal, const TacticPtr& t);

// Bounded automation; never fails, leaves undischarged goals open. A goal is
// either closed completely within the depth bound or left untouched, so the
// open-goal count never grows.
ProofState auto_tactic(const ProofState& state, GoalId goal,
                       int depth = kDefaultAutoDepth);

// Removes surface forms (lam / use / tuple); total and idempotent on
// rule-level tactics.
TacticPtr elaborate_surface(const TacticPtr& t);

std::string show_tactic(const TacticPtr& t);

}  // namespace cartprl
