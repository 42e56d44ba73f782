// Proof refinement logic: sequents, the refinement-rule catalog, proof states
// with metavariable-linked realizer extraction, and the conservative
// algorithmic equality used inside rules.
//
// A ProofState is an immutable value; applying a rule returns a new state
// whose journal points at the old one. Realizers flow upward through
// validations: each refined goal records how to combine its children's
// extracts, and the partial extract is recomputed from that tree on demand,
// with Meta leaves standing in for open goals.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cartprl/semantics.hpp"
#include "cartprl/syntax.hpp"

namespace cartprl {

struct Hyp {
  Symbol name;
  TermPtr type;
  Kind kind = Kind::Kan;
};

struct Conclusion {
  enum class Form { True, Type, EqType, Mem, EqMem };

  Form form = Form::True;
  TermPtr a;              // True: goal type; Type/EqType: left type; Mem/EqMem: type
  TermPtr b;              // EqType: right type
  TermPtr m;              // Mem/EqMem: left member
  TermPtr n;              // EqMem: right member
  Kind kind = Kind::Kan;  // Type/EqType

  static Conclusion truth(TermPtr a);
  static Conclusion type(TermPtr a, Kind k);
  static Conclusion eq_type(TermPtr a, TermPtr b, Kind k);
  static Conclusion mem(TermPtr a, TermPtr m);
  static Conclusion eq_mem(TermPtr a, TermPtr m, TermPtr n);

  // Does this conclusion synthesize a realizer?
  bool is_true() const { return form == Form::True; }
};

struct Sequent {
  std::vector<Symbol> dims;  // dimension context, in order
  std::vector<Hyp> hyps;     // telescope; later types may mention earlier names
  Conclusion concl;

  bool has_dim(const Symbol& i) const;
  const Hyp* find_hyp(const Symbol& x) const;
  std::set<Symbol> used_names() const;

  // Telescope well-scopedness: every hypothesis type mentions only earlier
  // hypotheses and declared dimensions; ditto the conclusion.
  bool well_scoped() const;
};

bool sequent_alpha_eq(const Sequent& a, const Sequent& b);

using GoalId = std::uint64_t;

struct RuleApplication {
  std::string rule;
  std::optional<Symbol> hyp;        // hypothesis argument
  TermPtr term;                     // witness term argument
  std::optional<DimExpr> dim;       // dimension argument
  std::optional<Symbol> name_hint;  // preferred name for an introduced hypothesis

  static RuleApplication named(std::string r) { return {std::move(r), {}, nullptr, {}, {}}; }
  static RuleApplication on_hyp(std::string r, Symbol x) {
    return {std::move(r), std::move(x), nullptr, {}, {}};
  }
};

struct RuleError {
  enum class Code { RuleMismatch, SideConditionFailed, BadArgument };
  Code code;
  std::string message;
};

const char* rule_error_name(RuleError::Code c);

// Stable-computation normalization plus structural comparison under binders.
// Sound but deliberately incomplete: only steps certified stable are used, so
// it can be run on terms not yet known to be well-typed.
bool algorithmic_eq(const TermPtr& a, const TermPtr& b,
                    std::int64_t fuel = kDefaultFuel);

// Head normalization by stable steps only; stops at the first unstable step.
TermPtr stable_whnf(const TermPtr& t, std::int64_t fuel = kDefaultFuel);

class ProofState {
 public:
  // A fresh state with a single open root goal.
  static ProofState root(Sequent goal);

  GoalId root_goal() const;
  const std::vector<GoalId>& open_goals() const;
  bool is_open(GoalId g) const;
  bool complete() const { return open_goals().empty(); }

  // The goal's statement with solved metavariables resolved away.
  Sequent goal(GoalId g) const;
  // The statement as recorded (may mention metavariables of sibling goals).
  const Sequent& goal_raw(GoalId g) const;

  // Rule name that refined the goal, if it has been refined.
  std::optional<std::string> refined_by(GoalId g) const;
  std::vector<GoalId> children_of(GoalId g) const;

  // Extraction. partial_extract renders open goals as metavariable leaves.
  TermPtr partial_extract() const;
  // The realizer of one goal's subtree, holes included.
  TermPtr goal_extract(GoalId g) const;

  std::uint64_t version() const;
  std::size_t journal_length() const;
  std::optional<ProofState> undo() const;

  // Used by apply_rule; not part of the public surface.
  struct Data;
  explicit ProofState(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  const std::shared_ptr<const Data>& data() const { return data_; }

 private:
  std::shared_ptr<const Data> data_;
};

struct Refined {
  ProofState state;
  std::vector<GoalId> subgoals;  // goals the rule created, in order
};

using ApplyResult = std::variant<Refined, RuleError>;

ApplyResult apply_rule(const ProofState& state, GoalId goal,
                       const RuleApplication& app);

struct IncompleteError {
  std::vector<GoalId> open;
};

// Hole-free extract of the root goal, or the list of open goals.
std::variant<TermPtr, IncompleteError> extract(const ProofState& state);

struct RuleInfo {
  std::string name;
  std::string goal_shape;  // human-readable description for UIs
  bool takes_hyp = false;
  bool takes_term = false;
  bool takes_dim = false;
};

const std::vector<RuleInfo>& rule_catalog();

// Names of catalog rules whose goal shape matches the given open goal.
std::vector<std::string> applicable_rules(const ProofState& state, GoalId g);

std::string show_conclusion(const Conclusion& c);
std::string show_sequent(const Sequent& s);

}  // namespace cartprl
