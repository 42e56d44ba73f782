// Signature files: ordered definitions, theorems with tactic scripts, and
// named tactic aliases. References to earlier declarations are plain free
// variables in the stored terms and expand by substitution at check time.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartprl/refiner.hpp"
#include "cartprl/syntax.hpp"

namespace cartprl {

struct Tactic;
using TacticPtr = std::shared_ptr<const Tactic>;

struct Declaration {
  enum class Sort { Def, Thm, TacticAlias };

  Sort sort = Sort::Def;
  Symbol name;
  TermPtr type;      // Def / Thm statement (references unexpanded)
  TermPtr body;      // Def
  TacticPtr script;  // Thm / TacticAlias
  int line = 1;
  int col = 1;
};

struct Signature {
  std::vector<Declaration> decls;

  const Declaration* find(const Symbol& name) const;
  bool declares(const Symbol& name) const { return find(name) != nullptr; }
};

struct DeclReport {
  enum class Status { Ok, OpenGoals, Error };

  Symbol name;
  Status status = Status::Error;
  TermPtr extract;                       // Ok
  std::vector<std::string> open_goals;   // OpenGoals: rendered sequents
  std::string message;                   // Error
  int line = 1;
  int col = 1;
};

struct CheckReport {
  std::vector<DeclReport> decls;  // in declaration order

  bool all_ok() const;
};

struct CheckOptions {
  std::int64_t fuel = 10000;
  bool trace = false;           // print evaluation traces for def bodies
  std::ostream* trace_out = nullptr;
};

// Checks every declaration in order, continuing past failures. Definitions
// are verified as memberships through an eq/eval + auto pipeline and the
// semantic oracle where it is decisive; theorems run their scripts and report
// the extract or the remaining open goals.
CheckReport check_signature(const Signature& sig, const CheckOptions& opts = {});

// Replaces references to checked declarations (definition bodies, theorem
// extracts) inside `t`.
TermPtr expand_references(const TermPtr& t,
                          const std::map<Symbol, TermPtr>& env);

// The reference environment a successful check builds: definition bodies and
// theorem extracts, fully expanded.
std::map<Symbol, TermPtr> reference_env(const Signature& sig,
                                        const CheckReport& report);

// The root proof goal of a theorem statement (statement references expanded).
Sequent theorem_goal(const TermPtr& statement_expanded);

}  // namespace cartprl
