// Small-step operational semantics: the deterministic stepping relation, the
// value predicate, fuel-bounded evaluation with optional traces, and the
// per-step stability classifier.
//
// A step is flagged stable only when the fired rule instance commutes with
// every dimension substitution: rules with no dimension arguments, rules whose
// dimension arguments are constants, and rules whose dimension arguments are
// names bound above the redex. The classifier is conservative; steps it does
// not certify may still commute.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartprl/syntax.hpp"

namespace cartprl {

inline constexpr std::int64_t kDefaultFuel = 10000;

bool is_value(const TermPtr& t);

struct StepResult {
  enum class Status { Stepped, IsValue, Stuck };

  Status status = Status::IsValue;
  TermPtr next;              // Stepped
  bool stable = false;       // Stepped
  std::string stuck_reason;  // Stuck

  bool stepped() const { return status == Status::Stepped; }
};

// At most one rule applies to any term; congruence rules reduce the head
// position first. Precondition: no free term variables (free dimension names
// are fine); terms with free variables are reported Stuck.
StepResult step(const TermPtr& t);

struct TraceEntry {
  TermPtr term;  // term after the step
  bool stable;
};

struct EvalResult {
  enum class Status { Value, Stuck, FuelExhausted };

  Status status = Status::Value;
  TermPtr term;  // the value, or the term evaluation stopped at
  std::int64_t steps = 0;
  std::vector<TraceEntry> trace;  // filled only when want_trace

  bool ok() const { return status == Status::Value; }
};

EvalResult eval(const TermPtr& t, std::int64_t fuel = kDefaultFuel,
                bool want_trace = false);

// Stability of the head redex of `t`. The search follows evaluation
// positions; if `t` itself is a dimension abstraction, the redex is sought
// under the binder, whose name no substitution can touch. Throws
// std::logic_error when `t` has no head redex.
bool classify_stability(const TermPtr& t);

}  // namespace cartprl
