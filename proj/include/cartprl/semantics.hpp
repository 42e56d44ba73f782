// The semantic judgment oracle. Closed membership and equality judgments are
// decided by evaluating to canonical forms and applying the defining clause
// of the head type; open judgments quantify over closing substitutions and
// are decided by enumeration where every hypothesis type is enumerable.
// Whenever complete enumeration is out of reach the oracle answers Unknown
// rather than guessing.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartprl/dynamics.hpp"
#include "cartprl/syntax.hpp"

namespace cartprl {

// Kind lattice: Discrete ⊑ Kan ⊑ Coe ⊑ Pre and Kan ⊑ HCom ⊑ Pre.
// Discrete is the strongest requirement (no non-trivial paths), Pre the
// weakest (bare typehood).
enum class Kind : std::uint8_t { Discrete, Kan, Coe, HCom, Pre };

bool kind_leq(Kind a, Kind b);
const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view s);

struct ClosedJudgment {
  enum class Form { Mem, EqMem, Type, EqType };

  Form form = Form::Mem;
  TermPtr type;   // the classifying type (Mem/EqMem) or the left type
  TermPtr left;   // member (Mem), left member (EqMem)
  TermPtr right;  // right member (EqMem), right type (EqType)
  Kind kind = Kind::Kan;  // Type/EqType

  static ClosedJudgment mem(TermPtr a, TermPtr m);
  static ClosedJudgment eq_mem(TermPtr a, TermPtr m, TermPtr n);
  static ClosedJudgment typehood(TermPtr a, Kind k = Kind::Kan);
  static ClosedJudgment type_equality(TermPtr a, TermPtr b, Kind k = Kind::Kan);
};

struct Verdict {
  enum class State { Holds, Fails, Unknown };

  State state = State::Unknown;
  std::string reason;

  static Verdict holds() { return {State::Holds, {}}; }
  static Verdict fails(std::string r) { return {State::Fails, std::move(r)}; }
  static Verdict unknown(std::string r) { return {State::Unknown, std::move(r)}; }

  bool is_holds() const { return state == State::Holds; }
  bool is_fails() const { return state == State::Fails; }
  bool is_unknown() const { return state == State::Unknown; }
};

Verdict check_closed(const ClosedJudgment& j, std::int64_t fuel = kDefaultFuel);

struct Hypothesis {
  Symbol name;
  TermPtr type;
};

// Checks an open judgment by enumerating closing substitutions: boolean
// hypotheses range over {tt, ff}, exact-equality hypotheses over {ax} (or
// make the judgment vacuous when uninhabited), and each dimension over
// {0, 1, one shared fresh name}. Unknown when some hypothesis type is not
// enumerable.
Verdict check_open(const std::vector<Hypothesis>& hyps,
                   const std::vector<Symbol>& dims, const ClosedJudgment& j,
                   std::int64_t fuel = kDefaultFuel);

// Brute-force stability oracle: evaluation of `m` commutes with every
// substitution of its free dimensions into {0, 1, fresh}. Evaluation
// failures count as non-commutation.
bool commutes_with_subst(const TermPtr& m, std::int64_t fuel = kDefaultFuel);

}  // namespace cartprl
