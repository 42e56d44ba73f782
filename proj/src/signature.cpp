#include "cartprl/signature.hpp"

#include <ostream>

#include "cartprl/dynamics.hpp"
#include "cartprl/printer.hpp"
#include "cartprl/tactics.hpp"

namespace cartprl {

const Declaration* Signature::find(const Symbol& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

bool CheckReport::all_ok() const {
  for (const auto& d : decls)
    if (d.status != DeclReport::Status::Ok) return false;
  return true;
}

TermPtr expand_references(const TermPtr& t, const std::map<Symbol, TermPtr>& env) {
  TermPtr out = t;
  // Environment bodies are themselves reference-free, so one pass suffices.
  for (const auto& [name, val] : env) out = subst_term(out, val, name);
  return out;
}

Sequent theorem_goal(const TermPtr& statement_expanded) {
  Sequent s;
  for (const auto& d : free_dims(statement_expanded)) s.dims.push_back(d);
  s.concl = Conclusion::truth(statement_expanded);
  return s;
}

namespace {

void emit_trace(std::ostream& out, const Symbol& name, const TermPtr& t,
                std::int64_t fuel) {
  EvalResult r = eval(t, fuel, /*want_trace=*/true);
  out << "  trace " << name << ": " << show_term(t) << "\n";
  for (const auto& e : r.trace)
    out << "    " << (e.stable ? "=>  " : "~>  ") << show_term(e.term) << "\n";
  if (r.status == EvalResult::Status::Stuck) out << "    (stuck)\n";
  if (r.status == EvalResult::Status::FuelExhausted) out << "    (fuel)\n";
}

DeclReport check_def(const Declaration& d, const std::map<Symbol, TermPtr>& env,
                     const CheckOptions& opts) {
  DeclReport rep;
  rep.name = d.name;
  rep.line = d.line;
  rep.col = d.col;

  TermPtr type = expand_references(d.type, env);
  TermPtr body = expand_references(d.body, env);
  if (!free_vars(type).empty() || !free_vars(body).empty()) {
    rep.status = DeclReport::Status::Error;
    rep.message = "definition mentions undeclared names";
    return rep;
  }

  if (opts.trace && opts.trace_out) emit_trace(*opts.trace_out, d.name, body, opts.fuel);

  Sequent goal;
  for (const auto& dim : free_dims(type)) goal.dims.push_back(dim);
  for (const auto& dim : free_dims(body))
    if (!goal.has_dim(dim)) goal.dims.push_back(dim);
  goal.concl = Conclusion::mem(type, body);

  ProofState state = ProofState::root(goal);
  TacticPtr pipeline = Tactic::make_seq(
      Tactic::make_rule(RuleApplication::named("eq/eval")),
      Tactic::make_auto(8));
  TacticResult run = run_tactic(state, state.root_goal(), pipeline);
  bool refiner_closed = false;
  if (std::holds_alternative<TacticOutcome>(run))
    refiner_closed = std::get<TacticOutcome>(run).state.complete();

  Verdict oracle = check_closed(ClosedJudgment::mem(type, body), opts.fuel);
  if (oracle.is_fails()) {
    rep.status = DeclReport::Status::Error;
    rep.message = "body is not a member of the declared type: " + oracle.reason;
    return rep;
  }
  if (!refiner_closed && !oracle.is_holds()) {
    rep.status = DeclReport::Status::OpenGoals;
    if (std::holds_alternative<TacticOutcome>(run)) {
      const ProofState& s = std::get<TacticOutcome>(run).state;
      for (GoalId g : s.open_goals()) rep.open_goals.push_back(show_sequent(s.goal(g)));
    } else {
      rep.open_goals.push_back(show_sequent(goal));
    }
    return rep;
  }
  rep.status = DeclReport::Status::Ok;
  rep.extract = body;
  return rep;
}

DeclReport check_thm(const Declaration& d, const std::map<Symbol, TermPtr>& env,
                     const CheckOptions& opts) {
  (void)opts;
  DeclReport rep;
  rep.name = d.name;
  rep.line = d.line;
  rep.col = d.col;

  TermPtr statement = expand_references(d.type, env);
  if (!free_vars(statement).empty()) {
    rep.status = DeclReport::Status::Error;
    rep.message = "statement mentions undeclared names";
    return rep;
  }

  ProofState state = ProofState::root(theorem_goal(statement));
  TacticResult run = run_tactic(state, state.root_goal(), d.script);
  if (std::holds_alternative<TacticFailure>(run)) {
    const TacticFailure& f = std::get<TacticFailure>(run);
    rep.status = DeclReport::Status::Error;
    rep.message = "tactic failed at " + f.path + ": " + f.reason;
    return rep;
  }
  const ProofState& done = std::get<TacticOutcome>(run).state;
  auto ext = extract(done);
  if (std::holds_alternative<IncompleteError>(ext)) {
    rep.status = DeclReport::Status::OpenGoals;
    for (GoalId g : done.open_goals())
      rep.open_goals.push_back(show_sequent(done.goal(g)));
    return rep;
  }
  rep.status = DeclReport::Status::Ok;
  rep.extract = std::get<TermPtr>(ext);
  return rep;
}

}  // namespace

CheckReport check_signature(const Signature& sig, const CheckOptions& opts) {
  CheckReport report;
  std::map<Symbol, TermPtr> env;
  for (const auto& d : sig.decls) {
    switch (d.sort) {
      case Declaration::Sort::Def: {
        DeclReport r = check_def(d, env, opts);
        if (r.status == DeclReport::Status::Ok)
          env[d.name] = expand_references(d.body, env);
        report.decls.push_back(std::move(r));
        break;
      }
      case Declaration::Sort::Thm: {
        DeclReport r = check_thm(d, env, opts);
        if (r.status == DeclReport::Status::Ok && r.extract)
          env[d.name] = r.extract;
        report.decls.push_back(std::move(r));
        break;
      }
      case Declaration::Sort::TacticAlias: {
        DeclReport r;
        r.name = d.name;
        r.line = d.line;
        r.col = d.col;
        r.status = DeclReport::Status::Ok;
        report.decls.push_back(std::move(r));
        break;
      }
    }
  }
  return report;
}

std::map<Symbol, TermPtr> reference_env(const Signature& sig,
                                        const CheckReport& report) {
  std::map<Symbol, TermPtr> env;
  for (std::size_t k = 0; k < sig.decls.size() && k < report.decls.size(); ++k) {
    const Declaration& d = sig.decls[k];
    const DeclReport& r = report.decls[k];
    if (r.status != DeclReport::Status::Ok) continue;
    if (d.sort == Declaration::Sort::Def)
      env[d.name] = expand_references(d.body, env);
    else if (d.sort == Declaration::Sort::Thm && r.extract)
      env[d.name] = r.extract;
  }
  return env;
}

}  // namespace cartprl
