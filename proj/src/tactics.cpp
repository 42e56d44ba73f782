#include "cartprl/tactics.hpp"

#include <algorithm>

#include "cartprl/dynamics.hpp"
#include "cartprl/printer.hpp"

namespace cartprl {

namespace {

TacticPtr node(Tactic t) { return std::make_shared<const Tactic>(std::move(t)); }

}  // namespace

TacticPtr Tactic::make_rule(RuleApplication r) {
  Tactic t;
  t.kind = Kind::Rule;
  t.rule = std::move(r);
  return node(std::move(t));
}
TacticPtr Tactic::make_seq(TacticPtr a, TacticPtr b) {
  Tactic t;
  t.kind = Kind::Seq;
  t.args = {std::move(a), std::move(b)};
  return node(std::move(t));
}
TacticPtr Tactic::make_seq_list(TacticPtr head, std::vector<TacticPtr> branches) {
  Tactic t;
  t.kind = Kind::SeqList;
  t.args.push_back(std::move(head));
  for (auto& b : branches) t.args.push_back(std::move(b));
  return node(std::move(t));
}
TacticPtr Tactic::make_or_else(TacticPtr a, TacticPtr b) {
  Tactic t;
  t.kind = Kind::OrElse;
  t.args = {std::move(a), std::move(b)};
  return node(std::move(t));
}
TacticPtr Tactic::make_auto(int depth) {
  Tactic t;
  t.kind = Kind::Auto;
  t.depth = depth;
  return node(std::move(t));
}
TacticPtr Tactic::make_id() {
  Tactic t;
  t.kind = Kind::Id;
  return node(std::move(t));
}
TacticPtr Tactic::make_fail(std::string msg) {
  Tactic t;
  t.kind = Kind::Fail;
  t.message = std::move(msg);
  return node(std::move(t));
}
TacticPtr Tactic::make_with(Symbol name, TacticPtr inner) {
  Tactic t;
  t.kind = Kind::With;
  t.names = {std::move(name)};
  t.args = {std::move(inner)};
  return node(std::move(t));
}
TacticPtr Tactic::make_intro_layer(Symbol name, TacticPtr body) {
  Tactic t;
  t.kind = Kind::IntroLayer;
  t.names = {std::move(name)};
  t.args = {std::move(body)};
  return node(std::move(t));
}
TacticPtr Tactic::make_surface_lam(std::vector<Symbol> names, TacticPtr body) {
  Tactic t;
  t.kind = Kind::SurfaceLam;
  t.names = std::move(names);
  t.args = {std::move(body)};
  return node(std::move(t));
}
TacticPtr Tactic::make_surface_use(Symbol name) {
  Tactic t;
  t.kind = Kind::SurfaceUse;
  t.names = {std::move(name)};
  return node(std::move(t));
}
TacticPtr Tactic::make_surface_tuple(std::vector<TacticPtr> parts) {
  Tactic t;
  t.kind = Kind::SurfaceTuple;
  t.args = std::move(parts);
  return node(std::move(t));
}

// ---------------------------------------------------------------------------
// Elaboration.

TacticPtr elaborate_surface(const TacticPtr& t) {
  switch (t->kind) {
    case Tactic::Kind::SurfaceLam: {
      TacticPtr body = elaborate_surface(t->args[0]);
      for (auto it = t->names.rbegin(); it != t->names.rend(); ++it)
        body = Tactic::make_intro_layer(*it, body);
      return body;
    }
    case Tactic::Kind::SurfaceUse:
      return Tactic::make_or_else(
          Tactic::make_rule(RuleApplication::on_hyp("hypothesis", t->names[0])),
          Tactic::make_fail("use " + t->names[0]));
    case Tactic::Kind::SurfaceTuple: {
      std::vector<TacticPtr> branches;
      for (const auto& part : t->args) branches.push_back(elaborate_surface(part));
      branches.push_back(Tactic::make_auto());
      return Tactic::make_seq_list(
          Tactic::make_rule(RuleApplication::named("sigma/intro")),
          std::move(branches));
    }
    case Tactic::Kind::Rule:
    case Tactic::Kind::Auto:
    case Tactic::Kind::Id:
    case Tactic::Kind::Fail:
      return t;
    default: {
      bool changed = false;
      std::vector<TacticPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) {
        TacticPtr e = elaborate_surface(a);
        changed |= e.get() != a.get();
        args.push_back(std::move(e));
      }
      if (!changed) return t;
      Tactic out = *t;
      out.args = std::move(args);
      return node(std::move(out));
    }
  }
}

// ---------------------------------------------------------------------------
// The auto procedure: fixed attempt order (refl, formation, hypothesis,
// intro), closing a goal completely within the depth bound or leaving it
// untouched.

namespace {

std::vector<RuleApplication> auto_candidates(const Sequent& seq) {
  std::vector<RuleApplication> out;
  const Conclusion& g = seq.concl;

  if (g.form == Conclusion::Form::Mem || g.form == Conclusion::Form::EqMem ||
      g.form == Conclusion::Form::EqType)
    out.push_back(RuleApplication::named("eq/refl"));

  TermPtr head = g.a ? stable_whnf(g.a) : nullptr;

  if (g.form == Conclusion::Form::Type || g.form == Conclusion::Form::EqType) {
    if (head) switch (head->tag()) {
        case Tag::Bool: out.push_back(RuleApplication::named("bool/form")); break;
        case Tag::Circle: out.push_back(RuleApplication::named("circle/form")); break;
        case Tag::FunType: out.push_back(RuleApplication::named("pi/form")); break;
        case Tag::PairType: out.push_back(RuleApplication::named("sigma/form")); break;
        case Tag::PathType: out.push_back(RuleApplication::named("path/form")); break;
        case Tag::ExactEq: out.push_back(RuleApplication::named("eq/form")); break;
        default: break;
      }
  }

  if (g.form == Conclusion::Form::True)
    for (const auto& h : seq.hyps)
      out.push_back(RuleApplication::on_hyp("hypothesis", h.name));

  if (g.form == Conclusion::Form::True && head) {
    switch (head->tag()) {
      case Tag::Bool:
        out.push_back(RuleApplication::named("bool/intro/true"));
        out.push_back(RuleApplication::named("bool/intro/false"));
        break;
      case Tag::Circle:
        out.push_back(RuleApplication::named("circle/intro/base"));
        break;
      case Tag::FunType: out.push_back(RuleApplication::named("pi/intro")); break;
      case Tag::PairType: out.push_back(RuleApplication::named("sigma/intro")); break;
      case Tag::PathType: out.push_back(RuleApplication::named("path/intro")); break;
      case Tag::ExactEq: out.push_back(RuleApplication::named("eq/intro")); break;
      default: break;
    }
  }
  if ((g.form == Conclusion::Form::Mem || g.form == Conclusion::Form::EqMem) &&
      head) {
    switch (head->tag()) {
      case Tag::FunType: out.push_back(RuleApplication::named("pi/intro")); break;
      case Tag::PairType: out.push_back(RuleApplication::named("sigma/intro")); break;
      case Tag::PathType: out.push_back(RuleApplication::named("path/intro")); break;
      case Tag::ExactEq: out.push_back(RuleApplication::named("eq/intro")); break;
      default: break;
    }
  }
  return out;
}

// Returns a state in which `goal` and everything it spawned is closed, or
// nothing.
std::optional<ProofState> try_close(const ProofState& state, GoalId goal,
                                    int depth) {
  if (depth <= 0) return std::nullopt;
  Sequent seq = state.goal(goal);
  for (const RuleApplication& app : auto_candidates(seq)) {
    ApplyResult r = apply_rule(state, goal, app);
    if (std::holds_alternative<RuleError>(r)) continue;
    Refined ref = std::get<Refined>(std::move(r));
    ProofState cur = ref.state;
    bool all_closed = true;
    for (GoalId g : ref.subgoals) {
      std::optional<ProofState> sub = try_close(cur, g, depth - 1);
      if (!sub) {
        all_closed = false;
        break;
      }
      cur = *sub;
    }
    if (all_closed) return cur;
  }
  return std::nullopt;
}

}  // namespace

ProofState auto_tactic(const ProofState& state, GoalId goal, int depth) {
  std::optional<ProofState> closed = try_close(state, goal, depth);
  return closed ? *closed : state;
}

// ---------------------------------------------------------------------------
// The tactic interpreter.

namespace {

struct Env {
  std::optional<Symbol> pending_name;
};

bool consumes_name_hint(const std::string& rule) {
  return rule == "pi/intro" || rule == "path/intro" || rule == "pi/elim" ||
         rule == "sigma/elim" || rule == "path/app";
}

TacticFailure fail_at(const std::string& path, std::string reason,
                      std::optional<std::pair<int, int>> arity = std::nullopt) {
  return TacticFailure{path, std::move(reason), arity};
}

TacticResult run(const ProofState& state, GoalId goal, const TacticPtr& t,
                 Env& env, const std::string& path);

// Runs `t` on each goal of `goals` in order, threading the state.
TacticResult run_each(const ProofState& state, const std::vector<GoalId>& goals,
                      const TacticPtr& t, Env& env, const std::string& path) {
  ProofState cur = state;
  std::vector<GoalId> produced;
  for (std::size_t k = 0; k < goals.size(); ++k) {
    TacticResult r =
        run(cur, goals[k], t, env, path + "." + std::to_string(k + 1));
    if (std::holds_alternative<TacticFailure>(r))
      return std::get<TacticFailure>(std::move(r));
    TacticOutcome out = std::get<TacticOutcome>(std::move(r));
    cur = out.state;
    produced.insert(produced.end(), out.produced.begin(), out.produced.end());
  }
  return TacticOutcome{cur, std::move(produced)};
}

TacticResult run(const ProofState& state, GoalId goal, const TacticPtr& t,
                 Env& env, const std::string& path) {
  switch (t->kind) {
    case Tactic::Kind::Rule: {
      RuleApplication app = t->rule;
      if (!app.name_hint && env.pending_name && consumes_name_hint(app.rule)) {
        app.name_hint = env.pending_name;
        env.pending_name.reset();
      }
      ApplyResult r = apply_rule(state, goal, app);
      if (std::holds_alternative<RuleError>(r)) {
        const RuleError& e = std::get<RuleError>(r);
        return fail_at(path + "/rule(" + app.rule + ")",
                       std::string(rule_error_name(e.code)) + ": " + e.message);
      }
      Refined ref = std::get<Refined>(std::move(r));
      return TacticOutcome{ref.state, ref.subgoals};
    }

    case Tactic::Kind::Seq: {
      TacticResult first = run(state, goal, t->args[0], env, path + "/seq.1");
      if (std::holds_alternative<TacticFailure>(first)) return first;
      TacticOutcome out = std::get<TacticOutcome>(std::move(first));
      return run_each(out.state, out.produced, t->args[1], env, path + "/seq.2");
    }

    case Tactic::Kind::SeqList: {
      TacticResult first = run(state, goal, t->args[0], env, path + "/seqlist.0");
      if (std::holds_alternative<TacticFailure>(first)) return first;
      TacticOutcome out = std::get<TacticOutcome>(std::move(first));
      int expected = static_cast<int>(t->args.size()) - 1;
      int got = static_cast<int>(out.produced.size());
      if (expected != got)
        return fail_at(path + "/seqlist",
                       "ArityMismatch: expected " + std::to_string(expected) +
                           " subgoals, got " + std::to_string(got),
                       std::make_pair(expected, got));
      ProofState cur = out.state;
      std::vector<GoalId> produced;
      for (int k = 0; k < expected; ++k) {
        TacticResult r = run(cur, out.produced[k], t->args[k + 1], env,
                             path + "/seqlist." + std::to_string(k + 1));
        if (std::holds_alternative<TacticFailure>(r))
          return std::get<TacticFailure>(std::move(r));
        TacticOutcome o = std::get<TacticOutcome>(std::move(r));
        cur = o.state;
        produced.insert(produced.end(), o.produced.begin(), o.produced.end());
      }
      return TacticOutcome{cur, std::move(produced)};
    }

    case Tactic::Kind::OrElse: {
      Env saved = env;
      TacticResult first = run(state, goal, t->args[0], env, path + "/orelse.1");
      if (!std::holds_alternative<TacticFailure>(first)) return first;
      env = saved;  // the failed branch must not leak hints
      return run(state, goal, t->args[1], env, path + "/orelse.2");
    }

    case Tactic::Kind::Auto: {
      ProofState next = auto_tactic(state, goal, t->depth);
      std::vector<GoalId> produced;
      if (next.is_open(goal)) produced.push_back(goal);
      return TacticOutcome{next, std::move(produced)};
    }

    case Tactic::Kind::Id:
      return TacticOutcome{state, {goal}};

    case Tactic::Kind::Fail:
      return fail_at(path + "/fail",
                     t->message.empty() ? "fail" : t->message);

    case Tactic::Kind::With: {
      Env saved = env;
      env.pending_name = t->names[0];
      TacticResult r = run(state, goal, t->args[0],
                           env, path + "/with(" + t->names[0] + ")");
      env.pending_name = saved.pending_name;
      return r;
    }

    case Tactic::Kind::IntroLayer: {
      // Dispatch on the goal head: the same `lam` notation introduces both
      // function and path hypotheses.
      Sequent seq = state.goal(goal);
      if (!seq.concl.a)
        return fail_at(path + "/lam(" + t->names[0] + ")",
                       "lam expects a goal with a type");
      Tag head = stable_whnf(seq.concl.a)->tag();
      RuleApplication app;
      if (head == Tag::FunType) {
        app = RuleApplication::named("pi/intro");
      } else if (head == Tag::PathType) {
        app = RuleApplication::named("path/intro");
      } else {
        return fail_at(path + "/lam(" + t->names[0] + ")",
                       "goal is neither a function nor a path type");
      }
      app.name_hint = t->names[0];
      ApplyResult r = apply_rule(state, goal, app);
      if (std::holds_alternative<RuleError>(r)) {
        const RuleError& e = std::get<RuleError>(r);
        return fail_at(path + "/lam(" + t->names[0] + ")",
                       std::string(rule_error_name(e.code)) + ": " + e.message);
      }
      Refined ref = std::get<Refined>(std::move(r));
      // Body on the main subgoal, auto on every auxiliary one.
      TacticResult body =
          run(ref.state, ref.subgoals[0], t->args[0], env, path + "/lam.body");
      if (std::holds_alternative<TacticFailure>(body)) return body;
      TacticOutcome out = std::get<TacticOutcome>(std::move(body));
      ProofState cur = out.state;
      std::vector<GoalId> produced = out.produced;
      for (std::size_t k = 1; k < ref.subgoals.size(); ++k) {
        cur = auto_tactic(cur, ref.subgoals[k], kDefaultAutoDepth);
        if (cur.is_open(ref.subgoals[k])) produced.push_back(ref.subgoals[k]);
      }
      return TacticOutcome{cur, std::move(produced)};
    }

    case Tactic::Kind::SurfaceLam:
    case Tactic::Kind::SurfaceUse:
    case Tactic::Kind::SurfaceTuple:
      return run(state, goal, elaborate_surface(t), env, path);
  }
  return fail_at(path, "unhandled tactic");
}

}  // namespace

TacticResult run_tactic(const ProofState& state, GoalId goal, const TacticPtr& t) {
  if (!state.is_open(goal))
    return TacticFailure{"", "goal is not open", std::nullopt};
  Env env;
  return run(state, goal, elaborate_surface(t), env, "");
}

// ---------------------------------------------------------------------------

std::string show_tactic(const TacticPtr& t) {
  switch (t->kind) {
    case Tactic::Kind::Rule: {
      std::string s = t->rule.rule;
      if (t->rule.hyp) s += " " + *t->rule.hyp;
      if (t->rule.term) s += " (" + show_term(t->rule.term) + ")";
      if (t->rule.dim) s += " " + show_dim(*t->rule.dim);
      return s;
    }
    case Tactic::Kind::Seq:
      return show_tactic(t->args[0]) + "; " + show_tactic(t->args[1]);
    case Tactic::Kind::SeqList: {
      std::string s = show_tactic(t->args[0]) + "; [";
      for (std::size_t k = 1; k < t->args.size(); ++k) {
        if (k > 1) s += ", ";
        s += show_tactic(t->args[k]);
      }
      return s + "]";
    }
    case Tactic::Kind::OrElse:
      return "(" + show_tactic(t->args[0]) + " | " + show_tactic(t->args[1]) + ")";
    case Tactic::Kind::Auto:
      return t->depth == kDefaultAutoDepth ? "auto"
                                           : "auto " + std::to_string(t->depth);
    case Tactic::Kind::Id:
      return "id";
    case Tactic::Kind::Fail:
      return t->message.empty() ? "fail" : "fail \"" + t->message + "\"";
    case Tactic::Kind::With:
      return "with " + t->names[0] + " => " + show_tactic(t->args[0]);
    case Tactic::Kind::IntroLayer:
      return "lam " + t->names[0] + " => (" + show_tactic(t->args[0]) + ")";
    case Tactic::Kind::SurfaceLam: {
      std::string s = "lam";
      for (const auto& n : t->names) s += " " + n;
      return s + " => " + show_tactic(t->args[0]);
    }
    case Tactic::Kind::SurfaceUse:
      return "use " + t->names[0];
    case Tactic::Kind::SurfaceTuple: {
      std::string s = "{";
      for (std::size_t k = 0; k < t->args.size(); ++k) {
        if (k) s += ", ";
        s += show_tactic(t->args[k]);
      }
      return s + "}";
    }
  }
  return "?";
}

}  // namespace cartprl
