// Acceptance suite: one line per criterion, exit code 0 iff all pass.
// Run from the repository root (ctest sets the working directory).

#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "cartprl/parser.hpp"
#include "cartprl/printer.hpp"
#include "cartprl/semantics.hpp"
#include "cartprl/signature.hpp"
#include "cartprl/tactics.hpp"
#include "gen.hpp"

using namespace cartprl;

namespace {

int g_failures = 0;

void report(int n, const std::string& what, bool pass,
            const std::string& detail = {}) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kCorpusFiles = {
    "corpus/bool.prl",   "corpus/pair.prl", "corpus/fun.prl",
    "corpus/circle.prl", "corpus/path.prl", "corpus/eq.prl",
    "corpus/shannon.prl"};

// Deterministic corpus of closed boolean members produced by the refiner.
std::vector<TermPtr> bool_member_corpus() {
  gen::Rng rng(0xC0FFEE);
  std::vector<TermPtr> members;
  for (int k = 0; k < 210; ++k)
    members.push_back(gen::refined_bool_member(rng, 1 + rng.below(3)));

  // A few members built by applying a refined function to earlier members.
  Sequent fun_goal;
  fun_goal.concl = Conclusion::truth(mk::fun_type(mk::bool_(), "_", mk::bool_()));
  ProofState st = ProofState::root(fun_goal);
  TacticPtr not_script = Tactic::make_surface_lam(
      {"x"},
      Tactic::make_seq_list(
          Tactic::make_rule(RuleApplication::on_hyp("bool/elim", "x")),
          {Tactic::make_rule(RuleApplication::named("bool/intro/false")),
           Tactic::make_rule(RuleApplication::named("bool/intro/true")),
           Tactic::make_auto()}));
  TacticResult r = run_tactic(st, st.root_goal(), not_script);
  TermPtr not_fun =
      std::get<TermPtr>(extract(std::get<TacticOutcome>(r).state));
  for (int k = 0; k < 40; ++k)
    members.push_back(mk::app(not_fun, members[static_cast<std::size_t>(k)]));
  return members;
}

// Single-step commutation: after every substitution of the free dimensions
// into {0, 1, fresh}, evaluation of the redex and of its reduct stop at the
// same term.
bool single_step_commutes(const TermPtr& m, const TermPtr& next) {
  std::set<Symbol> fd = free_dims(m);
  for (const auto& d : free_dims(next)) fd.insert(d);
  std::vector<Symbol> names(fd.begin(), fd.end());
  Symbol fresh = fresh_symbol("_f", fd);
  const DimExpr targets[3] = {DimExpr::zero(), DimExpr::one(),
                              DimExpr::make_name(fresh)};
  std::size_t total = 1;
  for (std::size_t k = 0; k < names.size(); ++k) total *= 3;
  for (std::size_t mask = 0; mask < total; ++mask) {
    DimSubst s;
    std::size_t v = mask;
    for (std::size_t k = 0; k < names.size(); ++k) {
      s.set(names[k], targets[v % 3]);
      v /= 3;
    }
    EvalResult a = eval(dim_subst(m, s), 4000);
    EvalResult b = eval(dim_subst(next, s), 4000);
    if (a.status == EvalResult::Status::FuelExhausted ||
        b.status == EvalResult::Status::FuelExhausted)
      return false;
    if (a.status != b.status) return false;
    if (!alpha_eq(a.term, b.term)) return false;
  }
  return true;
}

// --- criterion 1 ------------------------------------------------------------

void criterion_1(const std::vector<TermPtr>& members) {
  bool pass = members.size() >= 200;
  std::size_t canonical = 0;
  for (const auto& m : members) {
    if (!free_vars(m).empty()) {
      pass = false;
      continue;
    }
    EvalResult r = eval(m, 10000);
    if (r.ok() && (r.term->tag() == Tag::True || r.term->tag() == Tag::False))
      ++canonical;
    else
      pass = false;
  }
  report(1, "canonicity: refined bool members evaluate to tt or ff", pass,
         std::to_string(canonical) + "/" + std::to_string(members.size()) +
             " canonical");
}

// --- criterion 2 ------------------------------------------------------------

void criterion_2(const std::vector<TermPtr>& members) {
  const TermPtr x = mk::var("x");
  std::vector<TermPtr> families = {
      x,
      mk::if_(x, mk::false_(), mk::true_()),
      mk::if_(x, x, x),
      mk::if_(x, mk::true_(), mk::true_()),
      mk::if_(mk::if_(x, x, mk::true_()), mk::false_(), x),
      mk::app(mk::lam("y", x), mk::true_()),
      mk::app(mk::lam("y", mk::if_(mk::var("y"), x, mk::true_())), x),
      mk::fst(mk::pair(x, mk::true_())),
      mk::snd(mk::pair(mk::false_(), x)),
      mk::if_(mk::if_(x, mk::true_(), mk::false_()),
              mk::if_(x, mk::false_(), mk::true_()), x),
  };

  bool pass = families.size() == 10;
  // The open equation, one per family.
  for (const auto& n : families) {
    TermPtr rhs = mk::if_(x, subst_term(n, mk::true_(), "x"),
                          subst_term(n, mk::false_(), "x"));
    Verdict v = check_open({{"x", mk::bool_()}}, {},
                           ClosedJudgment::eq_mem(mk::bool_(), n, rhs));
    if (!v.is_holds()) pass = false;
  }
  // Every closed instance from the criterion-1 corpus.
  std::size_t checked = 0;
  for (const auto& n : families) {
    for (const auto& m : members) {
      TermPtr lhs = subst_term(n, m, "x");
      TermPtr rhs = mk::if_(m, subst_term(n, mk::true_(), "x"),
                            subst_term(n, mk::false_(), "x"));
      Verdict v = check_closed(ClosedJudgment::eq_mem(mk::bool_(), lhs, rhs));
      if (v.is_holds())
        ++checked;
      else
        pass = false;
    }
  }

  // And the signature-file instance proved by bool/elim + equality rules.
  auto parsed = parse_signature(slurp("corpus/shannon.prl"));
  bool sig_ok = std::holds_alternative<Signature>(parsed) &&
                check_signature(std::get<Signature>(parsed)).all_ok();
  if (!sig_ok) pass = false;

  report(2, "shannon expansion over the generated corpus and shannon.prl", pass,
         std::to_string(checked) + " closed instances, " +
             std::to_string(families.size()) + " open equations" +
             (sig_ok ? ", signature ok" : ", signature FAILED"));
}

// --- criterion 3 ------------------------------------------------------------

void criterion_3() {
  TermPtr m = mk::circle_rec("_", mk::bool_(), mk::loop(DimExpr::make_name("i")),
                             mk::true_(), "_", mk::false_());
  bool pass = true;

  EvalResult direct = eval(m, 10000);
  pass = pass && direct.ok() && alpha_eq(direct.term, mk::false_());

  EvalResult faced =
      eval(dim_subst(m, DimSubst::single("i", DimExpr::zero())), 10000);
  pass = pass && faced.ok() && alpha_eq(faced.term, mk::true_());

  pass = pass && !commutes_with_subst(m);
  pass = pass && !classify_stability(m);
  pass = pass && classify_stability(mk::loop(DimExpr::zero()));

  report(3, "instability counterexample is reproduced exactly", pass);
}

// --- criterion 4 ------------------------------------------------------------

void criterion_4() {
  bool pass = true;
  for (const DimExpr& d : {DimExpr::zero(), DimExpr::one()}) {
    EvalResult r = eval(mk::loop(d), 10000);
    pass = pass && r.ok() && alpha_eq(r.term, mk::base()) && r.steps == 1;
  }
  report(4, "loop 0 and loop 1 evaluate to base in exactly one step", pass);
}

// --- criterion 5 ------------------------------------------------------------

void criterion_5() {
  bool pass = true;
  std::string detail;

  auto stmt = parse_term_text("(x : bool) -> (y : bool) -> (z : bool) * bool");
  auto script = parse_tactic_text("lam x y => {use x, use y}");
  if (std::holds_alternative<ParseError>(stmt) ||
      std::holds_alternative<ParseError>(script)) {
    report(5, "worked pair example", false, "parse failure");
    return;
  }

  ProofState st = ProofState::root(theorem_goal(std::get<TermPtr>(stmt)));
  TacticResult run = run_tactic(st, st.root_goal(), std::get<TacticPtr>(script));
  if (std::holds_alternative<TacticFailure>(run)) {
    pass = false;
    detail = "script failed";
  } else {
    const ProofState& done = std::get<TacticOutcome>(run).state;
    pass = pass && done.complete();
    auto ext = extract(done);
    TermPtr expected =
        mk::lam("x", mk::lam("y", mk::pair(mk::var("x"), mk::var("y"))));
    pass = pass && std::holds_alternative<TermPtr>(ext) &&
           alpha_eq(std::get<TermPtr>(ext), expected);
  }

  // The sigma step emits exactly three subgoals, and auto discharges the
  // auxiliary typehood goal.
  ProofState manual = ProofState::root(theorem_goal(std::get<TermPtr>(stmt)));
  auto step1 =
      apply_rule(manual, manual.root_goal(), RuleApplication::named("pi/intro"));
  auto s1 = std::get<Refined>(step1);
  ProofState cur = auto_tactic(s1.state, s1.subgoals[1], 3);
  auto step2 = apply_rule(cur, s1.subgoals[0], RuleApplication::named("pi/intro"));
  auto s2 = std::get<Refined>(step2);
  cur = auto_tactic(s2.state, s2.subgoals[1], 3);
  auto step3 =
      apply_rule(cur, s2.subgoals[0], RuleApplication::named("sigma/intro"));
  if (std::holds_alternative<RuleError>(step3)) {
    pass = false;
  } else {
    auto s3 = std::get<Refined>(step3);
    pass = pass && s3.subgoals.size() == 3;
    ProofState aux_closed = auto_tactic(s3.state, s3.subgoals[2], 4);
    pass = pass && !aux_closed.is_open(s3.subgoals[2]);
  }

  report(5, "lam x y => {use x, use y} closes the pair goal with <x, y>", pass,
         detail);
}

// --- criterion 6 ------------------------------------------------------------

void criterion_6() {
  gen::Rng rng(0xDEAD1);
  std::vector<Symbol> dims = {"i", "j"};
  int stable_steps = 0;
  int violations = 0;
  for (int k = 0; k < 1000; ++k) {
    TermPtr t = gen::any_term(rng, 4, dims);
    StepResult r = step(t);
    if (!r.stepped() || !r.stable) continue;
    ++stable_steps;
    if (!single_step_commutes(t, r.next)) ++violations;
  }
  report(6, "stability soundness over 1000 generated terms",
         violations == 0 && stable_steps > 100,
         std::to_string(stable_steps) + " stable steps, " +
             std::to_string(violations) + " violations");
}

// --- criterion 7 ------------------------------------------------------------

void criterion_7() {
  bool pass = true;
  int thms = 0, checkable = 0, holds = 0;
  for (const auto& file : kCorpusFiles) {
    auto parsed = parse_signature(slurp(file));
    if (std::holds_alternative<ParseError>(parsed)) {
      pass = false;
      continue;
    }
    const Signature& sig = std::get<Signature>(parsed);
    CheckReport rep = check_signature(sig);
    std::map<Symbol, TermPtr> env = reference_env(sig, rep);
    for (std::size_t k = 0; k < sig.decls.size(); ++k) {
      const Declaration& d = sig.decls[k];
      if (d.sort != Declaration::Sort::Thm) continue;
      ++thms;
      if (rep.decls[k].status != DeclReport::Status::Ok) {
        pass = false;
        continue;
      }
      TermPtr statement = expand_references(d.type, env);
      Verdict v = check_closed(
          ClosedJudgment::mem(statement, rep.decls[k].extract), 10000);
      if (v.is_unknown()) continue;  // not oracle-checkable
      ++checkable;
      if (v.is_holds())
        ++holds;
      else
        pass = false;
    }
  }
  pass = pass && thms >= 15 && checkable == holds && checkable >= 10;
  report(7, "extraction soundness over the shipped corpus", pass,
         std::to_string(thms) + " theorems, " + std::to_string(checkable) +
             " oracle-checkable, " + std::to_string(holds) + " hold");
}

// --- criterion 8 ------------------------------------------------------------

void criterion_8() {
  gen::Rng rng(0xFEED5);
  bool pass = true;

  std::vector<TermPtr> goal_types = {
      mk::bool_(),
      mk::fun_type(mk::bool_(), "_", mk::bool_()),
      mk::pair_type(mk::bool_(), "_", mk::bool_()),
      mk::fun_type(mk::bool_(), "_", mk::pair_type(mk::bool_(), "_", mk::bool_())),
      mk::exact_eq(mk::bool_(), mk::true_(), mk::true_()),
      mk::path_type("i", mk::bool_(), mk::true_(), mk::true_()),
  };
  auto rule = [](const char* n) {
    return Tactic::make_rule(RuleApplication::named(n));
  };
  std::vector<TacticPtr> pool = {
      rule("pi/intro"),     rule("sigma/intro"), rule("bool/intro/true"),
      rule("path/intro"),   rule("eq/intro"),    rule("eq/refl"),
      Tactic::make_auto(2), Tactic::make_id(),   Tactic::make_fail("x"),
      Tactic::make_or_else(rule("sigma/intro"), Tactic::make_id()),
  };
  auto pick = [&](std::vector<TacticPtr>& v) {
    return v[static_cast<std::size_t>(rng.below(static_cast<int>(v.size())))];
  };

  int trials = 0;
  for (int k = 0; k < 400; ++k) {
    Sequent s;
    s.concl = Conclusion::truth(goal_types[static_cast<std::size_t>(
        rng.below(static_cast<int>(goal_types.size())))]);
    ProofState st = ProofState::root(s);
    TacticPtr a = pick(pool), b = pick(pool), c = pick(pool);

    // Seq associativity up to resulting state.
    TacticResult l = run_tactic(st, st.root_goal(),
                                Tactic::make_seq(Tactic::make_seq(a, b), c));
    TacticResult r = run_tactic(st, st.root_goal(),
                                Tactic::make_seq(a, Tactic::make_seq(b, c)));
    bool lf = std::holds_alternative<TacticFailure>(l);
    bool rf = std::holds_alternative<TacticFailure>(r);
    if (lf != rf) pass = false;
    if (!lf && !rf) {
      ++trials;
      auto& lo = std::get<TacticOutcome>(l);
      auto& ro = std::get<TacticOutcome>(r);
      if (lo.produced.size() != ro.produced.size()) pass = false;
      if (!alpha_eq(lo.state.partial_extract(), ro.state.partial_extract()))
        pass = false;
    }

    // Id units.
    TacticResult plain = run_tactic(st, st.root_goal(), a);
    TacticResult lid =
        run_tactic(st, st.root_goal(), Tactic::make_seq(Tactic::make_id(), a));
    TacticResult rid =
        run_tactic(st, st.root_goal(), Tactic::make_seq(a, Tactic::make_id()));
    bool pf = std::holds_alternative<TacticFailure>(plain);
    if (pf != std::holds_alternative<TacticFailure>(lid) ||
        pf != std::holds_alternative<TacticFailure>(rid))
      pass = false;
    if (!pf) {
      auto& po = std::get<TacticOutcome>(plain);
      auto& li = std::get<TacticOutcome>(lid);
      auto& ri = std::get<TacticOutcome>(rid);
      if (po.produced != li.produced || po.produced != ri.produced) pass = false;
      if (!alpha_eq(po.state.partial_extract(), li.state.partial_extract()) ||
          !alpha_eq(po.state.partial_extract(), ri.state.partial_extract()))
        pass = false;
    }

    // OrElse transactionality: a failing left branch is invisible.
    TacticResult fb = run_tactic(
        st, st.root_goal(), Tactic::make_or_else(Tactic::make_fail("boom"), a));
    if (pf != std::holds_alternative<TacticFailure>(fb)) pass = false;
    if (!pf) {
      auto& po = std::get<TacticOutcome>(plain);
      auto& fo = std::get<TacticOutcome>(fb);
      if (po.produced != fo.produced) pass = false;
      if (fo.state.journal_length() != po.state.journal_length()) pass = false;
    }
  }

  // SeqList arity errors, with the exact counts.
  Sequent pair_goal;
  pair_goal.concl = Conclusion::truth(mk::pair_type(mk::bool_(), "_", mk::bool_()));
  ProofState st = ProofState::root(pair_goal);
  for (int wrong = 0; wrong <= 5; ++wrong) {
    if (wrong == 3) continue;
    std::vector<TacticPtr> branches(static_cast<std::size_t>(wrong),
                                    Tactic::make_id());
    TacticResult r = run_tactic(
        st, st.root_goal(),
        Tactic::make_seq_list(rule("sigma/intro"), std::move(branches)));
    if (!std::holds_alternative<TacticFailure>(r)) {
      pass = false;
      continue;
    }
    const TacticFailure& f = std::get<TacticFailure>(r);
    if (!f.arity || f.arity->first != wrong || f.arity->second != 3) pass = false;
  }

  report(8, "combinator laws (seq assoc, id units, orelse, seqlist arity)", pass,
         std::to_string(trials) + " associativity trials");
}

}  // namespace

int main() {
  std::vector<TermPtr> members = bool_member_corpus();
  criterion_1(members);
  criterion_2(members);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures == 0)
    std::cout << "all acceptance criteria hold\n";
  else
    std::cout << g_failures << " criterion(s) failed\n";
  return g_failures == 0 ? 0 : 1;
}
