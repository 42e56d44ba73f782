#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cartprl/printer.hpp"
#include "cartprl/tactics.hpp"
#include "gen.hpp"

using namespace cartprl;

namespace {

Sequent truth_goal(TermPtr ty) {
  Sequent s;
  s.concl = Conclusion::truth(std::move(ty));
  return s;
}

TacticOutcome ok(TacticResult r) {
  if (std::holds_alternative<TacticFailure>(r)) {
    const auto& f = std::get<TacticFailure>(r);
    FAIL("tactic failed at ", f.path, ": ", f.reason);
  }
  return std::get<TacticOutcome>(std::move(r));
}

TacticPtr rule(const std::string& name) {
  return Tactic::make_rule(RuleApplication::named(name));
}

}  // namespace

TEST_CASE("seq then auto closes a function goal") {
  ProofState st = ProofState::root(
      truth_goal(mk::fun_type(mk::bool_(), "_", mk::bool_())));
  TacticPtr t = Tactic::make_seq(rule("pi/intro"), Tactic::make_auto(3));
  TacticOutcome out = ok(run_tactic(st, st.root_goal(), t));
  CHECK(out.state.complete());
  CHECK(out.produced.empty());
}

TEST_CASE("orelse takes the second branch transactionally") {
  ProofState st = ProofState::root(
      truth_goal(mk::fun_type(mk::bool_(), "_", mk::bool_())));
  TacticPtr adventurous =
      Tactic::make_or_else(rule("sigma/intro"), rule("pi/intro"));
  TacticOutcome a = ok(run_tactic(st, st.root_goal(), adventurous));
  TacticOutcome b = ok(run_tactic(st, st.root_goal(), rule("pi/intro")));
  CHECK(a.produced == b.produced);
  CHECK(alpha_eq(a.state.partial_extract(), b.state.partial_extract()));
  CHECK(a.state.version() == b.state.version());
}

TEST_CASE("a failing tactic leaves no observable change") {
  ProofState st = ProofState::root(truth_goal(mk::bool_()));
  TacticResult r = run_tactic(st, st.root_goal(), rule("sigma/intro"));
  REQUIRE(std::holds_alternative<TacticFailure>(r));
  const TacticFailure& f = std::get<TacticFailure>(r);
  CHECK(f.path.find("sigma/intro") != std::string::npos);
  CHECK(st.journal_length() == 0);
  CHECK(st.open_goals().size() == 1);
}

TEST_CASE("seqlist arity is checked against produced subgoals") {
  ProofState st = ProofState::root(
      truth_goal(mk::pair_type(mk::bool_(), "_", mk::bool_())));
  TacticPtr t = Tactic::make_seq_list(
      rule("sigma/intro"), {Tactic::make_id(), Tactic::make_id()});
  TacticResult r = run_tactic(st, st.root_goal(), t);
  REQUIRE(std::holds_alternative<TacticFailure>(r));
  const TacticFailure& f = std::get<TacticFailure>(r);
  REQUIRE(f.arity.has_value());
  CHECK(f.arity->first == 2);
  CHECK(f.arity->second == 3);
}

TEST_CASE("auto discharges auxiliary typehood goals") {
  Sequent aux;
  aux.hyps.push_back(Hyp{"x", mk::bool_(), Kind::Kan});
  aux.concl = Conclusion::type(mk::bool_(), Kind::Kan);
  ProofState st = ProofState::root(aux);
  ProofState closed = auto_tactic(st, st.root_goal(), 1);
  CHECK(closed.complete());
}

TEST_CASE("auto proves bool goals with tt first") {
  ProofState st = ProofState::root(truth_goal(mk::bool_()));
  ProofState closed = auto_tactic(st, st.root_goal(), 1);
  REQUIRE(closed.complete());
  CHECK(alpha_eq(std::get<TermPtr>(extract(closed)), mk::true_()));
}

TEST_CASE("auto leaves unprovable goals open and untouched") {
  ProofState st = ProofState::root(
      truth_goal(mk::exact_eq(mk::bool_(), mk::true_(), mk::false_())));
  ProofState after = auto_tactic(st, st.root_goal(), 4);
  CHECK(after.open_goals() == st.open_goals());
  CHECK(after.is_open(st.root_goal()));
}

TEST_CASE("auto is monotone on open goal count") {
  gen::Rng rng(321);
  std::vector<TermPtr> goals = {
      mk::bool_(),
      mk::pair_type(mk::bool_(), "_", mk::bool_()),
      mk::fun_type(mk::bool_(), "_", mk::pair_type(mk::bool_(), "_", mk::bool_())),
      mk::exact_eq(mk::bool_(), mk::true_(), mk::false_()),
      mk::path_type("i", mk::bool_(), mk::true_(), mk::true_()),
      mk::circle(),
  };
  for (const auto& g : goals) {
    ProofState st = ProofState::root(truth_goal(g));
    for (int depth = 0; depth <= 4; ++depth) {
      ProofState after = auto_tactic(st, st.root_goal(), depth);
      CHECK(after.open_goals().size() <= st.open_goals().size());
    }
  }
}

TEST_CASE("id is a unit for seq on both sides") {
  std::vector<TermPtr> goals = {
      mk::fun_type(mk::bool_(), "_", mk::bool_()),
      mk::pair_type(mk::bool_(), "_", mk::bool_()),
      mk::bool_(),
  };
  std::vector<TacticPtr> tactics = {rule("pi/intro"), rule("sigma/intro"),
                                    rule("bool/intro/true"), Tactic::make_auto(2)};
  for (const auto& g : goals) {
    ProofState st = ProofState::root(truth_goal(g));
    for (const auto& t : tactics) {
      TacticResult plain = run_tactic(st, st.root_goal(), t);
      TacticResult left = run_tactic(
          st, st.root_goal(), Tactic::make_seq(Tactic::make_id(), t));
      TacticResult right = run_tactic(
          st, st.root_goal(), Tactic::make_seq(t, Tactic::make_id()));
      bool pf = std::holds_alternative<TacticFailure>(plain);
      CHECK(pf == std::holds_alternative<TacticFailure>(left));
      CHECK(pf == std::holds_alternative<TacticFailure>(right));
      if (pf) continue;
      auto& po = std::get<TacticOutcome>(plain);
      auto& lo = std::get<TacticOutcome>(left);
      auto& ro = std::get<TacticOutcome>(right);
      CHECK(po.produced == lo.produced);
      CHECK(po.produced == ro.produced);
      CHECK(alpha_eq(po.state.partial_extract(), lo.state.partial_extract()));
      CHECK(alpha_eq(po.state.partial_extract(), ro.state.partial_extract()));
    }
  }
}

TEST_CASE("seq is associative up to the resulting state") {
  TermPtr goal = mk::fun_type(
      mk::bool_(), "_", mk::pair_type(mk::bool_(), "_", mk::bool_()));
  TacticPtr a = rule("pi/intro");
  TacticPtr b = Tactic::make_or_else(rule("sigma/intro"), Tactic::make_id());
  TacticPtr c = Tactic::make_auto(2);

  ProofState st = ProofState::root(truth_goal(goal));
  TacticResult l = run_tactic(st, st.root_goal(),
                              Tactic::make_seq(Tactic::make_seq(a, b), c));
  TacticResult r = run_tactic(st, st.root_goal(),
                              Tactic::make_seq(a, Tactic::make_seq(b, c)));
  REQUIRE_FALSE(std::holds_alternative<TacticFailure>(l));
  REQUIRE_FALSE(std::holds_alternative<TacticFailure>(r));
  auto& lo = std::get<TacticOutcome>(l);
  auto& ro = std::get<TacticOutcome>(r);
  CHECK(lo.produced.size() == ro.produced.size());
  CHECK(alpha_eq(lo.state.partial_extract(), ro.state.partial_extract()));
}

TEST_CASE("elaboration unfolds the surface forms") {
  // lam x y => {use x, use y}
  TacticPtr script = Tactic::make_surface_lam(
      {"x", "y"},
      Tactic::make_surface_tuple({Tactic::make_surface_use("x"),
                                  Tactic::make_surface_use("y")}));
  TacticPtr elaborated = elaborate_surface(script);
  CHECK(elaborated->kind == Tactic::Kind::IntroLayer);
  // Idempotent.
  CHECK(elaborate_surface(elaborated).get() == elaborated.get());

  // Zero binders: unchanged.
  TacticPtr plain = rule("bool/intro/true");
  CHECK(elaborate_surface(Tactic::make_surface_lam({}, plain)).get() == plain.get());
}

TEST_CASE("the worked pair example closes with the expected extract") {
  // (x : bool) -> (y : bool) -> (x : bool) * bool, via
  // lam x y => {use x, use y}.
  TermPtr goal = mk::fun_type(
      mk::bool_(), "x",
      mk::fun_type(mk::bool_(), "y", mk::pair_type(mk::bool_(), "_", mk::bool_())));
  TacticPtr script = Tactic::make_surface_lam(
      {"x", "y"},
      Tactic::make_surface_tuple({Tactic::make_surface_use("x"),
                                  Tactic::make_surface_use("y")}));
  ProofState st = ProofState::root(truth_goal(goal));
  TacticOutcome out = ok(run_tactic(st, st.root_goal(), script));
  REQUIRE(out.state.complete());
  TermPtr expected =
      mk::lam("x", mk::lam("y", mk::pair(mk::var("x"), mk::var("y"))));
  CHECK(alpha_eq(std::get<TermPtr>(extract(out.state)), expected));
}

TEST_CASE("with names the introduced hypothesis") {
  TermPtr goal = mk::fun_type(mk::bool_(), "_", mk::bool_());
  TacticPtr t = Tactic::make_with(
      "banana", Tactic::make_seq_list(rule("pi/intro"),
                                      {Tactic::make_id(), Tactic::make_auto(2)}));
  ProofState st = ProofState::root(truth_goal(goal));
  TacticOutcome out = ok(run_tactic(st, st.root_goal(), t));
  REQUIRE(out.produced.size() == 1);
  Sequent body = out.state.goal(out.produced[0]);
  REQUIRE(body.hyps.size() == 1);
  CHECK(body.hyps[0].name == "banana");
}

TEST_CASE("use of an unknown hypothesis fails at run time") {
  ProofState st = ProofState::root(truth_goal(mk::bool_()));
  TacticResult r = run_tactic(st, st.root_goal(), Tactic::make_surface_use("z"));
  REQUIRE(std::holds_alternative<TacticFailure>(r));
}

TEST_CASE("fail reports its combinator path") {
  ProofState st = ProofState::root(truth_goal(mk::bool_()));
  TacticPtr t = Tactic::make_seq(Tactic::make_id(), Tactic::make_fail("nope"));
  TacticResult r = run_tactic(st, st.root_goal(), t);
  REQUIRE(std::holds_alternative<TacticFailure>(r));
  const TacticFailure& f = std::get<TacticFailure>(r);
  CHECK(f.reason == "nope");
  CHECK(f.path.find("seq.2") != std::string::npos);
}
