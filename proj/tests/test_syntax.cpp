#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cartprl/syntax.hpp"
#include "gen.hpp"

using namespace cartprl;

TEST_CASE("alpha equivalence is blind to bound names") {
  TermPtr a = mk::lam("x", mk::var("x"));
  TermPtr b = mk::lam("y", mk::var("y"));
  CHECK(alpha_eq(a, b));

  TermPtr k1 = mk::lam("x", mk::lam("y", mk::var("x")));
  TermPtr k2 = mk::lam("x", mk::lam("y", mk::var("y")));
  CHECK_FALSE(alpha_eq(k1, k2));

  CHECK_FALSE(alpha_eq(mk::loop(DimExpr::make_name("i")),
                       mk::loop(DimExpr::make_name("j"))));
}

TEST_CASE("alpha equivalence ignores display hints") {
  TermPtr a = mk::fun_type(mk::bool_(), "x", mk::bool_());
  TermPtr b = mk::fun_type(mk::bool_(), "zzz", mk::bool_());
  CHECK(alpha_eq(a, b));
}

TEST_CASE("term substitution") {
  CHECK(alpha_eq(subst_term(mk::var("x"), mk::true_(), "x"), mk::true_()));

  TermPtr ident = mk::lam("x", mk::var("x"));
  CHECK(alpha_eq(subst_term(ident, mk::true_(), "x"), ident));

  TermPtr p = mk::pair(mk::var("x"), mk::var("y"));
  CHECK(alpha_eq(subst_term(p, mk::false_(), "y"),
                 mk::pair(mk::var("x"), mk::false_())));
}

TEST_CASE("dimension substitution") {
  DimSubst to0 = DimSubst::single("i", DimExpr::zero());

  CHECK(alpha_eq(dim_subst(mk::loop(DimExpr::make_name("i")), to0),
                 mk::loop(DimExpr::zero())));

  TermPtr abs = mk::dim_abs("i", mk::loop(DimExpr::make_name("i")));
  CHECK(alpha_eq(dim_subst(abs, to0), abs));

  TermPtr rec = mk::circle_rec("x", mk::bool_(), mk::loop(DimExpr::make_name("i")),
                               mk::true_(), "k", mk::false_());
  TermPtr renamed = dim_subst(rec, DimSubst::single("i", DimExpr::make_name("j")));
  TermPtr expected = mk::circle_rec("x", mk::bool_(), mk::loop(DimExpr::make_name("j")),
                                    mk::true_(), "k", mk::false_());
  CHECK(alpha_eq(renamed, expected));
}

TEST_CASE("free dimension computation") {
  CHECK(free_dims(mk::loop(DimExpr::make_name("i"))) == std::set<Symbol>{"i"});
  CHECK(free_dims(mk::dim_abs("i", mk::loop(DimExpr::make_name("i")))).empty());
  TermPtr p = mk::path_type("i", mk::circle(), mk::loop(DimExpr::make_name("j")),
                            mk::base());
  CHECK(free_dims(p) == std::set<Symbol>{"j"});
}

TEST_CASE("abstraction and instantiation invert") {
  TermPtr body = mk::app(mk::var("f"), mk::var("x"));
  TermPtr closed = abstract_term(body, "x");
  CHECK(alpha_eq(instantiate_term(closed, mk::var("x")), body));

  TermPtr dbody = mk::loop(DimExpr::make_name("i"));
  TermPtr dclosed = abstract_dim(dbody, "i");
  CHECK(alpha_eq(instantiate_dim(dclosed, DimExpr::make_name("i")), dbody));
}

TEST_CASE("properties over generated terms") {
  gen::Rng rng(20088);
  std::vector<Symbol> dims = {"i", "j"};
  std::vector<TermPtr> terms;
  for (int k = 0; k < 200; ++k) terms.push_back(gen::any_term(rng, 4, dims));

  SUBCASE("alpha_eq is an equivalence relation") {
    for (const auto& t : terms) CHECK(alpha_eq(t, t));
    for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
      bool ab = alpha_eq(terms[k], terms[k + 1]);
      bool ba = alpha_eq(terms[k + 1], terms[k]);
      CHECK(ab == ba);
    }
    // Transitivity through substituted copies (guaranteed-equal pairs).
    for (const auto& t : terms) {
      TermPtr c1 = dim_subst(t, DimSubst{});
      CHECK(alpha_eq(t, c1));
      CHECK(alpha_eq(c1, t));
    }
  }

  SUBCASE("empty dimension substitution is the identity") {
    for (const auto& t : terms) CHECK(alpha_eq(dim_subst(t, DimSubst{}), t));
  }

  SUBCASE("substituting a dimension not free in the term is the identity") {
    for (const auto& t : terms) {
      Symbol fresh = fresh_symbol("zz", free_dims(t));
      CHECK(alpha_eq(dim_subst(t, DimSubst::single(fresh, DimExpr::one())), t));
    }
  }

  SUBCASE("name-disjoint substitutions commute") {
    DimSubst s1 = DimSubst::single("i", DimExpr::zero());
    DimSubst s2 = DimSubst::single("j", DimExpr::one());
    for (const auto& t : terms) {
      CHECK(alpha_eq(dim_subst(dim_subst(t, s1), s2),
                     dim_subst(dim_subst(t, s2), s1)));
    }
  }

  SUBCASE("substitution composition law") {
    // s2 after s1 with s1 : i -> j, s2 : j -> 0 composes to i,j -> 0.
    DimSubst s1 = DimSubst::single("i", DimExpr::make_name("j"));
    DimSubst s2 = DimSubst::single("j", DimExpr::zero());
    DimSubst composed;
    composed.set("i", DimExpr::zero()).set("j", DimExpr::zero());
    for (const auto& t : terms) {
      CHECK(alpha_eq(dim_subst(dim_subst(t, s1), s2), dim_subst(t, composed)));
    }
  }

  SUBCASE("generated terms are locally closed") {
    for (const auto& t : terms) CHECK(locally_closed(t));
  }
}
