// Seeded random generators shared by the property suites and the acceptance
// run. Deterministic: same seed, same terms.

#pragma once

#include <random>
#include <vector>

#include "cartprl/refiner.hpp"
#include "cartprl/syntax.hpp"
#include "cartprl/tactics.hpp"

namespace cartprl::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool flip() { return below(2) == 0; }

 private:
  std::mt19937_64 rng_;
};

// Arbitrary term-closed terms, possibly ill-typed, built redex-rich so the
// stepper has work to do. Free dimensions are drawn from `dims`.
inline TermPtr any_term(Rng& r, int depth, const std::vector<Symbol>& dims) {
  auto dim = [&]() -> DimExpr {
    int k = r.below(dims.empty() ? 2 : 3);
    if (k == 0) return DimExpr::zero();
    if (k == 1) return DimExpr::one();
    return DimExpr::make_name(dims[static_cast<std::size_t>(r.below(
        static_cast<int>(dims.size())))]);
  };
  if (depth <= 0) {
    switch (r.below(6)) {
      case 0: return mk::true_();
      case 1: return mk::false_();
      case 2: return mk::base();
      case 3: return mk::loop(dim());
      case 4: return mk::ax();
      default: return mk::bool_();
    }
  }
  switch (r.below(12)) {
    case 0: return mk::app(mk::lam("x", any_term(r, depth - 1, dims)),
                           any_term(r, depth - 1, dims));
    case 1: {
      TermPtr body = any_term(r, depth - 1, dims);
      // Encourage bound-variable use.
      if (r.flip()) body = mk::var("x");
      return mk::app(mk::lam("x", body), any_term(r, depth - 1, dims));
    }
    case 2: return mk::fst(mk::pair(any_term(r, depth - 1, dims),
                                    any_term(r, depth - 1, dims)));
    case 3: return mk::snd(mk::pair(any_term(r, depth - 1, dims),
                                    any_term(r, depth - 1, dims)));
    case 4: return mk::if_(r.flip() ? mk::true_() : mk::false_(),
                           any_term(r, depth - 1, dims),
                           any_term(r, depth - 1, dims));
    case 5: return mk::if_(any_term(r, depth - 1, dims),
                           any_term(r, depth - 1, dims),
                           any_term(r, depth - 1, dims));
    case 6: return mk::circle_rec("x", mk::bool_(), any_term(r, depth - 1, dims),
                                  any_term(r, depth - 1, dims), "i",
                                  any_term(r, depth - 1, dims));
    case 7: {
      Symbol i = "j";
      return mk::dim_app(mk::dim_abs(i, any_term(r, depth - 1, dims)), dim());
    }
    case 8: return mk::loop(dim());
    case 9: {
      std::vector<Symbol> inner = dims;
      inner.push_back("j");
      return mk::dim_abs("j", any_term(r, depth - 1, inner));
    }
    case 10: return mk::circle_rec("x", mk::bool_(), mk::loop(dim()),
                                   any_term(r, depth - 1, dims), "i",
                                   any_term(r, depth - 1, dims));
    default: return mk::pair(any_term(r, depth - 1, dims),
                             any_term(r, depth - 1, dims));
  }
}

// Closed boolean members built through the refiner: a random rule walk over a
// telescope of boolean hypotheses, extracted and then closed by substituting
// boolean values.
inline TermPtr refined_bool_member(Rng& r, int hyp_count) {
  Sequent root;
  std::vector<Symbol> names;
  for (int k = 0; k < hyp_count; ++k) {
    Symbol x = "h" + std::to_string(k);
    names.push_back(x);
    root.hyps.push_back(Hyp{x, mk::bool_(), Kind::Kan});
  }
  root.concl = Conclusion::truth(mk::bool_());

  ProofState state = ProofState::root(root);
  int budget = 12;
  while (!state.complete() && budget-- > 0) {
    GoalId g = state.open_goals().front();
    RuleApplication app;
    int pick = r.below(hyp_count > 0 ? 4 : 2);
    switch (pick) {
      case 0: app = RuleApplication::named("bool/intro/true"); break;
      case 1: app = RuleApplication::named("bool/intro/false"); break;
      case 2:
        app = RuleApplication::on_hyp(
            "hypothesis", names[static_cast<std::size_t>(r.below(hyp_count))]);
        break;
      default:
        app = RuleApplication::on_hyp(
            "bool/elim", names[static_cast<std::size_t>(r.below(hyp_count))]);
        break;
    }
    ApplyResult res = apply_rule(state, g, app);
    if (std::holds_alternative<RuleError>(res)) continue;
    state = std::get<Refined>(res).state;
    // Discharge motive typehood goals as they appear.
    for (GoalId open : state.open_goals())
      state = auto_tactic(state, open, 2);
  }
  // Close whatever remains with tt.
  while (!state.complete()) {
    GoalId g = state.open_goals().front();
    ProofState next = auto_tactic(state, g, 3);
    if (next.open_goals().size() == state.open_goals().size()) break;
    state = next;
  }
  if (!state.complete()) return mk::true_();

  auto ext = extract(state);
  TermPtr m = std::get<TermPtr>(ext);
  for (const auto& x : names)
    m = subst_term(m, r.flip() ? mk::true_() : mk::false_(), x);
  return m;
}

}  // namespace cartprl::gen
