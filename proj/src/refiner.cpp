#include "cartprl/refiner.hpp"

#include <algorithm>
#include <cassert>

#include "cartprl/dynamics.hpp"
#include "cartprl/printer.hpp"

namespace cartprl {

Conclusion Conclusion::truth(TermPtr a) {
  Conclusion c;
  c.form = Form::True;
  c.a = std::move(a);
  return c;
}
Conclusion Conclusion::type(TermPtr a, Kind k) {
  Conclusion c;
  c.form = Form::Type;
  c.a = std::move(a);
  c.kind = k;
  return c;
}
Conclusion Conclusion::eq_type(TermPtr a, TermPtr b, Kind k) {
  Conclusion c;
  c.form = Form::EqType;
  c.a = std::move(a);
  c.b = std::move(b);
  c.kind = k;
  return c;
}
Conclusion Conclusion::mem(TermPtr a, TermPtr m) {
  Conclusion c;
  c.form = Form::Mem;
  c.a = std::move(a);
  c.m = std::move(m);
  return c;
}
Conclusion Conclusion::eq_mem(TermPtr a, TermPtr m, TermPtr n) {
  Conclusion c;
  c.form = Form::EqMem;
  c.a = std::move(a);
  c.m = std::move(m);
  c.n = std::move(n);
  return c;
}

bool Sequent::has_dim(const Symbol& i) const {
  return std::find(dims.begin(), dims.end(), i) != dims.end();
}

const Hyp* Sequent::find_hyp(const Symbol& x) const {
  for (const auto& h : hyps)
    if (h.name == x) return &h;
  return nullptr;
}

std::set<Symbol> Sequent::used_names() const {
  std::set<Symbol> out;
  for (const auto& h : hyps) {
    out.insert(h.name);
    for (const auto& v : free_vars(h.type)) out.insert(v);
  }
  for (const TermPtr& t : {concl.a, concl.b, concl.m, concl.n})
    if (t)
      for (const auto& v : free_vars(t)) out.insert(v);
  return out;
}

bool Sequent::well_scoped() const {
  std::set<Symbol> seen_vars;
  std::set<Symbol> seen_dims(dims.begin(), dims.end());
  auto scoped = [&](const TermPtr& t) {
    if (!t) return true;
    if (!locally_closed(t)) return false;
    for (const auto& v : free_vars(t))
      if (!seen_vars.count(v)) return false;
    for (const auto& d : free_dims(t))
      if (!seen_dims.count(d)) return false;
    return true;
  };
  for (const auto& h : hyps) {
    if (!scoped(h.type)) return false;
    if (seen_vars.count(h.name)) return false;  // names unique in a telescope
    seen_vars.insert(h.name);
  }
  for (const TermPtr& t : {concl.a, concl.b, concl.m, concl.n})
    if (!scoped(t)) return false;
  return true;
}

bool sequent_alpha_eq(const Sequent& a, const Sequent& b) {
  if (a.dims != b.dims) return false;
  if (a.hyps.size() != b.hyps.size()) return false;
  for (std::size_t k = 0; k < a.hyps.size(); ++k) {
    if (a.hyps[k].name != b.hyps[k].name) return false;
    if (a.hyps[k].kind != b.hyps[k].kind) return false;
    if (!alpha_eq(a.hyps[k].type, b.hyps[k].type)) return false;
  }
  if (a.concl.form != b.concl.form || a.concl.kind != b.concl.kind) return false;
  const TermPtr* ta[4] = {&a.concl.a, &a.concl.b, &a.concl.m, &a.concl.n};
  const TermPtr* tb[4] = {&b.concl.a, &b.concl.b, &b.concl.m, &b.concl.n};
  for (int k = 0; k < 4; ++k) {
    if ((*ta[k] == nullptr) != (*tb[k] == nullptr)) return false;
    if (*ta[k] && !alpha_eq(*ta[k], *tb[k])) return false;
  }
  return true;
}

const char* rule_error_name(RuleError::Code c) {
  switch (c) {
    case RuleError::Code::RuleMismatch: return "RuleMismatch";
    case RuleError::Code::SideConditionFailed: return "SideConditionFailed";
    case RuleError::Code::BadArgument: return "BadArgument";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Algorithmic equality: stable weak-head normalization at every node, then
// structural comparison. Binders are compared by descending into the closed
// bodies after opening both sides with the same fresh symbol.

TermPtr stable_whnf(const TermPtr& t, std::int64_t fuel) {
  TermPtr cur = t;
  for (std::int64_t k = 0; k < fuel; ++k) {
    StepResult r = step(cur);
    if (!r.stepped() || !r.stable) return cur;
    cur = r.next;
  }
  return cur;
}

namespace {

bool algo_eq_rec(const TermPtr& ra, const TermPtr& rb, std::int64_t fuel,
                 int depth) {
  if (depth > 256) return false;
  TermPtr a = stable_whnf(ra, fuel);
  TermPtr b = stable_whnf(rb, fuel);
  if (a.get() == b.get()) return true;
  if (a->tag() != b->tag()) return false;
  switch (a->tag()) {
    case Tag::BVar:
    case Tag::Meta:
      if (a->index() != b->index()) return false;
      break;
    case Tag::FVar:
      if (a->name() != b->name()) return false;
      break;
    default:
      break;
  }
  if (a->dims() != b->dims()) return false;
  auto specs = Term::child_specs(a->tag());
  for (std::size_t i = 0; i < a->kids().size(); ++i) {
    TermPtr ka = a->kids()[i];
    TermPtr kb = b->kids()[i];
    if (specs[i].term_binders) {
      std::set<Symbol> avoid = free_vars(ka);
      for (const auto& v : free_vars(kb)) avoid.insert(v);
      Symbol x = fresh_symbol("_cmp", avoid);
      ka = instantiate_term(ka, mk::var(x));
      kb = instantiate_term(kb, mk::var(x));
    }
    if (specs[i].dim_binders) {
      std::set<Symbol> avoid = free_dims(ka);
      for (const auto& d : free_dims(kb)) avoid.insert(d);
      Symbol ix = fresh_symbol("_cmpd", avoid);
      ka = instantiate_dim(ka, DimExpr::make_name(ix));
      kb = instantiate_dim(kb, DimExpr::make_name(ix));
    }
    if (!algo_eq_rec(ka, kb, fuel, depth + 1)) return false;
  }
  return true;
}

}  // namespace

bool algorithmic_eq(const TermPtr& a, const TermPtr& b, std::int64_t fuel) {
  return algo_eq_rec(a, b, fuel, 0);
}

// ---------------------------------------------------------------------------
// Proof states.

struct Node {
  Sequent seq;
  bool refined = false;
  std::string rule;
  std::vector<GoalId> children;
  // Combines the children's realizers into this goal's realizer. Children
  // that are still open arrive as metavariable leaves.
  std::function<TermPtr(const std::vector<TermPtr>&)> validate;
};

struct ProofState::Data {
  std::map<GoalId, Node> nodes;
  std::vector<GoalId> open;
  GoalId root = 1;
  GoalId next_id = 2;
  std::uint64_t version = 0;
  std::shared_ptr<const Data> prev;
};

namespace {

TermPtr resolve_goal(const ProofState::Data& d, GoalId g,
                     std::map<GoalId, TermPtr>& cache) {
  auto hit = cache.find(g);
  if (hit != cache.end()) return hit->second;
  const Node& node = d.nodes.at(g);
  TermPtr out;
  if (!node.refined) {
    out = mk::meta(static_cast<std::uint32_t>(g));
  } else {
    std::vector<TermPtr> kids;
    kids.reserve(node.children.size());
    for (GoalId c : node.children) kids.push_back(resolve_goal(d, c, cache));
    out = node.validate ? node.validate(kids) : mk::ax();
  }
  cache[g] = out;
  return out;
}

// Substitutes fully-solved metavariables into a statement term.
TermPtr resolve_term(const ProofState::Data& d, const TermPtr& t,
                     std::map<GoalId, TermPtr>& cache) {
  if (!t || !has_metas(t)) return t;
  return subst_metas(t, [&](std::uint32_t id) -> TermPtr {
    if (!d.nodes.count(id)) return nullptr;
    TermPtr r = resolve_goal(d, id, cache);
    if (r && !has_metas(r)) return r;
    return nullptr;
  });
}

Sequent resolve_sequent(const ProofState::Data& d, const Sequent& s) {
  std::map<GoalId, TermPtr> cache;
  Sequent out = s;
  for (auto& h : out.hyps) h.type = resolve_term(d, h.type, cache);
  out.concl.a = resolve_term(d, out.concl.a, cache);
  out.concl.b = resolve_term(d, out.concl.b, cache);
  out.concl.m = resolve_term(d, out.concl.m, cache);
  out.concl.n = resolve_term(d, out.concl.n, cache);
  return out;
}

}  // namespace

ProofState ProofState::root(Sequent goal) {
  auto d = std::make_shared<Data>();
  Node n;
  n.seq = std::move(goal);
  d->nodes.emplace(d->root, std::move(n));
  d->open.push_back(d->root);
  return ProofState(std::move(d));
}

GoalId ProofState::root_goal() const { return data_->root; }
const std::vector<GoalId>& ProofState::open_goals() const { return data_->open; }

bool ProofState::is_open(GoalId g) const {
  return std::find(data_->open.begin(), data_->open.end(), g) != data_->open.end();
}

Sequent ProofState::goal(GoalId g) const {
  return resolve_sequent(*data_, data_->nodes.at(g).seq);
}

const Sequent& ProofState::goal_raw(GoalId g) const {
  return data_->nodes.at(g).seq;
}

std::optional<std::string> ProofState::refined_by(GoalId g) const {
  const Node& n = data_->nodes.at(g);
  if (!n.refined) return std::nullopt;
  return n.rule;
}

std::vector<GoalId> ProofState::children_of(GoalId g) const {
  return data_->nodes.at(g).children;
}

TermPtr ProofState::partial_extract() const {
  std::map<GoalId, TermPtr> cache;
  return resolve_goal(*data_, data_->root, cache);
}

TermPtr ProofState::goal_extract(GoalId g) const {
  std::map<GoalId, TermPtr> cache;
  return resolve_goal(*data_, g, cache);
}

std::uint64_t ProofState::version() const { return data_->version; }

std::size_t ProofState::journal_length() const {
  std::size_t n = 0;
  for (auto p = data_->prev; p; p = p->prev) ++n;
  return n;
}

std::optional<ProofState> ProofState::undo() const {
  if (!data_->prev) return std::nullopt;
  return ProofState(data_->prev);
}

std::variant<TermPtr, IncompleteError> extract(const ProofState& state) {
  if (!state.complete()) return IncompleteError{state.open_goals()};
  TermPtr t = state.partial_extract();
  if (has_metas(t)) return IncompleteError{state.open_goals()};
  return t;
}

// ---------------------------------------------------------------------------
// The rule catalog.

namespace {

using Validation = std::function<TermPtr(const std::vector<TermPtr>&)>;

struct Plan {
  std::vector<Sequent> subgoals;
  Validation validate;  // null for realizer-less conclusions (yields ax)
  // Extra refined nodes that package subgoal realizers for use inside sibling
  // statements (e.g. the abstracted loop line of circle/elim). Each phantom
  // wraps one subgoal, by index, with a combining function; its id is chosen
  // by the rule (after the subgoal ids) so statements can reference it.
  struct Phantom {
    GoalId id;
    std::size_t child_index;
    std::function<TermPtr(const TermPtr&)> combine;
  };
  std::vector<Phantom> phantoms;
};

using RuleOutcome = std::variant<Plan, RuleError>;

RuleError mismatch(std::string msg) {
  return RuleError{RuleError::Code::RuleMismatch, std::move(msg)};
}
RuleError side_condition(std::string msg) {
  return RuleError{RuleError::Code::SideConditionFailed, std::move(msg)};
}
RuleError bad_argument(std::string msg) {
  return RuleError{RuleError::Code::BadArgument, std::move(msg)};
}

// Shared context handed to each rule implementation.
struct RuleCtx {
  const Sequent& seq;          // statement with solved metas resolved
  const RuleApplication& app;
  GoalId goal;                 // id of the goal being refined
  GoalId first_child;          // id the first subgoal will receive

  Symbol fresh_var(const Symbol& hint) const {
    std::set<Symbol> avoid = seq.used_names();
    return fresh_symbol(hint.empty() ? "x" : hint, avoid);
  }

  Symbol fresh_dim(const Symbol& hint) const {
    std::set<Symbol> avoid(seq.dims.begin(), seq.dims.end());
    for (const TermPtr& t : {seq.concl.a, seq.concl.b, seq.concl.m, seq.concl.n})
      if (t)
        for (const auto& d : free_dims(t)) avoid.insert(d);
    for (const auto& h : seq.hyps)
      for (const auto& d : free_dims(h.type)) avoid.insert(d);
    return fresh_symbol(hint.empty() ? "i" : hint, avoid);
  }

  Symbol intro_hint(const TermPtr& binder_node, std::size_t hint_ix,
                    const char* fallback) const {
    if (app.name_hint && !app.name_hint->empty() && *app.name_hint != "_")
      return *app.name_hint;
    if (binder_node && hint_ix < binder_node->hints().size()) {
      const Symbol& h = binder_node->hints()[hint_ix];
      if (!h.empty() && h != "_") return h;
    }
    return fallback;
  }

  Sequent subgoal(Conclusion c) const {
    Sequent s;
    s.dims = seq.dims;
    s.hyps = seq.hyps;
    s.concl = std::move(c);
    return s;
  }

  bool dim_in_scope(const DimExpr& r) const {
    if (r.is_const()) return true;
    return r.is_name() && seq.has_dim(r.name);
  }

  bool term_in_scope(const TermPtr& t) const {
    if (!t || !locally_closed(t)) return false;
    for (const auto& v : free_vars(t))
      if (!seq.find_hyp(v)) return false;
    for (const auto& d : free_dims(t))
      if (!seq.has_dim(d)) return false;
    return true;
  }
};

bool is_neutral(const TermPtr& whnf) { return !is_value(whnf); }

// Shallow canonical-membership evidence used by eq/refl: checks that the
// member's stable weak-head normal form is a constructor of the type (or a
// neutral term we cannot inspect further). Deep correctness is the semantic
// oracle's job.
bool membership_plausible(const Sequent& seq, const TermPtr& ty, const TermPtr& m) {
  TermPtr a0 = stable_whnf(ty);
  TermPtr m0 = stable_whnf(m);
  if (m0->tag() == Tag::FVar) {
    const Hyp* h = seq.find_hyp(m0->name());
    return h && algorithmic_eq(h->type, ty);
  }
  if (has_metas(m0) || has_metas(a0)) return false;
  switch (a0->tag()) {
    case Tag::Bool:
      return m0->tag() == Tag::True || m0->tag() == Tag::False || is_neutral(m0);
    case Tag::Circle:
      return m0->tag() == Tag::Base || m0->tag() == Tag::Loop || is_neutral(m0);
    case Tag::FunType:
      return m0->tag() == Tag::Lam || is_neutral(m0);
    case Tag::PairType:
      return m0->tag() == Tag::Pair || is_neutral(m0);
    case Tag::PathType:
      if (m0->tag() == Tag::DimAbs) {
        // The endpoints are the one part of path membership stable steps can
        // decide here.
        return algorithmic_eq(mk::dim_app(m0, DimExpr::zero()), a0->kids()[1]) &&
               algorithmic_eq(mk::dim_app(m0, DimExpr::one()), a0->kids()[2]);
      }
      return is_neutral(m0);
    case Tag::ExactEq:
      return (m0->tag() == Tag::Ax || is_neutral(m0)) &&
             algorithmic_eq(a0->kids()[1], a0->kids()[2]);
    default:
      return false;
  }
}

bool type_plausible(const TermPtr& ty) {
  TermPtr a0 = stable_whnf(ty);
  switch (a0->tag()) {
    case Tag::Bool:
    case Tag::Circle:
    case Tag::FunType:
    case Tag::PairType:
    case Tag::PathType:
    case Tag::ExactEq:
      return true;
    default:
      return is_neutral(a0) && !has_metas(a0);
  }
}

// --- introduction rules ----------------------------------------------------

RuleOutcome rule_bool_intro(const RuleCtx& c, bool truth_value) {
  const Conclusion& g = c.seq.concl;
  TermPtr want = truth_value ? mk::true_() : mk::false_();
  switch (g.form) {
    case Conclusion::Form::True: {
      if (stable_whnf(g.a)->tag() != Tag::Bool)
        return mismatch("goal is not bool");
      Plan p;
      p.validate = [want](const std::vector<TermPtr>&) { return want; };
      return p;
    }
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem: {
      if (stable_whnf(g.a)->tag() != Tag::Bool)
        return mismatch("goal is not bool");
      TermPtr m0 = stable_whnf(g.m);
      TermPtr n0 = g.form == Conclusion::Form::EqMem ? stable_whnf(g.n) : m0;
      if (!alpha_eq(m0, want) || !alpha_eq(n0, want))
        return side_condition("members do not reduce to " + show_term(want) +
                              " by stable steps");
      return Plan{};
    }
    default:
      return mismatch("bool introduction expects a truth or membership goal");
  }
}

RuleOutcome rule_circle_intro_base(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  switch (g.form) {
    case Conclusion::Form::True: {
      if (stable_whnf(g.a)->tag() != Tag::Circle)
        return mismatch("goal is not S1");
      Plan p;
      p.validate = [](const std::vector<TermPtr>&) { return mk::base(); };
      return p;
    }
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem: {
      if (stable_whnf(g.a)->tag() != Tag::Circle)
        return mismatch("goal is not S1");
      TermPtr m0 = stable_whnf(g.m);
      TermPtr n0 = g.form == Conclusion::Form::EqMem ? stable_whnf(g.n) : m0;
      if (m0->tag() != Tag::Base || n0->tag() != Tag::Base)
        return side_condition("members do not reduce to base by stable steps");
      return Plan{};
    }
    default:
      return mismatch("circle introduction expects a truth or membership goal");
  }
}

RuleOutcome rule_circle_intro_loop(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  if (g.form != Conclusion::Form::True || stable_whnf(g.a)->tag() != Tag::Circle)
    return mismatch("loop introduction expects an S1 truth goal");
  if (!c.app.dim) return bad_argument("loop introduction needs a dimension");
  if (!c.dim_in_scope(*c.app.dim))
    return bad_argument("dimension " + show_dim(*c.app.dim) + " is not in scope");
  DimExpr r = *c.app.dim;
  Plan p;
  p.validate = [r](const std::vector<TermPtr>&) { return mk::loop(r); };
  return p;
}

RuleOutcome rule_pi_intro(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  TermPtr ty = stable_whnf(g.a);
  if (ty->tag() != Tag::FunType)
    return mismatch("goal is not a dependent function type");
  const TermPtr& dom = ty->kids()[0];
  const TermPtr& cod = ty->kids()[1];

  switch (g.form) {
    case Conclusion::Form::True: {
      Symbol x = c.fresh_var(c.intro_hint(ty, 0, "x"));
      Sequent body = c.subgoal(Conclusion::truth(instantiate_term(cod, mk::var(x))));
      body.hyps.push_back(Hyp{x, dom, Kind::Kan});
      Sequent aux = c.subgoal(Conclusion::type(dom, Kind::Kan));
      Plan p;
      p.subgoals = {std::move(body), std::move(aux)};
      p.validate = [x](const std::vector<TermPtr>& s) { return mk::lam(x, s[0]); };
      return p;
    }
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem: {
      TermPtr m0 = stable_whnf(g.m);
      TermPtr n0 = g.form == Conclusion::Form::EqMem ? stable_whnf(g.n) : m0;
      if (m0->tag() != Tag::Lam || n0->tag() != Tag::Lam)
        return side_condition("members are not canonical functions");
      Symbol x = c.fresh_var(c.intro_hint(ty, 0, "x"));
      Sequent body = c.subgoal(Conclusion::eq_mem(
          instantiate_term(cod, mk::var(x)), mk::app(m0, mk::var(x)),
          mk::app(n0, mk::var(x))));
      body.hyps.push_back(Hyp{x, dom, Kind::Kan});
      Sequent aux = c.subgoal(Conclusion::type(dom, Kind::Kan));
      Plan p;
      p.subgoals = {std::move(body), std::move(aux)};
      return p;
    }
    default:
      return mismatch("pi introduction expects a truth or membership goal");
  }
}

RuleOutcome rule_sigma_intro(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  TermPtr ty = stable_whnf(g.a);
  if (ty->tag() != Tag::PairType)
    return mismatch("goal is not a dependent pair type");
  const TermPtr& dom = ty->kids()[0];
  const TermPtr& fam = ty->kids()[1];

  switch (g.form) {
    case Conclusion::Form::True: {
      // Three subgoals; the second's statement depends on the first's
      // realizer, and the family typehood goal comes last.
      GoalId c0 = c.first_child;
      Sequent left = c.subgoal(Conclusion::truth(dom));
      Sequent right = c.subgoal(Conclusion::truth(
          instantiate_term(fam, mk::meta(static_cast<std::uint32_t>(c0)))));
      Symbol x = c.fresh_var(c.intro_hint(ty, 0, "x"));
      Sequent aux = c.subgoal(
          Conclusion::type(instantiate_term(fam, mk::var(x)), Kind::Kan));
      aux.hyps.push_back(Hyp{x, dom, Kind::Kan});
      Plan p;
      p.subgoals = {std::move(left), std::move(right), std::move(aux)};
      p.validate = [](const std::vector<TermPtr>& s) { return mk::pair(s[0], s[1]); };
      return p;
    }
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem: {
      TermPtr m0 = stable_whnf(g.m);
      TermPtr n0 = g.form == Conclusion::Form::EqMem ? stable_whnf(g.n) : m0;
      if (m0->tag() != Tag::Pair || n0->tag() != Tag::Pair)
        return side_condition("members are not canonical pairs");
      Sequent left = c.subgoal(
          Conclusion::eq_mem(dom, m0->kids()[0], n0->kids()[0]));
      Sequent right = c.subgoal(
          Conclusion::eq_mem(instantiate_term(fam, m0->kids()[0]),
                             m0->kids()[1], n0->kids()[1]));
      Symbol x = c.fresh_var(c.intro_hint(ty, 0, "x"));
      Sequent aux = c.subgoal(
          Conclusion::type(instantiate_term(fam, mk::var(x)), Kind::Kan));
      aux.hyps.push_back(Hyp{x, dom, Kind::Kan});
      Plan p;
      p.subgoals = {std::move(left), std::move(right), std::move(aux)};
      return p;
    }
    default:
      return mismatch("sigma introduction expects a truth or membership goal");
  }
}

RuleOutcome rule_path_intro(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  TermPtr ty = stable_whnf(g.a);
  if (ty->tag() != Tag::PathType) return mismatch("goal is not a path type");
  const TermPtr& body = ty->kids()[0];
  const TermPtr& ep0 = ty->kids()[1];
  const TermPtr& ep1 = ty->kids()[2];

  switch (g.form) {
    case Conclusion::Form::True: {
      Symbol i = c.fresh_dim(c.intro_hint(ty, 0, "i"));
      Sequent line = c.subgoal(
          Conclusion::truth(instantiate_dim(body, DimExpr::make_name(i))));
      line.dims.push_back(i);
      // The endpoint statements mention this goal's own realizer, so the
      // binder for i is formed by the validation when the line is solved.
      TermPtr self = mk::meta(static_cast<std::uint32_t>(c.goal));
      Sequent end0 = c.subgoal(Conclusion::eq_mem(
          instantiate_dim(body, DimExpr::zero()),
          mk::dim_app(self, DimExpr::zero()), ep0));
      Sequent end1 = c.subgoal(Conclusion::eq_mem(
          instantiate_dim(body, DimExpr::one()),
          mk::dim_app(self, DimExpr::one()), ep1));
      Plan p;
      p.subgoals = {std::move(line), std::move(end0), std::move(end1)};
      p.validate = [i](const std::vector<TermPtr>& s) { return mk::dim_abs(i, s[0]); };
      return p;
    }
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem: {
      TermPtr m0 = stable_whnf(g.m);
      TermPtr n0 = g.form == Conclusion::Form::EqMem ? stable_whnf(g.n) : m0;
      if (m0->tag() != Tag::DimAbs || n0->tag() != Tag::DimAbs)
        return side_condition("members are not canonical paths");
      Symbol i = c.fresh_dim(c.intro_hint(ty, 0, "i"));
      DimExpr di = DimExpr::make_name(i);
      Sequent line = c.subgoal(Conclusion::eq_mem(
          instantiate_dim(body, di), mk::dim_app(m0, di), mk::dim_app(n0, di)));
      line.dims.push_back(i);
      Sequent end0 = c.subgoal(Conclusion::eq_mem(
          instantiate_dim(body, DimExpr::zero()),
          mk::dim_app(m0, DimExpr::zero()), ep0));
      Sequent end1 = c.subgoal(Conclusion::eq_mem(
          instantiate_dim(body, DimExpr::one()),
          mk::dim_app(m0, DimExpr::one()), ep1));
      Plan p;
      p.subgoals = {std::move(line), std::move(end0), std::move(end1)};
      return p;
    }
    default:
      return mismatch("path introduction expects a truth or membership goal");
  }
}

RuleOutcome rule_eq_intro(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  TermPtr ty = stable_whnf(g.a);
  if (ty->tag() != Tag::ExactEq)
    return mismatch("goal is not an exact equality type");
  switch (g.form) {
    case Conclusion::Form::True: {
      Plan p;
      p.subgoals = {c.subgoal(
          Conclusion::eq_mem(ty->kids()[0], ty->kids()[1], ty->kids()[2]))};
      p.validate = [](const std::vector<TermPtr>&) { return mk::ax(); };
      return p;
    }
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem: {
      TermPtr m0 = stable_whnf(g.m);
      TermPtr n0 = g.form == Conclusion::Form::EqMem ? stable_whnf(g.n) : m0;
      if (m0->tag() != Tag::Ax || n0->tag() != Tag::Ax)
        return side_condition("members do not reduce to ax");
      Plan p;
      p.subgoals = {c.subgoal(
          Conclusion::eq_mem(ty->kids()[0], ty->kids()[1], ty->kids()[2]))};
      return p;
    }
    default:
      return mismatch("eq introduction expects a truth or membership goal");
  }
}

// --- elimination rules -----------------------------------------------------

RuleOutcome rule_hypothesis(const RuleCtx& c) {
  if (c.seq.concl.form != Conclusion::Form::True)
    return mismatch("hypothesis expects a truth goal");
  if (!c.app.hyp) return bad_argument("hypothesis needs a hypothesis name");
  const Hyp* h = c.seq.find_hyp(*c.app.hyp);
  if (!h) return bad_argument("no hypothesis named " + *c.app.hyp);
  if (!algorithmic_eq(c.seq.concl.a, h->type))
    return side_condition("hypothesis " + h->name +
                          " : " + show_term(h->type) +
                          " does not match the goal type");
  Symbol x = h->name;
  Plan p;
  p.validate = [x](const std::vector<TermPtr>&) { return mk::var(x); };
  return p;
}

RuleOutcome rule_bool_elim(const RuleCtx& c) {
  if (!c.app.hyp) return bad_argument("bool/elim needs a hypothesis name");
  const Hyp* h = c.seq.find_hyp(*c.app.hyp);
  if (!h) return bad_argument("no hypothesis named " + *c.app.hyp);
  if (stable_whnf(h->type)->tag() != Tag::Bool)
    return mismatch("hypothesis " + h->name + " is not a boolean");
  const Symbol x = h->name;

  // Substitute the case value into the conclusion and every hypothesis
  // declared after x.
  auto branch = [&](const TermPtr& v) {
    Sequent s = c.seq;
    bool after = false;
    for (auto& hy : s.hyps) {
      if (after) hy.type = subst_term(hy.type, v, x);
      if (hy.name == x) after = true;
    }
    Conclusion& g = s.concl;
    for (TermPtr* t : {&g.a, &g.b, &g.m, &g.n})
      if (*t) *t = subst_term(*t, v, x);
    return s;
  };

  Plan p;
  p.subgoals = {branch(mk::true_()), branch(mk::false_())};
  const Conclusion& g = c.seq.concl;
  if (g.form == Conclusion::Form::True || g.form == Conclusion::Form::Mem ||
      g.form == Conclusion::Form::EqMem) {
    // Motive functionality over x, checked with x still in scope. Typehood
    // at kind pre: eliminating into a pretype (an exact equality, say) is
    // fine, and the eliminator never invokes Kan structure.
    p.subgoals.push_back(c.subgoal(Conclusion::type(g.a, Kind::Pre)));
  }
  if (g.form == Conclusion::Form::True) {
    p.validate = [x](const std::vector<TermPtr>& s) {
      return mk::if_(mk::var(x), s[0], s[1]);
    };
  }
  return p;
}

RuleOutcome rule_pi_elim(const RuleCtx& c) {
  if (c.seq.concl.form != Conclusion::Form::True)
    return mismatch("pi/elim expects a truth goal");
  if (!c.app.hyp) return bad_argument("pi/elim needs a hypothesis name");
  const Hyp* h = c.seq.find_hyp(*c.app.hyp);
  if (!h) return bad_argument("no hypothesis named " + *c.app.hyp);
  TermPtr fty = stable_whnf(h->type);
  if (fty->tag() != Tag::FunType)
    return mismatch("hypothesis " + h->name + " is not a function");
  if (!c.app.term) return bad_argument("pi/elim needs an argument term");
  if (!c.term_in_scope(c.app.term))
    return bad_argument("argument term is not well-scoped here");

  TermPtr arg = c.app.term;
  TermPtr cod = instantiate_term(fty->kids()[1], arg);
  Symbol z = c.fresh_var(c.app.name_hint.value_or("v"));
  Sequent arg_goal = c.subgoal(Conclusion::mem(fty->kids()[0], arg));
  Sequent cont = c.seq;
  cont.hyps.push_back(Hyp{z, cod, Kind::Kan});

  Symbol f = h->name;
  Plan p;
  p.subgoals = {std::move(arg_goal), std::move(cont)};
  p.validate = [f, arg, z](const std::vector<TermPtr>& s) {
    return subst_term(s[1], mk::app(mk::var(f), arg), z);
  };
  return p;
}

RuleOutcome rule_sigma_elim(const RuleCtx& c) {
  if (c.seq.concl.form != Conclusion::Form::True)
    return mismatch("sigma/elim expects a truth goal");
  if (!c.app.hyp) return bad_argument("sigma/elim needs a hypothesis name");
  const Hyp* h = c.seq.find_hyp(*c.app.hyp);
  if (!h) return bad_argument("no hypothesis named " + *c.app.hyp);
  TermPtr pty = stable_whnf(h->type);
  if (pty->tag() != Tag::PairType)
    return mismatch("hypothesis " + h->name + " is not a pair");

  Symbol a = c.fresh_var(c.app.name_hint.value_or("a"));
  Symbol b = c.fresh_var(a == "b" ? "b1" : "b");
  Sequent cont = c.seq;
  cont.hyps.push_back(Hyp{a, pty->kids()[0], Kind::Kan});
  cont.hyps.push_back(
      Hyp{b, instantiate_term(pty->kids()[1], mk::var(a)), Kind::Kan});

  Symbol pn = h->name;
  Plan p;
  p.subgoals = {std::move(cont)};
  p.validate = [pn, a, b](const std::vector<TermPtr>& s) {
    TermPtr t = subst_term(s[0], mk::fst(mk::var(pn)), a);
    return subst_term(t, mk::snd(mk::var(pn)), b);
  };
  return p;
}

RuleOutcome rule_path_app(const RuleCtx& c) {
  if (c.seq.concl.form != Conclusion::Form::True)
    return mismatch("path/app expects a truth goal");
  if (!c.app.hyp) return bad_argument("path/app needs a hypothesis name");
  const Hyp* h = c.seq.find_hyp(*c.app.hyp);
  if (!h) return bad_argument("no hypothesis named " + *c.app.hyp);
  TermPtr pty = stable_whnf(h->type);
  if (pty->tag() != Tag::PathType)
    return mismatch("hypothesis " + h->name + " is not a path");
  if (!c.app.dim) return bad_argument("path/app needs a dimension");
  if (!c.dim_in_scope(*c.app.dim))
    return bad_argument("dimension " + show_dim(*c.app.dim) + " is not in scope");

  DimExpr r = *c.app.dim;
  Symbol v = c.fresh_var(c.app.name_hint.value_or("v"));
  Sequent cont = c.seq;
  cont.hyps.push_back(Hyp{v, instantiate_dim(pty->kids()[0], r), Kind::Kan});

  Symbol pn = h->name;
  Plan p;
  p.subgoals = {std::move(cont)};
  p.validate = [pn, r, v](const std::vector<TermPtr>& s) {
    return subst_term(s[0], mk::dim_app(mk::var(pn), r), v);
  };
  return p;
}

RuleOutcome rule_circle_elim(const RuleCtx& c) {
  if (c.seq.concl.form != Conclusion::Form::True)
    return mismatch("circle/elim expects a truth goal");
  if (!c.app.hyp) return bad_argument("circle/elim needs a hypothesis name");
  const Hyp* h = c.seq.find_hyp(*c.app.hyp);
  if (!h) return bad_argument("no hypothesis named " + *c.app.hyp);
  if (stable_whnf(h->type)->tag() != Tag::Circle)
    return mismatch("hypothesis " + h->name + " is not in S1");

  const Symbol x = h->name;
  const TermPtr motive = c.seq.concl.a;  // family over x
  Symbol i = c.fresh_dim("i");

  TermPtr at_base = subst_term(motive, mk::base(), x);
  TermPtr at_loop = subst_term(motive, mk::loop(DimExpr::make_name(i)), x);

  GoalId base_goal = c.first_child;
  // The loop line, abstracted, lives in a phantom node so the coherence
  // statements can mention it before the method is solved. Five subgoals, so
  // the phantom takes the next id.
  GoalId phantom_id = c.first_child + 5;
  TermPtr line = mk::meta(static_cast<std::uint32_t>(phantom_id));

  Sequent base_case = c.subgoal(Conclusion::truth(at_base));
  Sequent loop_case = c.subgoal(Conclusion::truth(at_loop));
  loop_case.dims.push_back(i);
  Sequent coh0 = c.subgoal(Conclusion::eq_mem(
      at_base, mk::dim_app(line, DimExpr::zero()),
      mk::meta(static_cast<std::uint32_t>(base_goal))));
  Sequent coh1 = c.subgoal(Conclusion::eq_mem(
      at_base, mk::dim_app(line, DimExpr::one()),
      mk::meta(static_cast<std::uint32_t>(base_goal))));
  Sequent aux = c.subgoal(Conclusion::type(motive, Kind::Pre));

  Plan p;
  p.subgoals = {std::move(base_case), std::move(loop_case), std::move(coh0),
                std::move(coh1), std::move(aux)};
  p.phantoms.push_back(Plan::Phantom{
      phantom_id, 1, [i](const TermPtr& sol) { return mk::dim_abs(i, sol); }});
  TermPtr motive_copy = motive;
  p.validate = [motive_copy, x, i](const std::vector<TermPtr>& s) {
    return mk::circle_rec(x, motive_copy, mk::var(x), s[0], i, s[1]);
  };
  return p;
}

// --- equality rules ----------------------------------------------------------

RuleOutcome rule_eq_refl(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  switch (g.form) {
    case Conclusion::Form::Mem:
      if (!membership_plausible(c.seq, g.a, g.m))
        return side_condition("no canonical membership evidence");
      return Plan{};
    case Conclusion::Form::EqMem:
      if (!algorithmic_eq(g.m, g.n))
        return side_condition("members are not equal by stable computation");
      if (!membership_plausible(c.seq, g.a, g.m))
        return side_condition("no canonical membership evidence");
      return Plan{};
    case Conclusion::Form::EqType:
      if (!algorithmic_eq(g.a, g.b))
        return side_condition("types are not equal by stable computation");
      if (!type_plausible(g.a)) return side_condition("not a recognizable type");
      return Plan{};
    default:
      return mismatch("eq/refl expects an equality goal");
  }
}

RuleOutcome rule_eq_symm(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  Plan p;
  if (g.form == Conclusion::Form::EqMem) {
    p.subgoals = {c.subgoal(Conclusion::eq_mem(g.a, g.n, g.m))};
    return p;
  }
  if (g.form == Conclusion::Form::EqType) {
    p.subgoals = {c.subgoal(Conclusion::eq_type(g.b, g.a, g.kind))};
    return p;
  }
  return mismatch("eq/symm expects an equality goal");
}

RuleOutcome rule_eq_trans(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  if (!c.app.term) return bad_argument("eq/trans needs a mediating term");
  if (!c.term_in_scope(c.app.term))
    return bad_argument("mediating term is not well-scoped here");
  Plan p;
  if (g.form == Conclusion::Form::EqMem) {
    p.subgoals = {c.subgoal(Conclusion::eq_mem(g.a, g.m, c.app.term)),
                  c.subgoal(Conclusion::eq_mem(g.a, c.app.term, g.n))};
    return p;
  }
  if (g.form == Conclusion::Form::EqType) {
    p.subgoals = {c.subgoal(Conclusion::eq_type(g.a, c.app.term, g.kind)),
                  c.subgoal(Conclusion::eq_type(c.app.term, g.b, g.kind))};
    return p;
  }
  return mismatch("eq/trans expects an equality goal");
}

RuleOutcome rule_eq_eval(const RuleCtx& c) {
  const Conclusion& g = c.seq.concl;
  Conclusion out = g;
  switch (g.form) {
    case Conclusion::Form::Mem:
    case Conclusion::Form::EqMem:
      out.a = stable_whnf(g.a);
      out.m = stable_whnf(g.m);
      if (g.n) out.n = stable_whnf(g.n);
      break;
    case Conclusion::Form::True:
    case Conclusion::Form::Type:
      out.a = stable_whnf(g.a);
      break;
    case Conclusion::Form::EqType:
      out.a = stable_whnf(g.a);
      out.b = stable_whnf(g.b);
      break;
  }
  Plan p;
  p.subgoals = {c.subgoal(std::move(out))};
  if (g.form == Conclusion::Form::True)
    p.validate = [](const std::vector<TermPtr>& s) { return s[0]; };
  return p;
}

// --- formation rules ---------------------------------------------------------

bool formation_goal(const Conclusion& g, TermPtr& a, TermPtr& b) {
  if (g.form == Conclusion::Form::Type) {
    a = g.a;
    b = g.a;
    return true;
  }
  if (g.form == Conclusion::Form::EqType) {
    a = g.a;
    b = g.b;
    return true;
  }
  return false;
}

RuleOutcome rule_bool_form(const RuleCtx& c) {
  TermPtr a, b;
  if (!formation_goal(c.seq.concl, a, b))
    return mismatch("bool/form expects a type goal");
  if (stable_whnf(a)->tag() != Tag::Bool || stable_whnf(b)->tag() != Tag::Bool)
    return mismatch("goal is not bool");
  return Plan{};  // bool is discrete, hence every kind
}

RuleOutcome rule_circle_form(const RuleCtx& c) {
  TermPtr a, b;
  if (!formation_goal(c.seq.concl, a, b))
    return mismatch("circle/form expects a type goal");
  if (stable_whnf(a)->tag() != Tag::Circle || stable_whnf(b)->tag() != Tag::Circle)
    return mismatch("goal is not S1");
  if (!kind_leq(Kind::Kan, c.seq.concl.kind))
    return side_condition("the circle is kan but not discrete");
  return Plan{};
}

RuleOutcome rule_pi_sigma_form(const RuleCtx& c, Tag want, const char* what) {
  TermPtr a, b;
  if (!formation_goal(c.seq.concl, a, b)) return mismatch("expects a type goal");
  TermPtr a0 = stable_whnf(a);
  TermPtr b0 = stable_whnf(b);
  if (a0->tag() != want || b0->tag() != want)
    return mismatch(std::string("goal is not a ") + what);
  Kind k = c.seq.concl.kind;
  Symbol x = c.fresh_var(c.intro_hint(a0, 0, "x"));
  Sequent doms = c.subgoal(Conclusion::eq_type(a0->kids()[0], b0->kids()[0], k));
  Sequent fams = c.subgoal(
      Conclusion::eq_type(instantiate_term(a0->kids()[1], mk::var(x)),
                          instantiate_term(b0->kids()[1], mk::var(x)), k));
  fams.hyps.push_back(Hyp{x, a0->kids()[0], Kind::Kan});
  Plan p;
  p.subgoals = {std::move(doms), std::move(fams)};
  return p;
}

RuleOutcome rule_path_form(const RuleCtx& c) {
  TermPtr a, b;
  if (!formation_goal(c.seq.concl, a, b))
    return mismatch("path/form expects a type goal");
  TermPtr a0 = stable_whnf(a);
  TermPtr b0 = stable_whnf(b);
  if (a0->tag() != Tag::PathType || b0->tag() != Tag::PathType)
    return mismatch("goal is not a path type");
  Kind k = c.seq.concl.kind;
  Symbol i = c.fresh_dim(c.intro_hint(a0, 0, "i"));
  DimExpr di = DimExpr::make_name(i);
  Sequent line = c.subgoal(Conclusion::eq_type(instantiate_dim(a0->kids()[0], di),
                                               instantiate_dim(b0->kids()[0], di), k));
  line.dims.push_back(i);
  Sequent end0 = c.subgoal(
      Conclusion::eq_mem(instantiate_dim(a0->kids()[0], DimExpr::zero()),
                         a0->kids()[1], b0->kids()[1]));
  Sequent end1 = c.subgoal(
      Conclusion::eq_mem(instantiate_dim(a0->kids()[0], DimExpr::one()),
                         a0->kids()[2], b0->kids()[2]));
  Plan p;
  p.subgoals = {std::move(line), std::move(end0), std::move(end1)};
  return p;
}

RuleOutcome rule_eq_form(const RuleCtx& c) {
  TermPtr a, b;
  if (!formation_goal(c.seq.concl, a, b))
    return mismatch("eq/form expects a type goal");
  TermPtr a0 = stable_whnf(a);
  TermPtr b0 = stable_whnf(b);
  if (a0->tag() != Tag::ExactEq || b0->tag() != Tag::ExactEq)
    return mismatch("goal is not an exact equality type");
  Kind k = c.seq.concl.kind;
  if (k != Kind::Pre && k != Kind::Discrete)
    return side_condition(
        "exact equality types form at kind pre (or discrete over a discrete "
        "base), not " + std::string(kind_name(k)));
  Plan p;
  p.subgoals = {
      c.subgoal(Conclusion::eq_type(a0->kids()[0], b0->kids()[0], k)),
      c.subgoal(Conclusion::eq_mem(a0->kids()[0], a0->kids()[1], b0->kids()[1])),
      c.subgoal(Conclusion::eq_mem(a0->kids()[0], a0->kids()[2], b0->kids()[2]))};
  return p;
}

RuleOutcome dispatch(const RuleCtx& c) {
  const std::string& r = c.app.rule;
  if (r == "bool/intro/true") return rule_bool_intro(c, true);
  if (r == "bool/intro/false") return rule_bool_intro(c, false);
  if (r == "bool/elim") return rule_bool_elim(c);
  if (r == "circle/intro/base") return rule_circle_intro_base(c);
  if (r == "circle/intro/loop") return rule_circle_intro_loop(c);
  if (r == "circle/elim") return rule_circle_elim(c);
  if (r == "pi/intro") return rule_pi_intro(c);
  if (r == "pi/elim") return rule_pi_elim(c);
  if (r == "sigma/intro") return rule_sigma_intro(c);
  if (r == "sigma/elim") return rule_sigma_elim(c);
  if (r == "path/intro") return rule_path_intro(c);
  if (r == "path/app") return rule_path_app(c);
  if (r == "eq/intro") return rule_eq_intro(c);
  if (r == "hypothesis") return rule_hypothesis(c);
  if (r == "eq/refl") return rule_eq_refl(c);
  if (r == "eq/symm") return rule_eq_symm(c);
  if (r == "eq/trans") return rule_eq_trans(c);
  if (r == "eq/eval") return rule_eq_eval(c);
  if (r == "bool/form") return rule_bool_form(c);
  if (r == "circle/form") return rule_circle_form(c);
  if (r == "pi/form") return rule_pi_sigma_form(c, Tag::FunType, "function type");
  if (r == "sigma/form") return rule_pi_sigma_form(c, Tag::PairType, "pair type");
  if (r == "path/form") return rule_path_form(c);
  if (r == "eq/form") return rule_eq_form(c);
  return bad_argument("unknown rule " + r);
}

}  // namespace

ApplyResult apply_rule(const ProofState& state, GoalId goal,
                       const RuleApplication& app) {
  const auto& d = state.data();
  if (!state.is_open(goal))
    return RuleError{RuleError::Code::BadArgument, "goal is not open"};

  Sequent resolved = state.goal(goal);
  RuleCtx ctx{resolved, app, goal, d->next_id};

  RuleOutcome out = dispatch(ctx);
  if (std::holds_alternative<RuleError>(out)) return std::get<RuleError>(out);
  Plan plan = std::move(std::get<Plan>(out));

  auto nd = std::make_shared<ProofState::Data>(*d);
  nd->prev = d;
  nd->version = d->version + 1;

  std::vector<GoalId> child_ids;
  for (auto& sg : plan.subgoals) {
    GoalId id = nd->next_id++;
    child_ids.push_back(id);
    Node n;
    n.seq = std::move(sg);
    nd->nodes.emplace(id, std::move(n));
  }

  // Phantom nodes: refined immediately, never open.
  for (auto& ph : plan.phantoms) {
    assert(!nd->nodes.count(ph.id));
    nd->next_id = std::max(nd->next_id, ph.id + 1);
    Node n;
    n.seq = resolved;  // placeholder statement; phantoms are never displayed
    n.refined = true;
    n.rule = "(internal)";
    n.children = {child_ids[ph.child_index]};
    auto combine = ph.combine;
    n.validate = [combine](const std::vector<TermPtr>& s) { return combine(s[0]); };
    nd->nodes.emplace(ph.id, std::move(n));
  }

  Node& gn = nd->nodes.at(goal);
  gn.refined = true;
  gn.rule = app.rule;
  gn.children = child_ids;
  if (plan.validate) {
    gn.validate = plan.validate;
  } else {
    gn.validate = [](const std::vector<TermPtr>&) { return mk::ax(); };
  }

  auto pos = std::find(nd->open.begin(), nd->open.end(), goal);
  pos = nd->open.erase(pos);
  nd->open.insert(pos, child_ids.begin(), child_ids.end());

  return Refined{ProofState(std::move(nd)), std::move(child_ids)};
}

// ---------------------------------------------------------------------------
// Catalog listing.

const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> catalog = {
      {"bool/intro/true", "bool true, or members reducing to tt", false, false, false},
      {"bool/intro/false", "bool true, or members reducing to ff", false, false, false},
      {"bool/elim", "any goal, given x : bool", true, false, false},
      {"circle/intro/base", "S1 true, or members reducing to base", false, false, false},
      {"circle/intro/loop", "S1 true, with a dimension argument", false, false, true},
      {"circle/elim", "C true, given x : S1", true, false, false},
      {"pi/intro", "(x : A) -> B true or membership", false, false, false},
      {"pi/elim", "C true, given f : (x : A) -> B and an argument", true, true, false},
      {"sigma/intro", "(x : A) * B true or membership", false, false, false},
      {"sigma/elim", "C true, given p : (x : A) * B", true, false, false},
      {"path/intro", "path [i] A M N true or membership", false, false, false},
      {"path/app", "C true, given p : path [i] A M N and a dimension", true, false, true},
      {"eq/intro", "Eq A M N true or membership", false, false, false},
      {"hypothesis", "A true, given x : A", true, false, false},
      {"eq/refl", "equality goals closed by stable computation", false, false, false},
      {"eq/symm", "swaps the sides of an equality goal", false, false, false},
      {"eq/trans", "splits an equality goal through a mediating term", false, true, false},
      {"eq/eval", "normalizes an equality goal by stable steps", false, false, false},
      {"bool/form", "bool type at any kind", false, false, false},
      {"circle/form", "S1 type at kind kan and above", false, false, false},
      {"pi/form", "function type formation", false, false, false},
      {"sigma/form", "pair type formation", false, false, false},
      {"path/form", "path type formation", false, false, false},
      {"eq/form", "exact equality formation at kind pre", false, false, false},
  };
  return catalog;
}

std::vector<std::string> applicable_rules(const ProofState& state, GoalId g) {
  std::vector<std::string> out;
  if (!state.is_open(g)) return out;
  Sequent seq = state.goal(g);
  for (const RuleInfo& info : rule_catalog()) {
    RuleApplication app = RuleApplication::named(info.name);
    if (info.takes_term) app.term = mk::true_();  // placeholder probe
    if (info.takes_dim) app.dim = DimExpr::zero();
    bool ok = false;
    if (info.takes_hyp) {
      for (const auto& h : seq.hyps) {
        app.hyp = h.name;
        ApplyResult r = apply_rule(state, g, app);
        if (!std::holds_alternative<RuleError>(r) ||
            std::get<RuleError>(r).code == RuleError::Code::SideConditionFailed) {
          ok = true;
          break;
        }
      }
    } else {
      ApplyResult r = apply_rule(state, g, app);
      ok = !std::holds_alternative<RuleError>(r) ||
           std::get<RuleError>(r).code == RuleError::Code::SideConditionFailed;
    }
    if (ok) out.push_back(info.name);
  }
  return out;
}

std::string show_conclusion(const Conclusion& c) {
  switch (c.form) {
    case Conclusion::Form::True:
      return show_term(c.a) + " true";
    case Conclusion::Form::Type:
      return show_term(c.a) + " type(" + kind_name(c.kind) + ")";
    case Conclusion::Form::EqType:
      return show_term(c.a) + " = " + show_term(c.b) + " type(" +
             kind_name(c.kind) + ")";
    case Conclusion::Form::Mem:
      return show_term(c.m) + " in " + show_term(c.a);
    case Conclusion::Form::EqMem:
      return show_term(c.m) + " = " + show_term(c.n) + " in " + show_term(c.a);
  }
  return "?";
}

std::string show_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.dims.size(); ++i) {
    if (i) out += " ";
    out += s.dims[i];
  }
  if (!s.dims.empty()) out += " | ";
  for (std::size_t i = 0; i < s.hyps.size(); ++i) {
    if (i) out += ", ";
    out += s.hyps[i].name + " : " + show_term(s.hyps[i].type);
  }
  if (!s.hyps.empty() || !s.dims.empty()) out += " >> ";
  out += show_conclusion(s.concl);
  return out;
}

}  // namespace cartprl
