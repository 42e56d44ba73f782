#include "cartprl/dynamics.hpp"

#include <stdexcept>

namespace cartprl {

bool is_value(const TermPtr& t) {
  switch (t->tag()) {
    case Tag::FunType:
    case Tag::Lam:
    case Tag::PairType:
    case Tag::Pair:
    case Tag::Bool:
    case Tag::True:
    case Tag::False:
    case Tag::Circle:
    case Tag::Base:
    case Tag::PathType:
    case Tag::DimAbs:
    case Tag::ExactEq:
    case Tag::Ax:
      return true;
    case Tag::Loop:
      // loop 0 and loop 1 step to base; only loop i is canonical.
      return t->dims()[0].is_name() || t->dims()[0].kind == DimExpr::Kind::Bound;
    default:
      return false;
  }
}

namespace {

// `protected_names` holds dimension names known to be bound above the term
// under analysis (classify_stability opens binders); a rule instance whose
// dimension argument is such a name is immune to substitution.
bool dim_arg_stable(const DimExpr& r, const std::set<Symbol>* protected_names) {
  if (r.is_const()) return true;
  if (r.kind == DimExpr::Kind::Name && protected_names &&
      protected_names->count(r.name))
    return true;
  return false;
}

StepResult stepped(TermPtr next, bool stable) {
  return StepResult{StepResult::Status::Stepped, std::move(next), stable, {}};
}

StepResult stuck(std::string reason) {
  return StepResult{StepResult::Status::Stuck, nullptr, false, std::move(reason)};
}

StepResult step_impl(const TermPtr& t, const std::set<Symbol>* protected_names);

// Reduce the head child of `t` (index `pos`) and rebuild around it, or fall
// through to `on_value` when the head is canonical.
template <class F>
StepResult congr(const TermPtr& t, std::size_t pos,
                 const std::set<Symbol>* protected_names, F&& on_value) {
  const TermPtr& head = t->kids()[pos];
  StepResult r = step_impl(head, protected_names);
  switch (r.status) {
    case StepResult::Status::Stepped: {
      std::vector<TermPtr> kids = t->kids();
      kids[pos] = r.next;
      return stepped(Term::make(t->tag(), std::move(kids), t->dims(), t->index(),
                                t->name(), t->hints()),
                     r.stable);
    }
    case StepResult::Status::Stuck:
      return r;
    case StepResult::Status::IsValue:
      return on_value(head);
  }
  return stuck("unreachable");
}

StepResult step_impl(const TermPtr& t, const std::set<Symbol>* protected_names) {
  switch (t->tag()) {
    case Tag::App:
      return congr(t, 0, protected_names, [&](const TermPtr& f) -> StepResult {
        if (f->tag() == Tag::Lam)
          return stepped(instantiate_term(f->kids()[0], t->kids()[1]), true);
        return stuck("application of a non-function");
      });

    case Tag::Fst:
      return congr(t, 0, protected_names, [&](const TermPtr& p) -> StepResult {
        if (p->tag() == Tag::Pair) return stepped(p->kids()[0], true);
        return stuck("fst of a non-pair");
      });

    case Tag::Snd:
      return congr(t, 0, protected_names, [&](const TermPtr& p) -> StepResult {
        if (p->tag() == Tag::Pair) return stepped(p->kids()[1], true);
        return stuck("snd of a non-pair");
      });

    case Tag::If:
      return congr(t, 0, protected_names, [&](const TermPtr& b) -> StepResult {
        if (b->tag() == Tag::True) return stepped(t->kids()[1], true);
        if (b->tag() == Tag::False) return stepped(t->kids()[2], true);
        return stuck("if on a non-boolean");
      });

    case Tag::Loop:
      if (t->dims()[0].is_const()) return stepped(mk::base(), true);
      return StepResult{};  // loop i is a value

    case Tag::CircleRec:
      return congr(t, 1, protected_names, [&](const TermPtr& v) -> StepResult {
        if (v->tag() == Tag::Base) return stepped(t->kids()[2], true);
        if (v->tag() == Tag::Loop)
          return stepped(instantiate_dim(t->kids()[3], v->dims()[0]),
                         dim_arg_stable(v->dims()[0], protected_names));
        return stuck("S1-rec on a non-circle value");
      });

    case Tag::DimApp:
      return congr(t, 0, protected_names, [&](const TermPtr& f) -> StepResult {
        if (f->tag() == Tag::DimAbs)
          return stepped(instantiate_dim(f->kids()[0], t->dims()[0]),
                         dim_arg_stable(t->dims()[0], protected_names));
        return stuck("dimension application of a non-abstraction");
      });

    case Tag::FVar:
      return stuck("free variable");
    case Tag::BVar:
      return stuck("unbound index");
    case Tag::Meta:
      return stuck("metavariable");

    default:
      return StepResult{};  // value
  }
}

}  // namespace

StepResult step(const TermPtr& t) { return step_impl(t, nullptr); }

EvalResult eval(const TermPtr& t, std::int64_t fuel, bool want_trace) {
  EvalResult out;
  out.term = t;
  while (true) {
    StepResult r = step(out.term);
    switch (r.status) {
      case StepResult::Status::IsValue:
        out.status = EvalResult::Status::Value;
        return out;
      case StepResult::Status::Stuck:
        out.status = EvalResult::Status::Stuck;
        return out;
      case StepResult::Status::Stepped:
        if (out.steps >= fuel) {
          out.status = EvalResult::Status::FuelExhausted;
          return out;
        }
        out.term = r.next;
        ++out.steps;
        if (want_trace) out.trace.push_back(TraceEntry{r.next, r.stable});
        break;
    }
  }
}

bool classify_stability(const TermPtr& t) {
  std::set<Symbol> protected_names;
  std::set<Symbol> avoid = free_dims(t);
  TermPtr cur = t;
  while (true) {
    StepResult r = step_impl(cur, &protected_names);
    if (r.stepped()) return r.stable;
    if (r.status == StepResult::Status::IsValue && cur->tag() == Tag::DimAbs) {
      // Descend under the binder: the bound name is unaffected by any
      // substitution applied to the whole term.
      Symbol i = fresh_symbol(cur->hints().empty() ? "i" : cur->hints()[0], avoid);
      avoid.insert(i);
      protected_names.insert(i);
      cur = instantiate_dim(cur->kids()[0], DimExpr::make_name(i));
      continue;
    }
    throw std::logic_error("classify_stability: term has no head redex");
  }
}

}  // namespace cartprl
