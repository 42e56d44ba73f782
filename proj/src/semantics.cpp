#include "cartprl/semantics.hpp"

#include <functional>

namespace cartprl {

bool kind_leq(Kind a, Kind b) {
  if (a == b) return true;
  switch (a) {
    case Kind::Discrete:
      return true;  // bottom
    case Kind::Kan:
      return b == Kind::Coe || b == Kind::HCom || b == Kind::Pre;
    case Kind::Coe:
    case Kind::HCom:
      return b == Kind::Pre;
    case Kind::Pre:
      return false;
  }
  return false;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Discrete: return "discrete";
    case Kind::Kan: return "kan";
    case Kind::Coe: return "coe";
    case Kind::HCom: return "hcom";
    case Kind::Pre: return "pre";
  }
  return "?";
}

std::optional<Kind> kind_from_name(std::string_view s) {
  if (s == "discrete") return Kind::Discrete;
  if (s == "kan") return Kind::Kan;
  if (s == "coe") return Kind::Coe;
  if (s == "hcom") return Kind::HCom;
  if (s == "pre") return Kind::Pre;
  return std::nullopt;
}

ClosedJudgment ClosedJudgment::mem(TermPtr a, TermPtr m) {
  return {Form::Mem, std::move(a), std::move(m), nullptr, Kind::Kan};
}
ClosedJudgment ClosedJudgment::eq_mem(TermPtr a, TermPtr m, TermPtr n) {
  return {Form::EqMem, std::move(a), std::move(m), std::move(n), Kind::Kan};
}
ClosedJudgment ClosedJudgment::typehood(TermPtr a, Kind k) {
  return {Form::Type, std::move(a), nullptr, nullptr, k};
}
ClosedJudgment ClosedJudgment::type_equality(TermPtr a, TermPtr b, Kind k) {
  return {Form::EqType, std::move(a), nullptr, std::move(b), k};
}

namespace {

constexpr int kMaxDepth = 64;

struct Oracle {
  std::int64_t fuel;

  // Evaluation to a value; nullptr means Unknown territory (stuck or fuel).
  TermPtr value_of(const TermPtr& t, Verdict& why) const {
    if (has_metas(t)) {
      why = Verdict::unknown("unsolved metavariable in judgment");
      return nullptr;
    }
    EvalResult r = eval(t, fuel);
    if (r.ok()) return r.term;
    why = r.status == EvalResult::Status::FuelExhausted
              ? Verdict::unknown("fuel")
              : Verdict::unknown("stuck evaluation");
    return nullptr;
  }

  static Verdict both(Verdict a, Verdict b) {
    if (a.is_fails()) return a;
    if (b.is_fails()) return b;
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    return Verdict::holds();
  }

  Symbol fresh_dim(std::initializer_list<TermPtr> ts) const {
    std::set<Symbol> avoid;
    for (const auto& t : ts)
      if (t)
        for (const auto& d : free_dims(t)) avoid.insert(d);
    return fresh_symbol("_d", avoid);
  }

  // --- member equality at a type -----------------------------------------

  Verdict eq_mem(const TermPtr& ty, const TermPtr& m, const TermPtr& n,
                 int depth) const {
    if (depth > kMaxDepth) return Verdict::unknown("depth limit");
    Verdict why = Verdict::unknown("");
    TermPtr a0 = value_of(ty, why);
    if (!a0) return why;

    switch (a0->tag()) {
      case Tag::Bool: {
        TermPtr mv = value_of(m, why);
        if (!mv) return why;
        TermPtr nv = value_of(n, why);
        if (!nv) return why;
        auto boolish = [](const TermPtr& v) {
          return v->tag() == Tag::True || v->tag() == Tag::False;
        };
        if (!boolish(mv) || !boolish(nv))
          return Verdict::fails("not a canonical boolean");
        return mv->tag() == nv->tag()
                   ? Verdict::holds()
                   : Verdict::fails("tt and ff are distinct members of bool");
      }

      case Tag::Circle: {
        TermPtr mv = value_of(m, why);
        if (!mv) return why;
        TermPtr nv = value_of(n, why);
        if (!nv) return why;
        auto circleish = [](const TermPtr& v) {
          return v->tag() == Tag::Base || v->tag() == Tag::Loop;
        };
        if (!circleish(mv) || !circleish(nv))
          return Verdict::fails("not a canonical circle element");
        // Literal comparison of canonical forms; the fcom values omitted from
        // this fragment are where anything subtler would live.
        return alpha_eq(mv, nv) ? Verdict::holds()
                                : Verdict::fails("distinct circle values");
      }

      case Tag::FunType: {
        TermPtr mv = value_of(m, why);
        if (!mv) return why;
        TermPtr nv = value_of(n, why);
        if (!nv) return why;
        if (mv->tag() != Tag::Lam || nv->tag() != Tag::Lam)
          return Verdict::fails("not a canonical function");
        const TermPtr& dom = a0->kids()[0];
        const TermPtr& fam = a0->kids()[1];
        return for_each_member(dom, depth, [&](const TermPtr& v) {
          return eq_mem(instantiate_term(fam, v), mk::app(mv, v), mk::app(nv, v),
                        depth + 1);
        });
      }

      case Tag::PairType: {
        TermPtr mv = value_of(m, why);
        if (!mv) return why;
        TermPtr nv = value_of(n, why);
        if (!nv) return why;
        if (mv->tag() != Tag::Pair || nv->tag() != Tag::Pair)
          return Verdict::fails("not a canonical pair");
        const TermPtr& dom = a0->kids()[0];
        const TermPtr& fam = a0->kids()[1];
        Verdict first = eq_mem(dom, mv->kids()[0], nv->kids()[0], depth + 1);
        Verdict second = eq_mem(instantiate_term(fam, mv->kids()[0]),
                                mv->kids()[1], nv->kids()[1], depth + 1);
        return both(first, second);
      }

      case Tag::PathType: {
        TermPtr mv = value_of(m, why);
        if (!mv) return why;
        TermPtr nv = value_of(n, why);
        if (!nv) return why;
        if (mv->tag() != Tag::DimAbs || nv->tag() != Tag::DimAbs)
          return Verdict::fails("not a canonical path");
        const TermPtr& body = a0->kids()[0];
        const TermPtr& ep0 = a0->kids()[1];
        const TermPtr& ep1 = a0->kids()[2];
        Symbol f = fresh_dim({ty, m, n});
        Verdict v = Verdict::holds();
        for (const DimExpr& r :
             {DimExpr::zero(), DimExpr::one(), DimExpr::make_name(f)}) {
          v = both(v, eq_mem(instantiate_dim(body, r), mk::dim_app(mv, r),
                             mk::dim_app(nv, r), depth + 1));
        }
        // Endpoints are pinned by the path type itself.
        v = both(v, eq_mem(instantiate_dim(body, DimExpr::zero()),
                           mk::dim_app(mv, DimExpr::zero()), ep0, depth + 1));
        v = both(v, eq_mem(instantiate_dim(body, DimExpr::one()),
                           mk::dim_app(mv, DimExpr::one()), ep1, depth + 1));
        return v;
      }

      case Tag::ExactEq: {
        TermPtr mv = value_of(m, why);
        if (!mv) return why;
        TermPtr nv = value_of(n, why);
        if (!nv) return why;
        if (mv->tag() != Tag::Ax || nv->tag() != Tag::Ax)
          return Verdict::fails("not ax");
        // Proof-irrelevant: membership is exactly the internalized equation.
        return eq_mem(a0->kids()[0], a0->kids()[1], a0->kids()[2], depth + 1);
      }

      case Tag::True:
      case Tag::False:
      case Tag::Lam:
      case Tag::Pair:
      case Tag::Base:
      case Tag::Loop:
      case Tag::DimAbs:
      case Tag::Ax:
        return Verdict::fails("classifier is not a type");

      default:
        return Verdict::unknown("non-canonical type");
    }
  }

  // Enumerates the closed members of an enumerable type. Returns Unknown for
  // non-enumerable domains; an uninhabited exact equality yields a vacuous
  // Holds.
  Verdict for_each_member(const TermPtr& dom, int depth,
                          const std::function<Verdict(const TermPtr&)>& body) const {
    Verdict why = Verdict::unknown("");
    TermPtr d0 = value_of(dom, why);
    if (!d0) return why;
    switch (d0->tag()) {
      case Tag::Bool:
        return both(body(mk::true_()), body(mk::false_()));
      case Tag::ExactEq: {
        Verdict inhabited =
            eq_mem(d0->kids()[0], d0->kids()[1], d0->kids()[2], depth + 1);
        if (inhabited.is_fails()) return Verdict::holds();  // empty domain
        if (inhabited.is_unknown()) return inhabited;
        return body(mk::ax());
      }
      default:
        return Verdict::unknown("domain not enumerable");
    }
  }

  // --- type equality -------------------------------------------------------

  Verdict eq_type(const TermPtr& a, const TermPtr& b, Kind kind, int depth) const {
    if (depth > kMaxDepth) return Verdict::unknown("depth limit");
    Verdict structural = eq_type_structural(a, b, depth);
    if (!structural.is_holds() || kind != Kind::Discrete) return structural;
    Verdict why = Verdict::unknown("");
    TermPtr a0 = value_of(a, why);
    if (!a0) return why;
    return both(structural, discrete(a0, depth));
  }

  Verdict eq_type_structural(const TermPtr& a, const TermPtr& b, int depth) const {
    Verdict why = Verdict::unknown("");
    TermPtr a0 = value_of(a, why);
    if (!a0) return why;
    TermPtr b0 = value_of(b, why);
    if (!b0) return why;

    if (a0->tag() != b0->tag()) {
      bool canonical_types =
          is_type_tag(a0->tag()) && is_type_tag(b0->tag());
      return canonical_types ? Verdict::fails("distinct canonical types")
                             : Verdict::fails("not a canonical type");
    }

    switch (a0->tag()) {
      case Tag::Bool:
      case Tag::Circle:
        return Verdict::holds();

      case Tag::FunType:
      case Tag::PairType: {
        const TermPtr& domA = a0->kids()[0];
        const TermPtr& domB = b0->kids()[0];
        Verdict doms = eq_type_structural(domA, domB, depth + 1);
        if (doms.is_fails()) return doms;
        Verdict fams = for_each_member(domA, depth, [&](const TermPtr& v) {
          return eq_type_structural(instantiate_term(a0->kids()[1], v),
                                    instantiate_term(b0->kids()[1], v),
                                    depth + 1);
        });
        return both(doms, fams);
      }

      case Tag::PathType: {
        const TermPtr& bodyA = a0->kids()[0];
        const TermPtr& bodyB = b0->kids()[0];
        Symbol f = fresh_dim({a, b});
        Verdict v = Verdict::holds();
        for (const DimExpr& r :
             {DimExpr::zero(), DimExpr::one(), DimExpr::make_name(f)}) {
          v = both(v, eq_type_structural(instantiate_dim(bodyA, r),
                                         instantiate_dim(bodyB, r), depth + 1));
        }
        v = both(v, eq_mem(instantiate_dim(bodyA, DimExpr::zero()),
                           a0->kids()[1], b0->kids()[1], depth + 1));
        v = both(v, eq_mem(instantiate_dim(bodyA, DimExpr::one()),
                           a0->kids()[2], b0->kids()[2], depth + 1));
        return v;
      }

      case Tag::ExactEq: {
        Verdict tys =
            eq_type_structural(a0->kids()[0], b0->kids()[0], depth + 1);
        if (tys.is_fails()) return tys;
        Verdict lhs = eq_mem(a0->kids()[0], a0->kids()[1], b0->kids()[1], depth + 1);
        Verdict rhs = eq_mem(a0->kids()[0], a0->kids()[2], b0->kids()[2], depth + 1);
        return both(tys, both(lhs, rhs));
      }

      default:
        return Verdict::fails("not a canonical type");
    }
  }

  static bool is_type_tag(Tag t) {
    switch (t) {
      case Tag::Bool:
      case Tag::Circle:
      case Tag::FunType:
      case Tag::PairType:
      case Tag::PathType:
      case Tag::ExactEq:
        return true;
      default:
        return false;
    }
  }

  // No non-trivial path structure among (enumerable) members.
  Verdict discrete(const TermPtr& a0, int depth) const {
    switch (a0->tag()) {
      case Tag::Bool:
      case Tag::ExactEq:
        return Verdict::holds();
      case Tag::Circle:
        return Verdict::fails("the circle has a non-trivial loop");
      case Tag::FunType:
        return for_each_member(a0->kids()[0], depth, [&](const TermPtr& v) {
          Verdict why = Verdict::unknown("");
          TermPtr cod = value_of(instantiate_term(a0->kids()[1], v), why);
          return cod ? discrete(cod, depth + 1) : why;
        });
      case Tag::PairType: {
        Verdict why = Verdict::unknown("");
        TermPtr dom = value_of(a0->kids()[0], why);
        if (!dom) return why;
        Verdict d = discrete(dom, depth + 1);
        Verdict fam = for_each_member(a0->kids()[0], depth, [&](const TermPtr& v) {
          Verdict w = Verdict::unknown("");
          TermPtr cod = value_of(instantiate_term(a0->kids()[1], v), w);
          return cod ? discrete(cod, depth + 1) : w;
        });
        return both(d, fam);
      }
      default:
        return Verdict::unknown("discreteness not decidable here");
    }
  }
};

ClosedJudgment subst_judgment(const ClosedJudgment& j, const TermPtr& v,
                              const Symbol& x) {
  ClosedJudgment out = j;
  if (out.type) out.type = subst_term(out.type, v, x);
  if (out.left) out.left = subst_term(out.left, v, x);
  if (out.right) out.right = subst_term(out.right, v, x);
  return out;
}

ClosedJudgment dim_subst_judgment(const ClosedJudgment& j, const DimSubst& s) {
  ClosedJudgment out = j;
  if (out.type) out.type = dim_subst(out.type, s);
  if (out.left) out.left = dim_subst(out.left, s);
  if (out.right) out.right = dim_subst(out.right, s);
  return out;
}

}  // namespace

Verdict check_closed(const ClosedJudgment& j, std::int64_t fuel) {
  Oracle o{fuel};
  switch (j.form) {
    case ClosedJudgment::Form::Mem:
      return o.eq_mem(j.type, j.left, j.left, 0);
    case ClosedJudgment::Form::EqMem:
      return o.eq_mem(j.type, j.left, j.right, 0);
    case ClosedJudgment::Form::Type:
      return o.eq_type(j.type, j.type, j.kind, 0);
    case ClosedJudgment::Form::EqType:
      return o.eq_type(j.type, j.right, j.kind, 0);
  }
  return Verdict::unknown("bad judgment form");
}

namespace {

Verdict enum_hyps(std::vector<Hypothesis> hyps, std::size_t idx,
                  const ClosedJudgment& j, std::int64_t fuel) {
  if (idx == hyps.size()) return check_closed(j, fuel);
  Oracle o{fuel};
  const Symbol x = hyps[idx].name;
  return o.for_each_member(hyps[idx].type, 0, [&](const TermPtr& v) {
    std::vector<Hypothesis> rest = hyps;
    for (std::size_t k = idx + 1; k < rest.size(); ++k)
      rest[k].type = subst_term(rest[k].type, v, x);
    return enum_hyps(std::move(rest), idx + 1, subst_judgment(j, v, x), fuel);
  });
}

}  // namespace

Verdict check_open(const std::vector<Hypothesis>& hyps,
                   const std::vector<Symbol>& dims, const ClosedJudgment& j,
                   std::int64_t fuel) {
  std::set<Symbol> avoid(dims.begin(), dims.end());
  if (j.type)
    for (const auto& d : free_dims(j.type)) avoid.insert(d);
  if (j.left)
    for (const auto& d : free_dims(j.left)) avoid.insert(d);
  if (j.right)
    for (const auto& d : free_dims(j.right)) avoid.insert(d);
  for (const auto& h : hyps)
    for (const auto& d : free_dims(h.type)) avoid.insert(d);
  Symbol fresh = fresh_symbol("_d", avoid);

  const DimExpr targets[3] = {DimExpr::zero(), DimExpr::one(),
                              DimExpr::make_name(fresh)};
  std::size_t n = dims.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= 3;

  Verdict acc = Verdict::holds();
  for (std::size_t mask = 0; mask < total; ++mask) {
    DimSubst s;
    std::size_t m = mask;
    for (std::size_t k = 0; k < n; ++k) {
      s.set(dims[k], targets[m % 3]);
      m /= 3;
    }
    std::vector<Hypothesis> hs = hyps;
    for (auto& h : hs) h.type = dim_subst(h.type, s);
    Verdict v = enum_hyps(std::move(hs), 0, dim_subst_judgment(j, s), fuel);
    acc = Oracle::both(acc, v);
    if (acc.is_fails()) return acc;
  }
  return acc;
}

bool commutes_with_subst(const TermPtr& m, std::int64_t fuel) {
  std::set<Symbol> fd = free_dims(m);
  std::vector<Symbol> names(fd.begin(), fd.end());
  Symbol fresh = fresh_symbol("_d", fd);

  EvalResult whole = eval(m, fuel);
  if (!whole.ok()) return false;

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
    EvalResult lhs = eval(dim_subst(m, s), fuel);
    if (!lhs.ok()) return false;
    EvalResult rhs = eval(dim_subst(whole.term, s), fuel);
    if (!rhs.ok()) return false;
    if (!alpha_eq(lhs.term, rhs.term)) return false;
  }
  return true;
}

}  // namespace cartprl
