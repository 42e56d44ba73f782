#include "cartprl/syntax.hpp"

#include <array>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace cartprl {

DimSubst& DimSubst::set(Symbol from, DimExpr to) {
  assert(to.kind != DimExpr::Kind::Bound);
  map_[std::move(from)] = std::move(to);
  return *this;
}

DimExpr DimSubst::apply(const DimExpr& r) const {
  if (r.kind != DimExpr::Kind::Name) return r;
  auto it = map_.find(r.name);
  return it == map_.end() ? r : it->second;
}

// ---------------------------------------------------------------------------
// Shape table.

namespace {

struct Shape {
  std::vector<ChildSpec> kids;
  std::size_t dim_slots = 0;
  const char* name = "";
};

const Shape& shape_of(Tag t) {
  static const std::array<Shape, 23> table = {{
      /* BVar      */ {{}, 0, "bvar"},
      /* FVar      */ {{}, 0, "var"},
      /* Meta      */ {{}, 0, "meta"},
      /* FunType   */ {{{0, 0}, {1, 0}}, 0, "fun-type"},
      /* Lam       */ {{{1, 0}}, 0, "lam"},
      /* App       */ {{{0, 0}, {0, 0}}, 0, "app"},
      /* PairType  */ {{{0, 0}, {1, 0}}, 0, "pair-type"},
      /* Pair      */ {{{0, 0}, {0, 0}}, 0, "pair"},
      /* Fst       */ {{{0, 0}}, 0, "fst"},
      /* Snd       */ {{{0, 0}}, 0, "snd"},
      /* Bool      */ {{}, 0, "bool"},
      /* True      */ {{}, 0, "tt"},
      /* False     */ {{}, 0, "ff"},
      /* If        */ {{{0, 0}, {0, 0}, {0, 0}}, 0, "if"},
      /* Circle    */ {{}, 0, "S1"},
      /* Base      */ {{}, 0, "base"},
      /* Loop      */ {{}, 1, "loop"},
      /* CircleRec */ {{{1, 0}, {0, 0}, {0, 0}, {0, 1}}, 0, "S1-rec"},
      /* PathType  */ {{{0, 1}, {0, 0}, {0, 0}}, 0, "path"},
      /* DimAbs    */ {{{0, 1}}, 0, "dim-abs"},
      /* DimApp    */ {{{0, 0}}, 1, "dim-app"},
      /* ExactEq   */ {{{0, 0}, {0, 0}, {0, 0}}, 0, "Eq"},
      /* Ax        */ {{}, 0, "ax"},
  }};
  return table[static_cast<std::size_t>(t)];
}

}  // namespace

std::span<const ChildSpec> Term::child_specs(Tag t) { return shape_of(t).kids; }
std::size_t Term::dim_slots(Tag t) { return shape_of(t).dim_slots; }
const char* Term::tag_name(Tag t) { return shape_of(t).name; }

TermPtr Term::make(Tag tag, std::vector<TermPtr> kids, std::vector<DimExpr> dims,
                   std::uint32_t index, Symbol name, std::vector<Symbol> hints) {
  assert(kids.size() == shape_of(tag).kids.size());
  assert(dims.size() == shape_of(tag).dim_slots);
  auto t = std::shared_ptr<Term>(new Term());
  t->tag_ = tag;
  t->kids_ = std::move(kids);
  t->dims_ = std::move(dims);
  t->index_ = index;
  t->name_ = std::move(name);
  t->hints_ = std::move(hints);
  return t;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
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
  const auto& ka = a->kids();
  const auto& kb = b->kids();
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!alpha_eq(ka[i], kb[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Generic traversal. `on_leaf` may rewrite BVar/FVar/Meta nodes, `on_dim`
// rewrites dimension expressions; both receive the current binder depths.

namespace {

using LeafFn = std::function<TermPtr(const TermPtr&, std::uint32_t, std::uint32_t)>;
using DimFn = std::function<DimExpr(const DimExpr&, std::uint32_t)>;

TermPtr transform(const TermPtr& t, std::uint32_t tdepth, std::uint32_t ddepth,
                  const LeafFn& on_leaf, const DimFn& on_dim) {
  switch (t->tag()) {
    case Tag::BVar:
    case Tag::FVar:
    case Tag::Meta:
      return on_leaf ? on_leaf(t, tdepth, ddepth) : t;
    default:
      break;
  }
  bool changed = false;
  std::vector<DimExpr> dims = t->dims();
  if (on_dim) {
    for (auto& d : dims) {
      DimExpr nd = on_dim(d, ddepth);
      if (!(nd == d)) {
        d = nd;
        changed = true;
      }
    }
  }
  std::vector<TermPtr> kids = t->kids();
  auto specs = Term::child_specs(t->tag());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    TermPtr nk = transform(kids[i], tdepth + specs[i].term_binders,
                           ddepth + specs[i].dim_binders, on_leaf, on_dim);
    if (nk.get() != kids[i].get()) {
      kids[i] = nk;
      changed = true;
    }
  }
  if (!changed) return t;
  return Term::make(t->tag(), std::move(kids), std::move(dims), t->index(),
                    t->name(), t->hints());
}

void visit(const TermPtr& t, std::uint32_t tdepth, std::uint32_t ddepth,
           const std::function<void(const TermPtr&, std::uint32_t, std::uint32_t)>& f) {
  f(t, tdepth, ddepth);
  auto specs = Term::child_specs(t->tag());
  const auto& kids = t->kids();
  for (std::size_t i = 0; i < kids.size(); ++i)
    visit(kids[i], tdepth + specs[i].term_binders, ddepth + specs[i].dim_binders, f);
}

}  // namespace

TermPtr instantiate_term(const TermPtr& body, const TermPtr& arg) {
  return transform(
      body, 0, 0,
      [&](const TermPtr& leaf, std::uint32_t td, std::uint32_t) -> TermPtr {
        if (leaf->tag() == Tag::BVar && leaf->index() == td) return arg;
        return leaf;
      },
      nullptr);
}

TermPtr instantiate_dim(const TermPtr& body, const DimExpr& r) {
  return transform(body, 0, 0, nullptr,
                   [&](const DimExpr& d, std::uint32_t dd) -> DimExpr {
                     if (d.kind == DimExpr::Kind::Bound && d.index == dd) return r;
                     return d;
                   });
}

TermPtr abstract_term(const TermPtr& t, const Symbol& x) {
  return transform(
      t, 0, 0,
      [&](const TermPtr& leaf, std::uint32_t td, std::uint32_t) -> TermPtr {
        if (leaf->tag() == Tag::FVar && leaf->name() == x) return mk::bvar(td);
        return leaf;
      },
      nullptr);
}

TermPtr abstract_dim(const TermPtr& t, const Symbol& i) {
  return transform(t, 0, 0, nullptr,
                   [&](const DimExpr& d, std::uint32_t dd) -> DimExpr {
                     if (d.kind == DimExpr::Kind::Name && d.name == i)
                       return DimExpr::bound(dd);
                     return d;
                   });
}

TermPtr subst_term(const TermPtr& m, const TermPtr& n, const Symbol& x) {
  return transform(
      m, 0, 0,
      [&](const TermPtr& leaf, std::uint32_t, std::uint32_t) -> TermPtr {
        if (leaf->tag() == Tag::FVar && leaf->name() == x) return n;
        return leaf;
      },
      nullptr);
}

TermPtr dim_subst(const TermPtr& m, const DimSubst& s) {
  if (s.empty()) return m;
  return transform(m, 0, 0, nullptr,
                   [&](const DimExpr& d, std::uint32_t) { return s.apply(d); });
}

std::set<Symbol> free_vars(const TermPtr& t) {
  std::set<Symbol> out;
  visit(t, 0, 0, [&](const TermPtr& n, std::uint32_t, std::uint32_t) {
    if (n->tag() == Tag::FVar) out.insert(n->name());
  });
  return out;
}

std::set<Symbol> free_dims(const TermPtr& t) {
  std::set<Symbol> out;
  visit(t, 0, 0, [&](const TermPtr& n, std::uint32_t, std::uint32_t) {
    for (const auto& d : n->dims())
      if (d.kind == DimExpr::Kind::Name) out.insert(d.name);
  });
  return out;
}

bool has_metas(const TermPtr& t) {
  bool found = false;
  visit(t, 0, 0, [&](const TermPtr& n, std::uint32_t, std::uint32_t) {
    if (n->tag() == Tag::Meta) found = true;
  });
  return found;
}

std::set<std::uint32_t> metas_of(const TermPtr& t) {
  std::set<std::uint32_t> out;
  visit(t, 0, 0, [&](const TermPtr& n, std::uint32_t, std::uint32_t) {
    if (n->tag() == Tag::Meta) out.insert(n->index());
  });
  return out;
}

TermPtr subst_metas(const TermPtr& t,
                    const std::function<TermPtr(std::uint32_t)>& f) {
  return transform(
      t, 0, 0,
      [&](const TermPtr& leaf, std::uint32_t, std::uint32_t) -> TermPtr {
        if (leaf->tag() == Tag::Meta) {
          TermPtr r = f(leaf->index());
          if (r) return r;
        }
        return leaf;
      },
      nullptr);
}

bool locally_closed(const TermPtr& t) {
  bool ok = true;
  visit(t, 0, 0, [&](const TermPtr& n, std::uint32_t td, std::uint32_t dd) {
    if (n->tag() == Tag::BVar && n->index() >= td) ok = false;
    for (const auto& d : n->dims())
      if (d.kind == DimExpr::Kind::Bound && d.index >= dd) ok = false;
  });
  return ok;
}

Symbol fresh_symbol(const Symbol& hint, const std::set<Symbol>& avoid) {
  Symbol base = hint.empty() || hint == "_" ? Symbol("x") : hint;
  if (!avoid.count(base)) return base;
  for (int k = 1;; ++k) {
    Symbol cand = base + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Constructors.

namespace mk {

TermPtr var(Symbol x) { return Term::make(Tag::FVar, {}, {}, 0, std::move(x)); }
TermPtr bvar(std::uint32_t ix) { return Term::make(Tag::BVar, {}, {}, ix); }
TermPtr meta(std::uint32_t id) { return Term::make(Tag::Meta, {}, {}, id); }

TermPtr fun_type(TermPtr dom, const Symbol& x, TermPtr cod_open) {
  return Term::make(Tag::FunType, {std::move(dom), abstract_term(cod_open, x)},
                    {}, 0, {}, {x});
}

TermPtr lam(const Symbol& x, TermPtr body_open) {
  return Term::make(Tag::Lam, {abstract_term(body_open, x)}, {}, 0, {}, {x});
}

TermPtr app(TermPtr f, TermPtr a) {
  return Term::make(Tag::App, {std::move(f), std::move(a)});
}

TermPtr pair_type(TermPtr fst_ty, const Symbol& x, TermPtr snd_ty_open) {
  return Term::make(Tag::PairType,
                    {std::move(fst_ty), abstract_term(snd_ty_open, x)}, {}, 0,
                    {}, {x});
}

TermPtr pair(TermPtr m, TermPtr n) {
  return Term::make(Tag::Pair, {std::move(m), std::move(n)});
}

TermPtr fst(TermPtr m) { return Term::make(Tag::Fst, {std::move(m)}); }
TermPtr snd(TermPtr m) { return Term::make(Tag::Snd, {std::move(m)}); }

TermPtr bool_() { return Term::make(Tag::Bool); }
TermPtr true_() { return Term::make(Tag::True); }
TermPtr false_() { return Term::make(Tag::False); }

TermPtr if_(TermPtr scrut, TermPtr then_branch, TermPtr else_branch) {
  return Term::make(
      Tag::If, {std::move(scrut), std::move(then_branch), std::move(else_branch)});
}

TermPtr circle() { return Term::make(Tag::Circle); }
TermPtr base() { return Term::make(Tag::Base); }
TermPtr loop(DimExpr r) { return Term::make(Tag::Loop, {}, {std::move(r)}); }

TermPtr circle_rec(const Symbol& x, TermPtr motive_open, TermPtr target,
                   TermPtr base_case, const Symbol& i, TermPtr loop_case_open) {
  return Term::make(Tag::CircleRec,
                    {abstract_term(motive_open, x), std::move(target),
                     std::move(base_case), abstract_dim(loop_case_open, i)},
                    {}, 0, {}, {x, i});
}

TermPtr path_type(const Symbol& i, TermPtr ty_open, TermPtr left, TermPtr right) {
  return Term::make(Tag::PathType,
                    {abstract_dim(ty_open, i), std::move(left), std::move(right)},
                    {}, 0, {}, {i});
}

TermPtr dim_abs(const Symbol& i, TermPtr body_open) {
  return Term::make(Tag::DimAbs, {abstract_dim(body_open, i)}, {}, 0, {}, {i});
}

TermPtr dim_app(TermPtr m, DimExpr r) {
  return Term::make(Tag::DimApp, {std::move(m)}, {std::move(r)});
}

TermPtr exact_eq(TermPtr ty, TermPtr lhs, TermPtr rhs) {
  return Term::make(Tag::ExactEq, {std::move(ty), std::move(lhs), std::move(rhs)});
}

TermPtr ax() { return Term::make(Tag::Ax); }

TermPtr fun_type_raw(TermPtr dom, TermPtr cod_closed, Symbol hint) {
  return Term::make(Tag::FunType, {std::move(dom), std::move(cod_closed)}, {}, 0,
                    {}, {std::move(hint)});
}

TermPtr lam_raw(TermPtr body_closed, Symbol hint) {
  return Term::make(Tag::Lam, {std::move(body_closed)}, {}, 0, {}, {std::move(hint)});
}

TermPtr pair_type_raw(TermPtr fst_ty, TermPtr snd_ty_closed, Symbol hint) {
  return Term::make(Tag::PairType, {std::move(fst_ty), std::move(snd_ty_closed)},
                    {}, 0, {}, {std::move(hint)});
}

TermPtr circle_rec_raw(TermPtr motive_closed, TermPtr target, TermPtr base_case,
                       TermPtr loop_case_closed, Symbol hx, Symbol hi) {
  return Term::make(Tag::CircleRec,
                    {std::move(motive_closed), std::move(target),
                     std::move(base_case), std::move(loop_case_closed)},
                    {}, 0, {}, {std::move(hx), std::move(hi)});
}

TermPtr path_type_raw(TermPtr ty_closed, TermPtr left, TermPtr right, Symbol hint) {
  return Term::make(Tag::PathType,
                    {std::move(ty_closed), std::move(left), std::move(right)}, {},
                    0, {}, {std::move(hint)});
}

TermPtr dim_abs_raw(TermPtr body_closed, Symbol hint) {
  return Term::make(Tag::DimAbs, {std::move(body_closed)}, {}, 0, {},
                    {std::move(hint)});
}

}  // namespace mk
}  // namespace cartprl
