// Term and dimension syntax for a cubical programming language.
//
// Binding is locally nameless: bound occurrences are de Bruijn indices
// (separate index spaces for term binders and dimension binders), free
// occurrences carry symbols. Alpha-equivalence is therefore a structural
// equality check. Binder nodes keep a display hint that is ignored by
// equality.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace cartprl {

using Symbol = std::string;

// ---------------------------------------------------------------------------
// Dimension expressions: r ::= 0 | 1 | i
//
// Bound is the index form a dimension binder leaves behind inside a term; it
// never appears in user-facing dimension expressions (substitution targets,
// rule arguments).
struct DimExpr {
  enum class Kind : std::uint8_t { Zero, One, Name, Bound };

  Kind kind = Kind::Zero;
  Symbol name{};
  std::uint32_t index = 0;

  static DimExpr zero() { return DimExpr{}; }
  static DimExpr one() { return DimExpr{Kind::One, {}, 0}; }
  static DimExpr make_name(Symbol n) { return DimExpr{Kind::Name, std::move(n), 0}; }
  static DimExpr bound(std::uint32_t ix) { return DimExpr{Kind::Bound, {}, ix}; }

  bool is_const() const { return kind == Kind::Zero || kind == Kind::One; }
  bool is_name() const { return kind == Kind::Name; }

  friend bool operator==(const DimExpr&, const DimExpr&) = default;
};

// Total finite substitution on dimension names; names outside the map are
// fixed. Targets are user-level dimension expressions (never Bound).
class DimSubst {
 public:
  DimSubst() = default;

  static DimSubst single(Symbol from, DimExpr to) {
    DimSubst s;
    s.set(std::move(from), std::move(to));
    return s;
  }

  DimSubst& set(Symbol from, DimExpr to);
  DimExpr apply(const DimExpr& r) const;

  bool empty() const { return map_.empty(); }
  const std::map<Symbol, DimExpr>& entries() const { return map_; }

 private:
  std::map<Symbol, DimExpr> map_;
};

// ---------------------------------------------------------------------------
// Terms.

enum class Tag : std::uint8_t {
  BVar,       // bound term variable (de Bruijn index)
  FVar,       // free term variable (symbol)
  Meta,       // refiner metavariable; never produced by the parser
  FunType,    // (x:A) -> B        kids: A, x.B
  Lam,        // \x. M             kids: x.M
  App,        // M N               kids: M, N
  PairType,   // (x:A) * B         kids: A, x.B
  Pair,       // <M, N>            kids: M, N
  Fst,        // fst M
  Snd,        // snd M
  Bool, True, False,
  If,         // if M then N else O
  Circle, Base,
  Loop,       // loop r            dims: r
  CircleRec,  // S1-rec [x] C M B [i] L   kids: x.C, M, B, i.L
  PathType,   // path [i] A M N    kids: i.A, M, N
  DimAbs,     // <i> M             kids: i.M
  DimApp,     // M @ r             kids: M; dims: r
  ExactEq,    // Eq A M N          kids: A, M, N
  Ax,
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Binding structure of one child slot: how many term / dimension binders the
// child sits under (0 or 1 throughout this language).
struct ChildSpec {
  std::uint8_t term_binders = 0;
  std::uint8_t dim_binders = 0;
};

class Term {
 public:
  Tag tag() const { return tag_; }
  std::uint32_t index() const { return index_; }  // BVar index / Meta id
  const Symbol& name() const { return name_; }    // FVar symbol
  const std::vector<TermPtr>& kids() const { return kids_; }
  const std::vector<DimExpr>& dims() const { return dims_; }
  // Display hints, one per binding child slot; not part of term identity.
  const std::vector<Symbol>& hints() const { return hints_; }

  static std::span<const ChildSpec> child_specs(Tag t);
  static std::size_t dim_slots(Tag t);
  static const char* tag_name(Tag t);

  // Raw factory; callers are expected to use the mk:: helpers.
  static TermPtr make(Tag tag, std::vector<TermPtr> kids = {},
                      std::vector<DimExpr> dims = {}, std::uint32_t index = 0,
                      Symbol name = {}, std::vector<Symbol> hints = {});

 private:
  Term() = default;

  Tag tag_ = Tag::Ax;
  std::uint32_t index_ = 0;
  Symbol name_;
  std::vector<TermPtr> kids_;
  std::vector<DimExpr> dims_;
  std::vector<Symbol> hints_;
};

// Structural equality = alpha-equivalence (hints ignored).
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// ---------------------------------------------------------------------------
// Construction helpers. The named forms close their binder argument, so
// callers build terms with ordinary symbols and never touch indices.
namespace mk {

TermPtr var(Symbol x);
TermPtr bvar(std::uint32_t ix);
TermPtr meta(std::uint32_t id);

TermPtr fun_type(TermPtr dom, const Symbol& x, TermPtr cod_open);
TermPtr lam(const Symbol& x, TermPtr body_open);
TermPtr app(TermPtr f, TermPtr a);

TermPtr pair_type(TermPtr fst_ty, const Symbol& x, TermPtr snd_ty_open);
TermPtr pair(TermPtr m, TermPtr n);
TermPtr fst(TermPtr m);
TermPtr snd(TermPtr m);

TermPtr bool_();
TermPtr true_();
TermPtr false_();
TermPtr if_(TermPtr scrut, TermPtr then_branch, TermPtr else_branch);

TermPtr circle();
TermPtr base();
TermPtr loop(DimExpr r);
TermPtr circle_rec(const Symbol& x, TermPtr motive_open, TermPtr target,
                   TermPtr base_case, const Symbol& i, TermPtr loop_case_open);

TermPtr path_type(const Symbol& i, TermPtr ty_open, TermPtr left, TermPtr right);
TermPtr dim_abs(const Symbol& i, TermPtr body_open);
TermPtr dim_app(TermPtr m, DimExpr r);

TermPtr exact_eq(TermPtr ty, TermPtr lhs, TermPtr rhs);
TermPtr ax();

// Raw binder forms: the body is already closed (de Bruijn), hint is cosmetic.
TermPtr fun_type_raw(TermPtr dom, TermPtr cod_closed, Symbol hint = "_");
TermPtr lam_raw(TermPtr body_closed, Symbol hint = "_");
TermPtr pair_type_raw(TermPtr fst_ty, TermPtr snd_ty_closed, Symbol hint = "_");
TermPtr circle_rec_raw(TermPtr motive_closed, TermPtr target, TermPtr base_case,
                       TermPtr loop_case_closed, Symbol hx = "_", Symbol hi = "_");
TermPtr path_type_raw(TermPtr ty_closed, TermPtr left, TermPtr right, Symbol hint = "_");
TermPtr dim_abs_raw(TermPtr body_closed, Symbol hint = "_");

}  // namespace mk

// ---------------------------------------------------------------------------
// Binding operations.

// Replaces the outermost bound term variable of `body` (the one a binder at
// the root would bind) with `arg`. `arg` must be locally closed.
TermPtr instantiate_term(const TermPtr& body, const TermPtr& arg);

// Replaces the outermost bound dimension of `body` with `r`.
TermPtr instantiate_dim(const TermPtr& body, const DimExpr& r);

// Turns free occurrences of `x` into the variable a new binder at the root
// will bind; inverse of instantiate_term(_, var(x)).
TermPtr abstract_term(const TermPtr& t, const Symbol& x);
TermPtr abstract_dim(const TermPtr& t, const Symbol& i);

// Capture-avoiding substitution of `n` for the free variable `x` in `m`.
TermPtr subst_term(const TermPtr& m, const TermPtr& n, const Symbol& x);

// Applies a dimension substitution to all free dimension occurrences.
// Composition law: dim_subst(dim_subst(M,s1),s2) == dim_subst(M, s2 after s1).
TermPtr dim_subst(const TermPtr& m, const DimSubst& s);

std::set<Symbol> free_vars(const TermPtr& t);
std::set<Symbol> free_dims(const TermPtr& t);

bool has_metas(const TermPtr& t);
std::set<std::uint32_t> metas_of(const TermPtr& t);

// Replaces metavariable leaves; `f` returns nullptr to leave one in place.
// Replacements must be locally closed.
TermPtr subst_metas(const TermPtr& t,
                    const std::function<TermPtr(std::uint32_t)>& f);

// Is the term locally closed (no dangling de Bruijn indices)?
bool locally_closed(const TermPtr& t);

// A symbol based on `hint` that is not in `avoid`.
Symbol fresh_symbol(const Symbol& hint, const std::set<Symbol>& avoid);

}  // namespace cartprl
