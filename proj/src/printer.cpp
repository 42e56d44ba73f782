#include "cartprl/printer.hpp"

#include <functional>

namespace cartprl {

std::string show_dim(const DimExpr& r) {
  switch (r.kind) {
    case DimExpr::Kind::Zero: return "0";
    case DimExpr::Kind::One: return "1";
    case DimExpr::Kind::Name: return r.name;
    case DimExpr::Kind::Bound: return "#" + std::to_string(r.index);
  }
  return "?";
}

namespace {

// Precedence levels, loosest first.
enum Prec { kArrow = 0, kStar = 1, kApp = 2, kAtom = 3 };

std::string wrap(bool cond, const std::string& s) {
  return cond ? "(" + s + ")" : s;
}

struct Printer {
  std::string go(const TermPtr& t, int prec) {
    switch (t->tag()) {
      case Tag::BVar:
        return "#" + std::to_string(t->index());  // dangling index; debug only
      case Tag::FVar:
        return t->name();
      case Tag::Meta:
        return "?" + std::to_string(t->index());

      case Tag::FunType:
        return binder_type(t, "->", prec);
      case Tag::PairType:
        return binder_type(t, "*", prec);

      case Tag::Lam: {
        Symbol x = open_name(t, 0, t->kids()[0]);
        TermPtr body = instantiate_term(t->kids()[0], mk::var(x));
        return wrap(prec > kArrow, "\\" + x + ". " + go(body, kArrow));
      }
      case Tag::App:
        return wrap(prec > kApp,
                    go(t->kids()[0], kApp) + " " + go(t->kids()[1], kAtom));

      case Tag::Pair:
        return "<" + go(t->kids()[0], kArrow) + ", " + go(t->kids()[1], kArrow) +
               ">";
      case Tag::Fst:
        return wrap(prec > kApp, "fst " + go(t->kids()[0], kAtom));
      case Tag::Snd:
        return wrap(prec > kApp, "snd " + go(t->kids()[0], kAtom));

      case Tag::Bool: return "bool";
      case Tag::True: return "tt";
      case Tag::False: return "ff";
      case Tag::If:
        return wrap(prec > kArrow, "if " + go(t->kids()[0], kApp) + " then " +
                                       go(t->kids()[1], kArrow) + " else " +
                                       go(t->kids()[2], kArrow));

      case Tag::Circle: return "S1";
      case Tag::Base: return "base";
      case Tag::Loop:
        return wrap(prec > kApp, "loop " + show_dim(t->dims()[0]));
      case Tag::CircleRec: {
        Symbol x = open_name(t, 0, t->kids()[0]);
        Symbol i = open_dim_name(t, 1, t->kids()[3]);
        TermPtr motive = instantiate_term(t->kids()[0], mk::var(x));
        TermPtr loop_case = instantiate_dim(t->kids()[3], DimExpr::make_name(i));
        return wrap(prec > kApp, "S1-rec [" + x + "] " + go(motive, kAtom) + " " +
                                     go(t->kids()[1], kAtom) + " " +
                                     go(t->kids()[2], kAtom) + " [" + i + "] " +
                                     go(loop_case, kAtom));
      }

      case Tag::PathType: {
        Symbol i = open_dim_name(t, 0, t->kids()[0]);
        TermPtr body = instantiate_dim(t->kids()[0], DimExpr::make_name(i));
        return wrap(prec > kApp, "path [" + i + "] " + go(body, kAtom) + " " +
                                     go(t->kids()[1], kAtom) + " " +
                                     go(t->kids()[2], kAtom));
      }
      case Tag::DimAbs: {
        Symbol i = open_dim_name(t, 0, t->kids()[0]);
        TermPtr body = instantiate_dim(t->kids()[0], DimExpr::make_name(i));
        return wrap(prec > kArrow, "<" + i + "> " + go(body, kArrow));
      }
      case Tag::DimApp:
        return wrap(prec > kApp,
                    go(t->kids()[0], kApp) + " @ " + show_dim(t->dims()[0]));

      case Tag::ExactEq:
        return wrap(prec > kApp, "Eq " + go(t->kids()[0], kAtom) + " " +
                                     go(t->kids()[1], kAtom) + " " +
                                     go(t->kids()[2], kAtom));
      case Tag::Ax:
        return "ax";
    }
    return "?";
  }

  std::string binder_type(const TermPtr& t, const std::string& conn, int prec) {
    int level = conn == "->" ? kArrow : kStar;
    const TermPtr& cod = t->kids()[1];
    if (!uses_binder(cod)) {
      // Non-dependent sugar A -> B / A * B; right associative, * binds
      // tighter than ->. The codomain has no occurrence of the binder, so
      // instantiating with a throwaway value just strips the index.
      TermPtr body = instantiate_term(cod, mk::bool_());
      return wrap(prec > level,
                  go(t->kids()[0], level + 1) + " " + conn + " " + go(body, level));
    }
    Symbol x = open_name(t, 0, cod);
    TermPtr body = instantiate_term(cod, mk::var(x));
    return wrap(prec > level, "(" + x + " : " + go(t->kids()[0], kArrow) + ") " +
                                  conn + " " + go(body, level));
  }

  static bool uses_binder(const TermPtr& body) {
    bool used = false;
    std::function<void(const TermPtr&, std::uint32_t)> rec =
        [&](const TermPtr& t, std::uint32_t depth) {
          if (t->tag() == Tag::BVar && t->index() == depth) used = true;
          auto specs = Term::child_specs(t->tag());
          for (std::size_t i = 0; i < t->kids().size(); ++i)
            rec(t->kids()[i], depth + specs[i].term_binders);
        };
    rec(body, 0);
    return used;
  }

  Symbol open_name(const TermPtr& t, std::size_t hint_ix, const TermPtr& body) {
    Symbol hint = hint_ix < t->hints().size() ? t->hints()[hint_ix] : "x";
    return fresh_symbol(hint, free_vars(body));
  }

  Symbol open_dim_name(const TermPtr& t, std::size_t hint_ix, const TermPtr& body) {
    Symbol hint = hint_ix < t->hints().size() ? t->hints()[hint_ix] : "i";
    if (hint.empty() || hint == "_") hint = "i";
    return fresh_symbol(hint, free_dims(body));
  }
};

}  // namespace

std::string show_term(const TermPtr& t) {
  Printer p;
  return p.go(t, kArrow);
}

}  // namespace cartprl
