#include "cartprl/parser.hpp"

#include <cctype>

namespace cartprl {

std::string ParseError::to_string() const {
  return std::to_string(line) + ":" + std::to_string(col) + ": " + message;
}

namespace {

enum class Tok {
  Ident, Number, String,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Lt, Gt, Comma, Semi, Colon, Pipe, At, Star, Arrow, FatArrow,
  Backslash, Dot, Equals,
  KwBool, KwTt, KwFf, KwIf, KwThen, KwElse,
  KwS1, KwBase, KwLoop, KwS1Rec, KwPath, KwEq, KwAx, KwFst, KwSnd,
  KwDef, KwThm, KwTactic, KwBy,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct ParseFail {
  ParseError err;
};

Tok keyword_of(const std::string& s) {
  if (s == "bool") return Tok::KwBool;
  if (s == "tt") return Tok::KwTt;
  if (s == "ff") return Tok::KwFf;
  if (s == "if") return Tok::KwIf;
  if (s == "then") return Tok::KwThen;
  if (s == "else") return Tok::KwElse;
  if (s == "S1") return Tok::KwS1;
  if (s == "base") return Tok::KwBase;
  if (s == "loop") return Tok::KwLoop;
  if (s == "S1-rec") return Tok::KwS1Rec;
  if (s == "path") return Tok::KwPath;
  if (s == "Eq") return Tok::KwEq;
  if (s == "ax") return Tok::KwAx;
  if (s == "fst") return Tok::KwFst;
  if (s == "snd") return Tok::KwSnd;
  if (s == "def") return Tok::KwDef;
  if (s == "thm") return Tok::KwThm;
  if (s == "tactic") return Tok::KwTactic;
  if (s == "by") return Tok::KwBy;
  // Tactic words (auto, id, fail, lam, use, with) are contextual: they stay
  // ordinary identifiers so declarations and hypotheses may reuse them.
  return Tok::Ident;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      int l = line_, c = col_;
      if (eof()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = peek();
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string s = lex_ident();
        out.push_back({keyword_of(s), s, l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string s;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
          s += take();
        out.push_back({Tok::Number, s, l, c});
      } else if (ch == '"') {
        take();
        std::string s;
        while (!eof() && peek() != '"') s += take();
        if (!eof()) take();
        out.push_back({Tok::String, s, l, c});
      } else {
        out.push_back(lex_symbol(l, c));
      }
    }
  }

  ParseError error;
  bool failed = false;

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t k = 0) const {
    return pos_ + k < text_.size() ? text_[pos_ + k] : '\0';
  }
  char take() {
    char ch = text_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }

  void skip_ws() {
    while (!eof()) {
      char ch = peek();
      if (ch == '-' && peek(1) == '-') {
        while (!eof() && peek() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        take();
      } else {
        break;
      }
    }
  }

  // Identifiers include / and ' freely, and - when not beginning an arrow.
  std::string lex_ident() {
    std::string s;
    s += take();
    while (!eof()) {
      char ch = peek();
      bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
                ch == '\'' || ch == '/' || (ch == '-' && peek(1) != '>');
      if (!ok) break;
      s += take();
    }
    return s;
  }

  Token lex_symbol(int l, int c) {
    char ch = take();
    switch (ch) {
      case '(': return {Tok::LParen, "(", l, c};
      case ')': return {Tok::RParen, ")", l, c};
      case '[': return {Tok::LBrack, "[", l, c};
      case ']': return {Tok::RBrack, "]", l, c};
      case '{': return {Tok::LBrace, "{", l, c};
      case '}': return {Tok::RBrace, "}", l, c};
      case '<': return {Tok::Lt, "<", l, c};
      case '>': return {Tok::Gt, ">", l, c};
      case ',': return {Tok::Comma, ",", l, c};
      case ';': return {Tok::Semi, ";", l, c};
      case ':': return {Tok::Colon, ":", l, c};
      case '|': return {Tok::Pipe, "|", l, c};
      case '@': return {Tok::At, "@", l, c};
      case '*': return {Tok::Star, "*", l, c};
      case '\\': return {Tok::Backslash, "\\", l, c};
      case '.': return {Tok::Dot, ".", l, c};
      case '-':
        if (peek() == '>') {
          take();
          return {Tok::Arrow, "->", l, c};
        }
        break;
      case '=':
        if (peek() == '>') {
          take();
          return {Tok::FatArrow, "=>", l, c};
        }
        return {Tok::Equals, "=", l, c};
      default:
        break;
    }
    failed = true;
    error = {l, c, std::string("unexpected character '") + ch + "'"};
    return {Tok::End, "", l, c};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature* ctx)
      : toks_(std::move(toks)) {
    if (ctx) {
      for (const auto& d : ctx->decls) {
        if (d.sort == Declaration::Sort::TacticAlias) {
          if (d.script) aliases_[d.name] = d.script;
        } else {
          known_.insert(d.name);
        }
      }
    }
  }

  // --- token plumbing ---

  const Token& peek(std::size_t k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseFail{{t.line, t.col, msg}};
  }

  // Bounds recursion on adversarial nesting.
  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > 1000) p.fail("expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) fail("expected " + what);
  }
  std::string expect_ident(const std::string& what) {
    if (!at(Tok::Ident)) fail("expected " + what);
    return take().text;
  }

  // --- scopes ---

  struct Scope {
    std::vector<Symbol> term_vars;
    std::vector<Symbol> dim_vars;
    bool has_term(const Symbol& x) const {
      for (const auto& v : term_vars)
        if (v == x) return true;
      return false;
    }
    bool has_dim(const Symbol& x) const {
      for (const auto& v : dim_vars)
        if (v == x) return true;
      return false;
    }
  };

  // --- terms ---

  TermPtr parse_term(Scope& sc) { return parse_arrow(sc); }

  TermPtr parse_arrow(Scope& sc) {
    DepthGuard guard(*this);
    // Dependent binder group: ( IDENT : ... ) -> / *
    if (at(Tok::LParen) && peek(1).kind == Tok::Ident &&
        peek(2).kind == Tok::Colon) {
      take();
      Symbol x = take().text;
      take();  // ':'
      TermPtr dom = parse_term(sc);
      expect(Tok::RParen, "')'");
      if (accept(Tok::Arrow)) {
        sc.term_vars.push_back(x);
        TermPtr cod = parse_arrow(sc);
        sc.term_vars.pop_back();
        return mk::fun_type(dom, x, cod);
      }
      if (accept(Tok::Star)) {
        sc.term_vars.push_back(x);
        TermPtr second = parse_star(sc);
        sc.term_vars.pop_back();
        TermPtr pt = mk::pair_type(dom, x, second);
        if (accept(Tok::Arrow)) return mk::fun_type(pt, "_", parse_arrow(sc));
        return pt;
      }
      fail("expected '->' or '*' after binder");
    }
    TermPtr lhs = parse_star(sc);
    if (accept(Tok::Arrow)) return mk::fun_type(lhs, "_", parse_arrow(sc));
    return lhs;
  }

  TermPtr parse_star(Scope& sc) {
    TermPtr lhs = parse_app(sc);
    if (accept(Tok::Star)) return mk::pair_type(lhs, "_", parse_star(sc));
    return lhs;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::LParen:
      case Tok::Lt:
      case Tok::Backslash:
      case Tok::KwBool:
      case Tok::KwTt:
      case Tok::KwFf:
      case Tok::KwS1:
      case Tok::KwBase:
      case Tok::KwAx:
        return true;
      default:
        return false;
    }
  }

  TermPtr parse_app(Scope& sc) {
    TermPtr t = parse_prefix(sc);
    while (true) {
      if (accept(Tok::At)) {
        t = mk::dim_app(t, parse_dim(sc));
      } else if (starts_atom()) {
        t = mk::app(t, parse_atom(sc));
      } else {
        return t;
      }
    }
  }

  TermPtr parse_prefix(Scope& sc) {
    switch (peek().kind) {
      case Tok::KwFst:
        take();
        return mk::fst(parse_atom(sc));
      case Tok::KwSnd:
        take();
        return mk::snd(parse_atom(sc));
      case Tok::KwLoop:
        take();
        return mk::loop(parse_dim(sc));
      case Tok::KwIf: {
        take();
        TermPtr cond = parse_app(sc);
        expect(Tok::KwThen, "'then'");
        TermPtr yes = parse_term(sc);
        expect(Tok::KwElse, "'else'");
        TermPtr no = parse_term(sc);
        return mk::if_(cond, yes, no);
      }
      case Tok::KwS1Rec: {
        take();
        expect(Tok::LBrack, "'[' before the motive binder");
        Symbol x = expect_ident("motive binder");
        expect(Tok::RBrack, "']'");
        sc.term_vars.push_back(x);
        TermPtr motive = parse_atom(sc);
        sc.term_vars.pop_back();
        TermPtr target = parse_atom(sc);
        TermPtr base_case = parse_atom(sc);
        expect(Tok::LBrack, "'[' before the loop binder");
        Symbol i = expect_ident("loop dimension binder");
        expect(Tok::RBrack, "']'");
        sc.dim_vars.push_back(i);
        TermPtr loop_case = parse_atom(sc);
        sc.dim_vars.pop_back();
        return mk::circle_rec(x, motive, target, base_case, i, loop_case);
      }
      case Tok::KwPath: {
        take();
        expect(Tok::LBrack, "'[' before the path dimension");
        Symbol i = expect_ident("path dimension binder");
        expect(Tok::RBrack, "']'");
        sc.dim_vars.push_back(i);
        TermPtr ty = parse_atom(sc);
        sc.dim_vars.pop_back();
        TermPtr l = parse_atom(sc);
        TermPtr r = parse_atom(sc);
        return mk::path_type(i, ty, l, r);
      }
      case Tok::KwEq: {
        take();
        TermPtr ty = parse_atom(sc);
        TermPtr l = parse_atom(sc);
        TermPtr r = parse_atom(sc);
        return mk::exact_eq(ty, l, r);
      }
      default:
        return parse_atom(sc);
    }
  }

  TermPtr parse_atom(Scope& sc) {
    switch (peek().kind) {
      case Tok::KwBool: take(); return mk::bool_();
      case Tok::KwTt: take(); return mk::true_();
      case Tok::KwFf: take(); return mk::false_();
      case Tok::KwS1: take(); return mk::circle();
      case Tok::KwBase: take(); return mk::base();
      case Tok::KwAx: take(); return mk::ax();

      case Tok::Ident: {
        const Token& t = take();
        if (t.text == "_") fail("'_' is not a term variable");
        if (allow_free_vars_ || sc.has_term(t.text) || known_.count(t.text))
          return mk::var(t.text);
        throw ParseFail{{t.line, t.col, "unknown identifier " + t.text}};
      }

      case Tok::LParen: {
        take();
        TermPtr t = parse_term(sc);
        expect(Tok::RParen, "')'");
        return t;
      }

      case Tok::Backslash: {
        take();
        std::vector<Symbol> xs;
        xs.push_back(expect_ident("lambda binder"));
        while (at(Tok::Ident)) xs.push_back(take().text);
        expect(Tok::Dot, "'.'");
        for (const auto& x : xs) sc.term_vars.push_back(x);
        TermPtr body = parse_term(sc);
        for (std::size_t k = 0; k < xs.size(); ++k) sc.term_vars.pop_back();
        for (auto it = xs.rbegin(); it != xs.rend(); ++it)
          body = mk::lam(*it, body);
        return body;
      }

      case Tok::Lt: {
        take();
        // <i> M is a dimension abstraction, <M, N> a pair.
        if (at(Tok::Ident) && peek(1).kind == Tok::Gt) {
          Symbol i = take().text;
          take();  // '>'
          sc.dim_vars.push_back(i);
          TermPtr body = parse_term(sc);
          sc.dim_vars.pop_back();
          return mk::dim_abs(i, body);
        }
        TermPtr l = parse_term(sc);
        expect(Tok::Comma, "',' in pair");
        TermPtr r = parse_term(sc);
        expect(Tok::Gt, "'>'");
        return mk::pair(l, r);
      }

      default:
        fail("expected a term");
    }
  }

  DimExpr parse_dim(Scope& sc) {
    if (at(Tok::Number)) {
      const Token& t = take();
      if (t.text == "0") return DimExpr::zero();
      if (t.text == "1") return DimExpr::one();
      throw ParseFail{{t.line, t.col, "dimension constants are 0 and 1"}};
    }
    if (at(Tok::Ident)) {
      const Token& t = take();
      if (sc.has_term(t.text))
        throw ParseFail{
            {t.line, t.col, t.text + " is a term variable, not a dimension"}};
      return DimExpr::make_name(t.text);
    }
    fail("expected a dimension (0, 1, or a name)");
  }

  // --- tactics ---

  TacticPtr parse_tactic(Scope& sc) { return parse_tactic_seq(sc); }

  TacticPtr parse_tactic_seq(Scope& sc) {
    DepthGuard guard(*this);
    TacticPtr t = parse_tactic_alt(sc);
    while (accept(Tok::Semi)) {
      if (at(Tok::LBrack)) {
        take();
        std::vector<TacticPtr> branches;
        if (!at(Tok::RBrack)) {
          branches.push_back(parse_tactic(sc));
          while (accept(Tok::Comma)) branches.push_back(parse_tactic(sc));
        }
        expect(Tok::RBrack, "']'");
        t = Tactic::make_seq_list(t, std::move(branches));
      } else {
        t = Tactic::make_seq(t, parse_tactic_alt(sc));
      }
    }
    return t;
  }

  TacticPtr parse_tactic_alt(Scope& sc) {
    TacticPtr t = parse_tactic_prim(sc);
    while (accept(Tok::Pipe)) t = Tactic::make_or_else(t, parse_tactic_prim(sc));
    return t;
  }

  TacticPtr parse_tactic_prim(Scope& sc) {
    if (at(Tok::Ident)) {
      const std::string& word = peek().text;
      if (word == "auto") {
        take();
        int depth = kDefaultAutoDepth;
        if (at(Tok::Number)) {
          const Token& n = take();
          try {
            depth = std::stoi(n.text);
          } catch (...) {
            throw ParseFail{{n.line, n.col, "auto depth out of range"}};
          }
        }
        return Tactic::make_auto(depth);
      }
      if (word == "id" && peek(1).kind != Tok::FatArrow) {
        take();
        return Tactic::make_id();
      }
      if (word == "fail") {
        take();
        std::string msg;
        if (at(Tok::String)) msg = take().text;
        return Tactic::make_fail(msg);
      }
      if (word == "lam") {
        take();
        std::vector<Symbol> names;
        names.push_back(expect_ident("binder name"));
        while (at(Tok::Ident)) names.push_back(take().text);
        expect(Tok::FatArrow, "'=>'");
        // Binders scope over term references in witness arguments.
        for (const auto& n : names) sc.term_vars.push_back(n);
        TacticPtr body = parse_tactic(sc);
        for (std::size_t k = 0; k < names.size(); ++k) sc.term_vars.pop_back();
        return Tactic::make_surface_lam(std::move(names), std::move(body));
      }
      if (word == "use") {
        take();
        return Tactic::make_surface_use(expect_ident("hypothesis name"));
      }
      if (word == "with") {
        take();
        Symbol n = expect_ident("hypothesis name");
        expect(Tok::FatArrow, "'=>'");
        sc.term_vars.push_back(n);
        TacticPtr body = parse_tactic(sc);
        sc.term_vars.pop_back();
        return Tactic::make_with(n, body);
      }
      return parse_rule_application(sc);
    }
    switch (peek().kind) {
      case Tok::LBrace: {
        take();
        std::vector<TacticPtr> parts;
        parts.push_back(parse_tactic(sc));
        while (accept(Tok::Comma)) parts.push_back(parse_tactic(sc));
        expect(Tok::RBrace, "'}'");
        // A single braced tactic is grouping; two or more form a tuple.
        if (parts.size() == 1) return parts[0];
        return Tactic::make_surface_tuple(std::move(parts));
      }
      case Tok::LParen: {
        take();
        TacticPtr t = parse_tactic(sc);
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected a tactic");
    }
  }

  TacticPtr parse_rule_application(Scope& sc) {
    const Token& tok = take();
    const std::string name = tok.text;
    // Tactic aliases are resolved at parse time.
    auto alias = aliases_.find(name);
    if (alias != aliases_.end()) return alias->second;

    RuleApplication app = RuleApplication::named(name);
    const RuleInfo* info = nullptr;
    for (const auto& r : rule_catalog())
      if (r.name == name) info = &r;
    if (info) {
      if (info->takes_hyp) app.hyp = expect_ident("hypothesis name");
      if (info->takes_term) app.term = parse_atom(sc);
      if (info->takes_dim) app.dim = parse_dim(sc);
    }
    // Unknown names still parse as rule applications; they fail at run time.
    return Tactic::make_rule(std::move(app));
  }

  // --- signatures ---

  Signature parse_signature_toplevel() {
    Signature sig;
    while (!at(Tok::End)) {
      const Token& t = peek();
      Declaration d;
      d.line = t.line;
      d.col = t.col;
      if (accept(Tok::KwDef)) {
        d.sort = Declaration::Sort::Def;
        d.name = expect_ident("definition name");
        check_unique(d.name, t);
        expect(Tok::Colon, "':'");
        Scope sc;
        d.type = parse_term(sc);
        expect(Tok::Equals, "'='");
        d.body = parse_term(sc);
      } else if (accept(Tok::KwThm)) {
        d.sort = Declaration::Sort::Thm;
        d.name = expect_ident("theorem name");
        check_unique(d.name, t);
        expect(Tok::Colon, "':'");
        Scope sc;
        d.type = parse_term(sc);
        expect(Tok::KwBy, "'by'");
        set_allow_free_vars(true);
        d.script = parse_tactic(sc);
        set_allow_free_vars(false);
      } else if (accept(Tok::KwTactic)) {
        d.sort = Declaration::Sort::TacticAlias;
        d.name = expect_ident("tactic name");
        check_unique(d.name, t);
        expect(Tok::Equals, "'='");
        Scope sc;
        set_allow_free_vars(true);
        d.script = parse_tactic(sc);
        set_allow_free_vars(false);
        aliases_[d.name] = d.script;
      } else {
        fail("expected 'def', 'thm', or 'tactic'");
      }
      if (d.sort != Declaration::Sort::TacticAlias) known_.insert(d.name);
      sig.decls.push_back(std::move(d));
    }
    return sig;
  }

  void check_unique(const Symbol& name, const Token& t) {
    if (known_.count(name) || aliases_.count(name))
      throw ParseFail{{t.line, t.col, "duplicate declaration " + name}};
  }

  void set_allow_free_vars(bool b) { allow_free_vars_ = b; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<Symbol> known_;
  std::map<Symbol, TacticPtr> aliases_;
  bool allow_free_vars_ = false;
  int depth_ = 0;
};

std::optional<ParseError> lex_into(std::string_view text, std::vector<Token>& out) {
  Lexer lex(text);
  out = lex.run();
  if (lex.failed) return lex.error;
  return std::nullopt;
}

}  // namespace

std::variant<Signature, ParseError> parse_signature(std::string_view text) {
  std::vector<Token> toks;
  if (auto err = lex_into(text, toks)) return *err;
  Parser p(std::move(toks), nullptr);
  try {
    return p.parse_signature_toplevel();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

std::variant<TermPtr, ParseError> parse_term_text(std::string_view text,
                                                  const Signature* ctx) {
  std::vector<Token> toks;
  if (auto err = lex_into(text, toks)) return *err;
  Parser p(std::move(toks), ctx);
  try {
    Parser::Scope sc;
    TermPtr t = p.parse_term(sc);
    if (!p.at(Tok::End)) p.fail("trailing input after term");
    return t;
  } catch (const ParseFail& f) {
    return f.err;
  }
}

std::variant<TacticPtr, ParseError> parse_tactic_text(std::string_view text,
                                                      const Signature* ctx) {
  std::vector<Token> toks;
  if (auto err = lex_into(text, toks)) return *err;
  Parser p(std::move(toks), ctx);
  // Hypothesis names inside scripts refer to the ambient goal, which the
  // parser cannot see; accept any identifier in witness terms and let the
  // refiner scope-check.
  p.set_allow_free_vars(true);
  try {
    Parser::Scope sc;
    TacticPtr t = p.parse_tactic(sc);
    if (!p.at(Tok::End)) p.fail("trailing input after tactic");
    return t;
  } catch (const ParseFail& f) {
    return f.err;
  }
}

}  // namespace cartprl
