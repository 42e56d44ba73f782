// Recursive-descent parser for the concrete syntax: terms, tactic scripts,
// and signature files.
//
// Grammar summary (see README for the full table):
//   types/terms  (x : A) -> B   A -> B   (x : A) * B   A * B
//                bool tt ff     if M then N else O
//                S1 base  loop r   S1-rec [x] C M B [i] L
//                path [i] A M N   <i> M   M @ r
//                Eq A M N   ax    \x. M   <M, N>   fst M   snd M
//   tactics      t1; t2   t; [t0, .., tn]   t1 | t2   auto [n]   id
//                fail ["msg"]   lam x y => t   use x   with x => t
//                {t0, .., tn}   rule names with their arguments
//   signatures   def n : A = M    thm n : A by t    tactic n = t
// Line comments start with --.

#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "cartprl/signature.hpp"
#include "cartprl/tactics.hpp"

namespace cartprl {

struct ParseError {
  int line = 1;
  int col = 1;
  std::string message;

  std::string to_string() const;
};

std::variant<Signature, ParseError> parse_signature(std::string_view text);

// Standalone entry points for the REPL and the session protocol. Free
// identifiers must be names declared in `ctx` (expanded later) or bound;
// dimension names may be free.
std::variant<TermPtr, ParseError> parse_term_text(std::string_view text,
                                                  const Signature* ctx = nullptr);
std::variant<TacticPtr, ParseError> parse_tactic_text(std::string_view text,
                                                      const Signature* ctx = nullptr);

}  // namespace cartprl
