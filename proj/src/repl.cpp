#include "cartprl/repl.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cartprl/dynamics.hpp"
#include "cartprl/parser.hpp"
#include "cartprl/printer.hpp"
#include "cartprl/signature.hpp"
#include "cartprl/tactics.hpp"

namespace cartprl {

namespace {

struct ReplState {
  Signature sig;
  std::map<Symbol, TermPtr> env;
  std::string focused_thm;
  std::vector<ProofState> journal;
  GoalId focused_goal = 0;

  ProofState* current() { return journal.empty() ? nullptr : &journal.back(); }

  void focus_first_open() {
    ProofState* st = current();
    focused_goal = st && !st->open_goals().empty() ? st->open_goals().front() : 0;
  }
};

void print_goals(std::ostream& out, ReplState& rs) {
  ProofState* st = rs.current();
  if (!st) {
    out << "no theorem focused (use :thm NAME)\n";
    return;
  }
  if (st->complete()) {
    out << "proof complete; extract: " << show_term(st->partial_extract()) << "\n";
    return;
  }
  for (GoalId g : st->open_goals()) {
    out << (g == rs.focused_goal ? "> " : "  ") << "#" << g << "  "
        << show_sequent(st->goal(g)) << "\n";
  }
}

bool load_file(std::ostream& out, ReplState& rs, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    out << "cannot open " << path << "\n";
    return false;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto parsed = parse_signature(ss.str());
  if (std::holds_alternative<ParseError>(parsed)) {
    out << path << ":" << std::get<ParseError>(parsed).to_string() << "\n";
    return false;
  }
  rs.sig = std::get<Signature>(std::move(parsed));
  CheckReport report = check_signature(rs.sig, CheckOptions{});
  rs.env = reference_env(rs.sig, report);
  for (const auto& r : report.decls) {
    switch (r.status) {
      case DeclReport::Status::Ok:
        out << "ok    " << r.name << "\n";
        break;
      case DeclReport::Status::OpenGoals:
        out << "open  " << r.name << " (" << r.open_goals.size() << " goals)\n";
        break;
      case DeclReport::Status::Error:
        out << "error " << r.name << ": " << r.message << "\n";
        break;
    }
  }
  return true;
}

void focus_thm(std::ostream& out, ReplState& rs, const std::string& name) {
  const Declaration* d = rs.sig.find(name);
  if (!d || d->sort != Declaration::Sort::Thm) {
    out << "no theorem named " << name << "\n";
    return;
  }
  TermPtr statement = expand_references(d->type, rs.env);
  rs.focused_thm = name;
  rs.journal.clear();
  rs.journal.push_back(ProofState::root(theorem_goal(statement)));
  rs.focus_first_open();
  out << "proving " << name << " : " << show_term(statement) << "\n";
  print_goals(out, rs);
}

void eval_command(std::ostream& out, ReplState& rs, std::string text) {
  bool trace = false;
  const std::string flag = "--trace";
  auto pos = text.find(flag);
  if (pos != std::string::npos) {
    trace = true;
    text.erase(pos, flag.size());
  }
  auto parsed = parse_term_text(text, &rs.sig);
  if (std::holds_alternative<ParseError>(parsed)) {
    out << "parse error " << std::get<ParseError>(parsed).to_string() << "\n";
    return;
  }
  TermPtr term = expand_references(std::get<TermPtr>(parsed), rs.env);
  EvalResult r = eval(term, kDefaultFuel, trace);
  if (trace) {
    out << "  " << show_term(term) << "\n";
    for (const auto& e : r.trace)
      out << (e.stable ? "  =>  " : "  ~>  ") << show_term(e.term) << "\n";
  }
  switch (r.status) {
    case EvalResult::Status::Value:
      out << show_term(r.term) << "  (" << r.steps << " steps)\n";
      break;
    case EvalResult::Status::Stuck:
      out << "stuck at " << show_term(r.term) << "\n";
      break;
    case EvalResult::Status::FuelExhausted:
      out << "fuel exhausted after " << r.steps << " steps\n";
      break;
  }
}

void tactic_command(std::ostream& out, ReplState& rs, const std::string& text) {
  ProofState* st = rs.current();
  if (!st || !st->is_open(rs.focused_goal)) {
    out << "no focused open goal\n";
    return;
  }
  auto parsed = parse_tactic_text(text, &rs.sig);
  if (std::holds_alternative<ParseError>(parsed)) {
    out << "parse error " << std::get<ParseError>(parsed).to_string() << "\n";
    return;
  }
  TacticResult r = run_tactic(*st, rs.focused_goal, std::get<TacticPtr>(parsed));
  if (std::holds_alternative<TacticFailure>(r)) {
    const TacticFailure& f = std::get<TacticFailure>(r);
    out << "tactic failed at " << f.path << ": " << f.reason << "\n";
    return;
  }
  rs.journal.push_back(std::get<TacticOutcome>(r).state);
  rs.focus_first_open();
  print_goals(out, rs);
}

}  // namespace

int run_repl(std::istream& in, std::ostream& out, const std::string& file) {
  ReplState rs;
  if (!file.empty()) load_file(out, rs, file);

  std::string line;
  out << "cartprl repl -- :help for commands\n";
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cmd;
    ls >> cmd;
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);

    if (cmd.empty()) continue;
    if (cmd == ":quit" || cmd == ":q") break;
    if (cmd == ":help") {
      out << ":load FILE    load and check a signature file\n"
             ":thm NAME     start proving a theorem interactively\n"
             ":goals        show open goals\n"
             ":goal N       focus goal #N (shows applicable rules)\n"
             "apply RULE    apply one refinement rule to the focused goal\n"
             "tac SCRIPT    run a tactic on the focused goal\n"
             "undo          roll back the last tactic\n"
             "extract       print the proof extract\n"
             "eval [--trace] TERM\n"
             ":quit\n";
    } else if (cmd == ":load") {
      load_file(out, rs, rest);
    } else if (cmd == ":thm") {
      focus_thm(out, rs, rest);
    } else if (cmd == ":goals") {
      print_goals(out, rs);
    } else if (cmd == ":goal") {
      ProofState* st = rs.current();
      GoalId g = 0;
      try {
        g = std::stoull(rest);
      } catch (...) {
        out << "usage: :goal N\n";
        continue;
      }
      if (st && st->is_open(g)) {
        rs.focused_goal = g;
        out << show_sequent(st->goal(g)) << "\n";
        out << "applicable:";
        for (const auto& r : applicable_rules(*st, g)) out << " " << r;
        out << "\n";
      } else {
        out << "goal #" << rest << " is not open\n";
      }
    } else if (cmd == "apply" || cmd == "tac") {
      tactic_command(out, rs, rest);
    } else if (cmd == "undo") {
      if (rs.journal.size() > 1) {
        rs.journal.pop_back();
        rs.focus_first_open();
        print_goals(out, rs);
      } else {
        out << "nothing to undo\n";
      }
    } else if (cmd == "extract") {
      ProofState* st = rs.current();
      if (!st) {
        out << "no theorem focused\n";
        continue;
      }
      auto ext = extract(*st);
      if (std::holds_alternative<TermPtr>(ext))
        out << show_term(std::get<TermPtr>(ext)) << "\n";
      else
        out << "incomplete: " << std::get<IncompleteError>(ext).open.size()
            << " open goals\n";
    } else if (cmd == "eval") {
      eval_command(out, rs, rest);
    } else {
      out << "unknown command " << cmd << " (:help)\n";
    }
  }
  return 0;
}

}  // namespace cartprl
