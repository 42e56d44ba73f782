#include "cartprl/session.hpp"

#include "cartprl/dynamics.hpp"
#include "cartprl/parser.hpp"
#include "cartprl/printer.hpp"

namespace cartprl {

namespace {

Json ok_response(Json result, std::uint64_t version) {
  return Json{{"ok", true}, {"result", std::move(result)}, {"version", version}};
}

Json error_response(const std::string& code, const std::string& message,
                    std::uint64_t version, Json extra = Json::object()) {
  Json err = {{"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  return Json{{"ok", false}, {"error", std::move(err)}, {"version", version}};
}

std::string goal_key(const Symbol& thm, GoalId g) {
  return thm + "#" + std::to_string(g);
}

bool split_goal_key(const std::string& key, Symbol& thm, GoalId& g) {
  auto pos = key.rfind('#');
  if (pos == std::string::npos) return false;
  thm = key.substr(0, pos);
  try {
    g = std::stoull(key.substr(pos + 1));
  } catch (...) {
    return false;
  }
  return true;
}

TheoremSession* find_thm(Session& s, const Symbol& name) {
  for (auto& t : s.thms)
    if (t.name == name) return &t;
  return nullptr;
}

// Renders one theorem's refinement tree. Solved goals carry the realizer
// fragment the clients show; all rendering happens server side.
Json render_thm(const TheoremSession& t) {
  const ProofState& st = t.journal.back();
  Json nodes = Json::array();
  std::vector<GoalId> stack = {st.root_goal()};
  while (!stack.empty()) {
    GoalId g = stack.back();
    stack.pop_back();
    Json node;
    node["id"] = goal_key(t.name, g);
    node["open"] = st.is_open(g);
    node["sequent"] = show_sequent(st.goal(g));
    if (st.goal_raw(g).concl.is_true())
      node["extract"] = show_term(st.goal_extract(g));
    auto rule = st.refined_by(g);
    if (rule) {
      node["rule"] = *rule;
      Json kids = Json::array();
      auto children = st.children_of(g);
      for (GoalId c : children) kids.push_back(goal_key(t.name, c));
      node["children"] = std::move(kids);
      for (auto it = children.rbegin(); it != children.rend(); ++it)
        stack.push_back(*it);
    }
    nodes.push_back(std::move(node));
  }
  Json out;
  out["name"] = t.name;
  out["root"] = goal_key(t.name, st.root_goal());
  out["complete"] = st.complete();
  out["extract"] = show_term(st.partial_extract());
  out["nodes"] = std::move(nodes);
  return out;
}

std::map<Symbol, TermPtr> eval_env(const Session& s) {
  std::map<Symbol, TermPtr> env = s.def_env;
  for (const auto& t : s.thms) {
    const ProofState& st = t.journal.back();
    if (!st.complete()) continue;
    auto ext = extract(st);
    if (std::holds_alternative<TermPtr>(ext)) env[t.name] = std::get<TermPtr>(ext);
  }
  return env;
}

}  // namespace

Json SessionManager::session_new(const Json& params) {
  if (!params.contains("file") || !params["file"].is_string())
    return error_response("BadRequest", "session/new needs a 'file' string", 0);

  auto parsed = parse_signature(params["file"].get<std::string>());
  if (std::holds_alternative<ParseError>(parsed)) {
    const ParseError& e = std::get<ParseError>(parsed);
    return error_response("ParseFailed", e.message, 0,
                          Json{{"line", e.line}, {"col", e.col}});
  }

  Session s;
  s.token = "s" + std::to_string(next_token_++);
  s.sig = std::get<Signature>(std::move(parsed));

  // Check definitions up front so references expand during the session;
  // theorems open as fresh interactive proofs, their scripts left alone.
  CheckOptions opts;
  CheckReport defs = check_signature(s.sig, opts);
  s.def_env = reference_env(s.sig, defs);

  Json thms = Json::array();
  for (const auto& d : s.sig.decls) {
    if (d.sort != Declaration::Sort::Thm) continue;
    TheoremSession t;
    t.name = d.name;
    t.statement = expand_references(d.type, s.def_env);
    t.journal.push_back(ProofState::root(theorem_goal(t.statement)));
    thms.push_back(Json{{"name", d.name}, {"statement", show_term(t.statement)}});
    s.thms.push_back(std::move(t));
  }

  std::string token = s.token;
  sessions_.emplace(token, std::move(s));
  Json result;
  result["session"] = token;
  result["thms"] = std::move(thms);
  return ok_response(std::move(result), 0);
}

Json SessionManager::goal_list(Session& s) {
  Json thms = Json::array();
  for (const auto& t : s.thms) thms.push_back(render_thm(t));
  Json open = Json::array();
  for (const auto& t : s.thms)
    for (GoalId g : t.journal.back().open_goals())
      open.push_back(goal_key(t.name, g));
  Json result;
  result["thms"] = std::move(thms);
  result["open"] = std::move(open);
  return ok_response(std::move(result), s.version);
}

Json SessionManager::goal_show(Session& s, const Json& params) {
  Symbol thm;
  GoalId g = 0;
  if (!params.contains("id") || !params["id"].is_string() ||
      !split_goal_key(params["id"].get<std::string>(), thm, g))
    return error_response("BadRequest", "goal/show needs an 'id'", s.version);
  TheoremSession* t = find_thm(s, thm);
  if (!t)
    return error_response("BadRequest", "unknown theorem " + thm, s.version);
  const ProofState& st = t->journal.back();
  if (!st.is_open(g))
    return error_response("BadRequest", "goal is not open", s.version);

  Sequent seq = st.goal(g);
  Json hyps = Json::array();
  for (const auto& h : seq.hyps)
    hyps.push_back(Json{{"name", h.name},
                        {"type", show_term(h.type)},
                        {"kind", kind_name(h.kind)}});
  Json result;
  result["id"] = params["id"];
  result["dims"] = seq.dims;
  result["hyps"] = std::move(hyps);
  result["concl"] = show_conclusion(seq.concl);
  result["sequent"] = show_sequent(seq);
  result["rules"] = applicable_rules(st, g);
  return ok_response(std::move(result), s.version);
}

Json SessionManager::tactic_apply(Session& s, const Json& params) {
  Symbol thm;
  GoalId g = 0;
  if (!params.contains("goalId") || !params["goalId"].is_string() ||
      !split_goal_key(params["goalId"].get<std::string>(), thm, g))
    return error_response("BadRequest", "tactic/apply needs a 'goalId'", s.version);
  if (!params.contains("script") || !params["script"].is_string())
    return error_response("BadRequest", "tactic/apply needs a 'script'", s.version);
  TheoremSession* t = find_thm(s, thm);
  if (!t)
    return error_response("BadRequest", "unknown theorem " + thm, s.version);

  auto parsed = parse_tactic_text(params["script"].get<std::string>(), &s.sig);
  if (std::holds_alternative<ParseError>(parsed)) {
    const ParseError& e = std::get<ParseError>(parsed);
    return error_response("ParseFailed", e.message, s.version,
                          Json{{"line", e.line}, {"col", e.col}});
  }

  const ProofState& before = t->journal.back();
  if (!before.is_open(g))
    return error_response("BadRequest", "goal is not open", s.version);
  TacticResult run = run_tactic(before, g, std::get<TacticPtr>(parsed));
  if (std::holds_alternative<TacticFailure>(run)) {
    const TacticFailure& f = std::get<TacticFailure>(run);
    return error_response("TacticFailed", f.reason, s.version,
                          Json{{"path", f.path}});
  }

  TacticOutcome out = std::get<TacticOutcome>(std::move(run));
  t->journal.push_back(out.state);
  ++s.version;

  Json produced = Json::array();
  for (GoalId p : out.produced) produced.push_back(goal_key(thm, p));
  Json result;
  result["produced"] = std::move(produced);
  result["thm"] = render_thm(*t);
  return ok_response(std::move(result), s.version);
}

Json SessionManager::undo(Session& s, const Json& params) {
  if (!params.contains("thm") || !params["thm"].is_string())
    return error_response("BadRequest", "undo needs a 'thm'", s.version);
  TheoremSession* t = find_thm(s, params["thm"].get<std::string>());
  if (!t)
    return error_response("BadRequest", "unknown theorem", s.version);
  // The journal never underflows past the root state.
  if (t->journal.size() > 1) t->journal.pop_back();
  ++s.version;
  Json result;
  result["thm"] = render_thm(*t);
  return ok_response(std::move(result), s.version);
}

Json SessionManager::do_extract(Session& s, const Json& params) {
  if (!params.contains("thm") || !params["thm"].is_string())
    return error_response("BadRequest", "extract needs a 'thm'", s.version);
  TheoremSession* t = find_thm(s, params["thm"].get<std::string>());
  if (!t)
    return error_response("BadRequest", "unknown theorem", s.version);
  auto ext = extract(t->journal.back());
  if (std::holds_alternative<IncompleteError>(ext)) {
    Json open = Json::array();
    for (GoalId g : std::get<IncompleteError>(ext).open)
      open.push_back(goal_key(t->name, g));
    return error_response("IncompleteProof", "proof has open goals", s.version,
                          Json{{"open", std::move(open)}});
  }
  Json result;
  result["extract"] = show_term(std::get<TermPtr>(ext));
  return ok_response(std::move(result), s.version);
}

Json SessionManager::do_eval(Session& s, const Json& params) {
  if (!params.contains("term") || !params["term"].is_string())
    return error_response("BadRequest", "eval needs a 'term'", s.version);
  std::int64_t fuel = kDefaultFuel;
  if (params.contains("fuel") && params["fuel"].is_number_integer())
    fuel = params["fuel"].get<std::int64_t>();

  auto parsed = parse_term_text(params["term"].get<std::string>(), &s.sig);
  if (std::holds_alternative<ParseError>(parsed)) {
    const ParseError& e = std::get<ParseError>(parsed);
    return error_response("ParseFailed", e.message, s.version,
                          Json{{"line", e.line}, {"col", e.col}});
  }
  TermPtr term = expand_references(std::get<TermPtr>(parsed), eval_env(s));
  EvalResult r = eval(term, fuel, /*want_trace=*/true);

  Json trace = Json::array();
  for (const auto& e : r.trace)
    trace.push_back(Json{{"term", show_term(e.term)}, {"stable", e.stable}});
  Json result;
  result["input"] = show_term(term);
  switch (r.status) {
    case EvalResult::Status::Value: result["status"] = "value"; break;
    case EvalResult::Status::Stuck: result["status"] = "stuck"; break;
    case EvalResult::Status::FuelExhausted: result["status"] = "fuel"; break;
  }
  result["term"] = show_term(r.term);
  result["steps"] = r.steps;
  result["trace"] = std::move(trace);
  return ok_response(std::move(result), s.version);
}

Json SessionManager::handle_request(const Json& req) {
  if (!req.is_object() || !req.contains("method") || !req["method"].is_string())
    return error_response("BadRequest", "request needs a 'method'", 0);
  const std::string method = req["method"].get<std::string>();
  const Json params = req.contains("params") ? req["params"] : Json::object();

  if (method == "session/new") return session_new(params);

  if (!params.contains("session") || !params["session"].is_string())
    return error_response("BadRequest", "request needs a 'session'", 0);
  auto it = sessions_.find(params["session"].get<std::string>());
  if (it == sessions_.end())
    return error_response("BadRequest", "unknown session", 0);
  Session& s = it->second;

  // Mutating methods are serialized through the version counter.
  const bool mutating = method == "tactic/apply" || method == "undo";
  if (mutating) {
    if (!req.contains("version") || !req["version"].is_number_unsigned())
      return error_response("BadRequest", "mutating requests need a 'version'",
                            s.version);
    if (req["version"].get<std::uint64_t>() != s.version)
      return error_response("StaleVersion",
                            "request was built against version " +
                                req["version"].dump() + ", current is " +
                                std::to_string(s.version),
                            s.version);
  }

  if (method == "goal/list") return goal_list(s);
  if (method == "goal/show") return goal_show(s, params);
  if (method == "tactic/apply") return tactic_apply(s, params);
  if (method == "undo") return undo(s, params);
  if (method == "extract") return do_extract(s, params);
  if (method == "eval") return do_eval(s, params);
  return error_response("BadRequest", "unknown method " + method, s.version);
}

// ---------------------------------------------------------------------------
// Framing.

std::string encode_frame(const std::string& payload) {
  return "Content-Length: " + std::to_string(payload.size()) + "\r\n\r\n" +
         payload;
}

std::optional<std::string> FrameReader::next() {
  const std::string header_end = "\r\n\r\n";
  auto pos = buf_.find(header_end);
  if (pos == std::string::npos) return std::nullopt;
  const std::string prefix = "Content-Length:";
  auto start = buf_.find(prefix);
  if (start == std::string::npos || start > pos) return std::nullopt;
  std::size_t len = 0;
  try {
    len = std::stoull(buf_.substr(start + prefix.size(),
                                  pos - start - prefix.size()));
  } catch (...) {
    buf_.erase(0, pos + header_end.size());
    return std::nullopt;
  }
  std::size_t body_start = pos + header_end.size();
  if (buf_.size() < body_start + len) return std::nullopt;
  std::string payload = buf_.substr(body_start, len);
  buf_.erase(0, body_start + len);
  return payload;
}

}  // namespace cartprl
