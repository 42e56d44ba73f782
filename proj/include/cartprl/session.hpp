// Interactive refinement sessions over a structured request/response
// protocol. Payloads are JSON documents framed with a Content-Length header;
// docs/protocol.md describes every method with worked examples.
//
// Sessions are independent; requests within one session are processed in
// order. Mutating methods carry the session version and are rejected as stale
// when it does not match, so a client can never clobber state it has not
// seen.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cartprl/signature.hpp"
#include "cartprl/tactics.hpp"

namespace cartprl {

using Json = nlohmann::json;

struct TheoremSession {
  Symbol name;
  TermPtr statement;               // references expanded
  std::vector<ProofState> journal; // never empty; back() is current
};

struct Session {
  std::string token;
  Signature sig;
  std::map<Symbol, TermPtr> def_env;  // checked definition bodies
  std::vector<TheoremSession> thms;
  std::uint64_t version = 0;
};

class SessionManager {
 public:
  // Dispatches one request; never throws. Structured errors come back as
  // {"ok": false, "error": {...}} responses.
  Json handle_request(const Json& req);

 private:
  Json session_new(const Json& params);
  Json goal_list(Session& s);
  Json goal_show(Session& s, const Json& params);
  Json tactic_apply(Session& s, const Json& params);
  Json undo(Session& s, const Json& params);
  Json do_extract(Session& s, const Json& params);
  Json do_eval(Session& s, const Json& params);

  std::map<std::string, Session> sessions_;
  int next_token_ = 1;
};

// Content-Length framing shared by the server and its clients.
std::string encode_frame(const std::string& payload);

// Incremental decoder: feed bytes, poll for complete payloads.
class FrameReader {
 public:
  void feed(const char* data, std::size_t n) { buf_.append(data, n); }
  std::optional<std::string> next();

 private:
  std::string buf_;
};

// Serves framed requests on one connected socket until it closes.
void serve_connection(int fd, SessionManager& mgr);

// Blocking accept loop on 127.0.0.1:port; serves until the process dies.
// Returns a non-zero exit code when the socket cannot be opened.
int serve(int port);

}  // namespace cartprl
