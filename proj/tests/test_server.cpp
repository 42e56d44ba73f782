#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/socket.h>
#include <unistd.h>

#include <thread>

#include "cartprl/session.hpp"

using namespace cartprl;

namespace {

const char* kPairFile =
    "thm pair_intro : (x : bool) -> (y : bool) -> (z : bool) * bool by\n"
    "  lam x y => {use x, use y}\n";

Json req(const std::string& method, Json params) {
  return Json{{"method", method}, {"params", std::move(params)}};
}

Json mut(const std::string& method, Json params, std::uint64_t version) {
  Json r = req(method, std::move(params));
  r["version"] = version;
  return r;
}

struct Client {
  SessionManager mgr;
  std::string session;
  std::uint64_t version = 0;

  Json call(Json request) {
    Json resp = mgr.handle_request(request);
    if (resp["ok"].get<bool>()) version = resp["version"].get<std::uint64_t>();
    return resp;
  }

  Json open(const std::string& file) {
    Json r = call(req("session/new", {{"file", file}}));
    REQUIRE(r["ok"].get<bool>());
    session = r["result"]["session"].get<std::string>();
    return r;
  }

  Json apply(const std::string& goal, const std::string& script) {
    return call(mut("tactic/apply",
                    {{"session", session}, {"goalId", goal}, {"script", script}},
                    version));
  }
};

}  // namespace

TEST_CASE("framing round trip") {
  std::string payload = "{\"method\":\"goal/list\"}";
  std::string frame = encode_frame(payload);
  CHECK(frame.substr(0, 16) == "Content-Length: ");

  FrameReader reader;
  // Feed in two arbitrary chunks plus a second frame.
  std::string two = frame + encode_frame("xy");
  reader.feed(two.data(), 10);
  CHECK_FALSE(reader.next().has_value());
  reader.feed(two.data() + 10, two.size() - 10);
  auto first = reader.next();
  REQUIRE(first.has_value());
  CHECK(*first == payload);
  auto second = reader.next();
  REQUIRE(second.has_value());
  CHECK(*second == "xy");
  CHECK_FALSE(reader.next().has_value());
}

TEST_CASE("session lifecycle on the pair example") {
  Client c;
  Json opened = c.open(kPairFile);
  REQUIRE(opened["result"]["thms"].size() == 1);

  Json listed = c.call(req("goal/list", {{"session", c.session}}));
  REQUIRE(listed["ok"].get<bool>());
  REQUIRE(listed["result"]["open"].size() == 1);
  std::string root = listed["result"]["open"][0].get<std::string>();

  Json shown = c.call(req("goal/show", {{"session", c.session}, {"id", root}}));
  REQUIRE(shown["ok"].get<bool>());
  CHECK(shown["result"]["concl"].get<std::string>().find("true") !=
        std::string::npos);
  CHECK(!shown["result"]["rules"].empty());

  // Two intro layers by script, then sigma/intro listing three subgoals.
  Json l1 = c.apply(root, "lam x => id");
  REQUIRE(l1["ok"].get<bool>());
  REQUIRE(l1["result"]["produced"].size() == 1);
  std::string g1 = l1["result"]["produced"][0].get<std::string>();
  Json l2 = c.apply(g1, "lam y => id");
  REQUIRE(l2["ok"].get<bool>());
  std::string g2 = l2["result"]["produced"][0].get<std::string>();

  Json split = c.apply(g2, "sigma/intro");
  REQUIRE(split["ok"].get<bool>());
  CHECK(split["result"]["produced"].size() == 3);

  // Undo restores the previous goal list.
  Json before = c.call(req("goal/list", {{"session", c.session}}));
  Json sub = c.apply(split["result"]["produced"][0].get<std::string>(),
                     "hypothesis x");
  REQUIRE(sub["ok"].get<bool>());
  Json undone = c.call(mut("undo", {{"session", c.session}, {"thm", "pair_intro"}},
                           c.version));
  REQUIRE(undone["ok"].get<bool>());
  Json after = c.call(req("goal/list", {{"session", c.session}}));
  CHECK(before["result"]["thms"] == after["result"]["thms"]);

  // Finish the proof and extract.
  Json finish = c.apply(split["result"]["produced"][0].get<std::string>(),
                        "use x");
  REQUIRE(finish["ok"].get<bool>());
  finish = c.apply(split["result"]["produced"][1].get<std::string>(), "use y");
  REQUIRE(finish["ok"].get<bool>());
  finish = c.apply(split["result"]["produced"][2].get<std::string>(), "auto");
  REQUIRE(finish["ok"].get<bool>());

  Json ext = c.call(req("extract", {{"session", c.session}, {"thm", "pair_intro"}}));
  REQUIRE(ext["ok"].get<bool>());
  CHECK(ext["result"]["extract"].get<std::string>() == "\\x. \\y. <x, y>");
}

TEST_CASE("eval method evaluates with a trace") {
  Client c;
  c.open(kPairFile);
  Json r = c.call(req("eval", {{"session", c.session},
                               {"term", "if tt then ff else tt"},
                               {"fuel", 10}}));
  REQUIRE(r["ok"].get<bool>());
  CHECK(r["result"]["status"] == "value");
  CHECK(r["result"]["term"] == "ff");
  CHECK(r["result"]["steps"].get<int>() == 1);
  CHECK(r["result"]["trace"].size() == 1);
  CHECK(r["result"]["trace"][0]["stable"].get<bool>());
}

TEST_CASE("stale versions are rejected; failures do not mutate") {
  Client c;
  c.open(kPairFile);
  Json listed = c.call(req("goal/list", {{"session", c.session}}));
  std::string root = listed["result"]["open"][0].get<std::string>();

  // Successful apply bumps the version.
  Json ok1 = c.apply(root, "lam x => id");
  REQUIRE(ok1["ok"].get<bool>());
  std::uint64_t v1 = ok1["version"].get<std::uint64_t>();
  CHECK(v1 == 1);

  // Replaying against the old version is stale.
  Json stale = c.call(mut("tactic/apply",
                          {{"session", c.session},
                           {"goalId", root},
                           {"script", "auto"}},
                          0));
  REQUIRE_FALSE(stale["ok"].get<bool>());
  CHECK(stale["error"]["code"] == "StaleVersion");

  // A failing tactic neither bumps the version nor changes the goals.
  Json goals_before = c.call(req("goal/list", {{"session", c.session}}));
  std::string open_goal = goals_before["result"]["open"][0].get<std::string>();
  Json failing = c.call(mut("tactic/apply",
                            {{"session", c.session},
                             {"goalId", open_goal},
                             {"script", "sigma/intro"}},
                            v1));
  REQUIRE_FALSE(failing["ok"].get<bool>());
  CHECK(failing["error"]["code"] == "TacticFailed");
  CHECK(failing["error"]["path"].get<std::string>().find("sigma/intro") !=
        std::string::npos);
  Json goals_after = c.call(req("goal/list", {{"session", c.session}}));
  CHECK(goals_before["result"] == goals_after["result"]);
  CHECK(goals_after["version"].get<std::uint64_t>() == v1);
}

TEST_CASE("version monotonicity across mutations") {
  Client c;
  c.open(kPairFile);
  Json listed = c.call(req("goal/list", {{"session", c.session}}));
  std::string root = listed["result"]["open"][0].get<std::string>();

  std::vector<std::uint64_t> versions;
  Json a = c.apply(root, "lam x => id");
  versions.push_back(a["version"].get<std::uint64_t>());
  Json u = c.call(mut("undo", {{"session", c.session}, {"thm", "pair_intro"}},
                      c.version));
  versions.push_back(u["version"].get<std::uint64_t>());
  for (std::size_t k = 1; k < versions.size(); ++k)
    CHECK(versions[k] > versions[k - 1]);
}

TEST_CASE("protocol replay reproduces byte-identical responses") {
  std::vector<Json> script = {
      req("session/new", {{"file", kPairFile}}),
      req("goal/list", {{"session", "s1"}}),
      req("goal/show", {{"session", "s1"}, {"id", "pair_intro#1"}}),
      mut("tactic/apply",
          {{"session", "s1"},
           {"goalId", "pair_intro#1"},
           {"script", "lam x y => {use x, use y}"}},
          0),
      req("extract", {{"session", "s1"}, {"thm", "pair_intro"}}),
      req("eval", {{"session", "s1"}, {"term", "loop 0"}}),
  };

  auto run = [&script]() {
    SessionManager mgr;
    std::string all;
    for (const auto& r : script) all += mgr.handle_request(r).dump() + "\n";
    return all;
  };
  std::string first = run();
  std::string second = run();
  CHECK(first == second);
  CHECK(first.find("\"extract\":\"\\\\x. \\\\y. <x, y>\"") != std::string::npos);
}

TEST_CASE("socket round trip over a connected pair") {
  int fds[2];
  REQUIRE(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0);

  SessionManager mgr;
  std::thread server([&] { serve_connection(fds[0], mgr); });

  auto send = [&](const Json& j) {
    std::string frame = encode_frame(j.dump());
    REQUIRE(::write(fds[1], frame.data(), frame.size()) ==
            static_cast<ssize_t>(frame.size()));
  };
  FrameReader reader;
  auto recv = [&]() {
    char buf[4096];
    while (true) {
      if (auto payload = reader.next()) return Json::parse(*payload);
      ssize_t n = ::read(fds[1], buf, sizeof buf);
      REQUIRE(n > 0);
      reader.feed(buf, static_cast<std::size_t>(n));
    }
  };

  send(req("session/new", {{"file", kPairFile}}));
  Json opened = recv();
  REQUIRE(opened["ok"].get<bool>());
  std::string session = opened["result"]["session"].get<std::string>();

  send(req("eval", {{"session", session}, {"term", "loop 1"}}));
  Json evald = recv();
  REQUIRE(evald["ok"].get<bool>());
  CHECK(evald["result"]["term"] == "base");

  ::close(fds[1]);
  server.join();
  ::close(fds[0]);
}

TEST_CASE("structured errors for malformed requests") {
  SessionManager mgr;
  Json bad = mgr.handle_request(Json{{"nonsense", 1}});
  CHECK_FALSE(bad["ok"].get<bool>());
  CHECK(bad["error"]["code"] == "BadRequest");

  Json no_session = mgr.handle_request(req("goal/list", {}));
  CHECK_FALSE(no_session["ok"].get<bool>());

  Json parse_fail = mgr.handle_request(req("session/new", {{"file", "thm ("}}));
  CHECK_FALSE(parse_fail["ok"].get<bool>());
  CHECK(parse_fail["error"]["code"] == "ParseFailed");
}
