// cartprl: batch checker, REPL, and proof session server.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cartprl/parser.hpp"
#include "cartprl/printer.hpp"
#include "cartprl/repl.hpp"
#include "cartprl/session.hpp"
#include "cartprl/signature.hpp"

namespace {

using cartprl::DeclReport;

int run_check(const std::string& path, std::int64_t fuel, bool trace, bool json) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cartprl: cannot open " << path << "\n";
    return 1;
  }
  std::stringstream ss;
  ss << in.rdbuf();

  auto parsed = cartprl::parse_signature(ss.str());
  if (std::holds_alternative<cartprl::ParseError>(parsed)) {
    const auto& e = std::get<cartprl::ParseError>(parsed);
    if (json) {
      nlohmann::json out = {{"file", path},
                            {"ok", false},
                            {"parseError",
                             {{"line", e.line}, {"col", e.col}, {"message", e.message}}}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cerr << path << ":" << e.to_string() << "\n";
    }
    return 1;
  }

  cartprl::Signature sig = std::get<cartprl::Signature>(std::move(parsed));
  cartprl::CheckOptions opts;
  opts.fuel = fuel;
  opts.trace = trace;
  opts.trace_out = &std::cout;
  cartprl::CheckReport report = cartprl::check_signature(sig, opts);

  if (json) {
    nlohmann::json decls = nlohmann::json::array();
    for (const auto& r : report.decls) {
      nlohmann::json d;
      d["name"] = r.name;
      d["line"] = r.line;
      d["col"] = r.col;
      switch (r.status) {
        case DeclReport::Status::Ok:
          d["status"] = "ok";
          if (r.extract) d["extract"] = cartprl::show_term(r.extract);
          break;
        case DeclReport::Status::OpenGoals:
          d["status"] = "openGoals";
          d["goals"] = r.open_goals;
          break;
        case DeclReport::Status::Error:
          d["status"] = "error";
          d["message"] = r.message;
          break;
      }
      decls.push_back(std::move(d));
    }
    nlohmann::json out = {{"file", path}, {"ok", report.all_ok()}, {"decls", decls}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : report.decls) {
      switch (r.status) {
        case DeclReport::Status::Ok:
          std::cout << "ok    " << r.name;
          if (r.extract) std::cout << "  ==>  " << cartprl::show_term(r.extract);
          std::cout << "\n";
          break;
        case DeclReport::Status::OpenGoals:
          std::cout << "open  " << r.name << "\n";
          for (const auto& g : r.open_goals) std::cout << "        " << g << "\n";
          break;
        case DeclReport::Status::Error:
          std::cout << "error " << r.name << " (" << r.line << ":" << r.col
                    << "): " << r.message << "\n";
          break;
      }
    }
  }
  return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cartprl: a desk-scale cubical proof assistant"};
  app.require_subcommand(1);

  std::string check_file;
  std::int64_t fuel = cartprl::kDefaultFuel;
  bool trace = false;
  bool json = false;
  auto* check = app.add_subcommand("check", "check a signature file");
  check->add_option("file", check_file, "signature file (.prl)")->required();
  check->add_option("--fuel", fuel, "evaluation fuel");
  check->add_flag("--trace", trace, "print evaluation traces for definitions");
  check->add_flag("--json", json, "machine-readable report");

  std::string repl_file;
  auto* repl = app.add_subcommand("repl", "interactive proof loop");
  repl->add_option("file", repl_file, "signature file to load");

  int port = 7737;
  auto* serve = app.add_subcommand("serve", "proof session server");
  serve->add_option("--port", port, "TCP port on 127.0.0.1")->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check(check_file, fuel, trace, json);
  if (repl->parsed()) return cartprl::run_repl(std::cin, std::cout, repl_file);
  if (serve->parsed()) return cartprl::serve(port);
  return 1;
}
