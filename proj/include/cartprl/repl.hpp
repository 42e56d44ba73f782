// Line-oriented interactive loop. Stream-based so tests can drive it.

#pragma once

#include <iosfwd>
#include <string>

namespace cartprl {

int run_repl(std::istream& in, std::ostream& out, const std::string& file = {});

}  // namespace cartprl
