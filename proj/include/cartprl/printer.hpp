// Concrete-syntax rendering. show_term is the inverse of the parser up to
// alpha-equivalence; binder hints are respected unless they would shadow a
// name that is free below the binder.

#pragma once

#include <string>

#include "cartprl/syntax.hpp"

namespace cartprl {

std::string show_dim(const DimExpr& r);
std::string show_term(const TermPtr& t);

}  // namespace cartprl
