#pragma once

#include <vector>

#include "reflexa/module.hpp"

namespace reflexa {

// One representative per isomorphism class of nonzero `side` modules over
// `base` with total dimension at most max_dim, over a prime field. The
// representative of a class is the base-change orbit member with the least
// key; output is sorted by (total dimension, dimension vector, key).
// Throws BudgetExceeded when more than budget.modules candidates are visited.
std::vector<Module> enumerate_modules(const AlgebraPtr& base, Side side, std::size_t max_dim,
                                      const Budget& b = default_budget());

}  // namespace reflexa
