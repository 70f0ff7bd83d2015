#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reflexa/algebra.hpp"

namespace reflexa {

// Path algebra of 1 -> 2 -> ... -> n.
AlgebraPtr linear_a(Field k, std::size_t n);
// k[x]/(x^n) as a one-loop quiver.
AlgebraPtr truncated_polynomial(Field k, std::size_t n);
// k[x,y]/(x,y)^2 as a two-loop quiver with all length-2 paths zero.
AlgebraPtr square_zero_two_loops(Field k);
// Square quiver a:1->2, b:2->4, c:1->3, d:3->4 with the single relation a.b = 0.
AlgebraPtr square_with_zero_relation(Field k);
// Random monomial quiver algebra of dimension at most max_dim; depends only
// on the seed.
AlgebraPtr random_monomial(Field k, std::uint64_t seed, std::size_t max_dim);

// kA2, kA3, k[x]/x^2, k[x]/x^3, k[x,y]/(x,y)^2, the Auslander algebras of
// k[x]/x^2 and k[x]/x^3, the square with a zero relation, and random
// monomial algebras for seeds 1..random_count (dimension <= 8).
std::vector<AlgebraPtr> standard_corpus(Field k, std::size_t random_count = 5);

}  // namespace reflexa
