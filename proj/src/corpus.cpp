#include "reflexa/corpus.hpp"

#include "reflexa/morita.hpp"

#include <random>

#include "reflexa/error.hpp"

namespace reflexa {

AlgebraPtr linear_a(Field k, std::size_t n) {
  Quiver q{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) q.arrows.push_back({"a" + std::to_string(i + 1), i, i + 1});
  auto a = Algebra::bound_quiver(k, q, {});
  a->set_name("kA" + std::to_string(n));
  return a;
}

AlgebraPtr truncated_polynomial(Field k, std::size_t n) {
  Quiver q{1, {{"x", 0, 0}}};
  std::vector<std::string> rel(n, "x");
  auto a = Algebra::bound_quiver(k, q, {rel});
  a->set_name("k[x]/x^" + std::to_string(n));
  return a;
}

AlgebraPtr square_zero_two_loops(Field k) {
  Quiver q{1, {{"x", 0, 0}, {"y", 0, 0}}};
  auto a = Algebra::bound_quiver(k, q, {{"x", "x"}, {"x", "y"}, {"y", "x"}, {"y", "y"}});
  a->set_name("k[x,y]/(x,y)^2");
  return a;
}

AlgebraPtr square_with_zero_relation(Field k) {
  Quiver q{4, {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}}};
  auto a = Algebra::bound_quiver(k, q, {{"a", "b"}});
  a->set_name("square/ab");
  return a;
}

AlgebraPtr random_monomial(Field k, std::uint64_t seed, std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::size_t n = 1 + rng() % 3;
    std::size_t arrows = 1 + rng() % 4;
    Quiver q{n, {}};
    for (std::size_t i = 0; i < arrows; ++i)
      q.arrows.push_back({"r" + std::to_string(i + 1), static_cast<std::size_t>(rng() % n),
                          static_cast<std::size_t>(rng() % n)});
    // Relations: random composable paths of length 2 or 3.
    std::vector<std::vector<std::string>> rels;
    std::size_t nrel = rng() % 4;
    for (std::size_t r = 0; r < nrel; ++r) {
      std::size_t len = 2 + rng() % 2;
      std::size_t cur = rng() % arrows;
      std::vector<std::string> path{q.arrows[cur].name};
      for (std::size_t s = 1; s < len; ++s) {
        std::vector<std::size_t> next;
        for (std::size_t j = 0; j < arrows; ++j)
          if (q.arrows[j].src == q.arrows[cur].dst) next.push_back(j);
        if (next.empty()) break;
        cur = next[rng() % next.size()];
        path.push_back(q.arrows[cur].name);
      }
      if (path.size() >= 2) rels.push_back(path);
    }
    try {
      auto a = Algebra::bound_quiver(k, q, rels);
      if (a->dim() > max_dim || a->dim() == n) continue;
      a->set_name("random/" + std::to_string(seed));
      return a;
    } catch (const InfiniteDimensional&) {
    }
  }
  throw InternalInconsistency("random algebra generator failed for seed " + std::to_string(seed));
}

}  // namespace reflexa

namespace reflexa {

std::vector<AlgebraPtr> standard_corpus(Field k, std::size_t random_count) {
  std::vector<AlgebraPtr> c{linear_a(k, 2),
                            linear_a(k, 3),
                            truncated_polynomial(k, 2),
                            truncated_polynomial(k, 3),
                            square_zero_two_loops(k),
                            auslander_algebra(k, 2),
                            auslander_algebra(k, 3),
                            square_with_zero_relation(k)};
  for (std::uint64_t s = 1; s <= random_count; ++s) c.push_back(random_monomial(k, s, 8));
  return c;
}

}  // namespace reflexa
