#include "doctest.h"
#include "support.hpp"

using namespace reflexa;
using namespace testsupport;

TEST_CASE("kA2 hand values") {
  auto a = linear_a(F2(), 2);
  auto s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  auto p1 = projective_module(a, 0), p2 = projective_module(a, 1);
  auto i1 = injective_module(a, 0), i2 = injective_module(a, 1);

  CHECK(p1.dims() == std::vector<std::size_t>{1, 1});
  CHECK(p2.dims() == std::vector<std::size_t>{0, 1});
  CHECK(i1.dims() == std::vector<std::size_t>{1, 0});
  CHECK(i2.dims() == std::vector<std::size_t>{1, 1});
  CHECK(hom_space(s1, p1).empty());
  auto ends = hom_space(s1, s1);
  REQUIRE(ends.size() == 1);
  CHECK(ends[0].full().is_identity());

  SUBCASE("cokernel of the socle inclusion") {
    auto h = hom_space(p2, p1);
    REQUIRE(h.size() == 1);
    CHECK(h[0].is_injective());
    auto c = cokernel(h[0]);
    CHECK(c.module.dims() == std::vector<std::size_t>{1, 0});
    CHECK(is_isomorphic(c.module, s1).has_value());
    CHECK((c.map * h[0]).is_zero());
  }
  SUBCASE("radical layers") {
    CHECK(is_isomorphic(top(p1).module, s1).has_value());
    CHECK(radical(s1).module.is_zero());
    CHECK(composition_factors(p1) == std::vector<std::size_t>{0, 1});
    CHECK(composition_factors(Module::zero(a, Side::left)).empty());
  }
  SUBCASE("covers and envelopes") {
    auto c = projective_cover(s1);
    CHECK(c.source().dims() == p1.dims());
    CHECK(is_isomorphic(kernel(c).module, p2).has_value());
    auto e = injective_envelope(s2);
    CHECK(e.target().dims() == std::vector<std::size_t>{1, 1});
    CHECK(is_isomorphic(e.target(), i2).has_value());
    CHECK(e.is_injective());
    auto pc = projective_cover(p1);
    CHECK(pc.is_isomorphism());
  }
  SUBCASE("isomorphisms") {
    CHECK(is_isomorphic(p1, p1).has_value());
    CHECK(!is_isomorphic(s1, s2).has_value());
    auto f = is_isomorphic(p1, i2);
    REQUIRE(f.has_value());
    CHECK(f->is_isomorphism());
    ModuleMap check(f->source(), f->target(), f->blocks());
    CHECK(check.rank() == 2);
  }
  SUBCASE("duality") {
    auto dp1 = d_dual(p1);
    CHECK(dp1.side() == Side::right);
    CHECK(dp1.dims() == std::vector<std::size_t>{1, 1});
    CHECK(d_dual(dp1).key() == p1.key());
    CHECK(is_isomorphic(d_dual(s1), simple_module(a, 0, Side::right)).has_value());
  }
  SUBCASE("side mismatch") {
    CHECK_THROWS_AS(hom_space(s1, simple_module(a, 0, Side::right)), SideMismatch);
  }
  SUBCASE("invalid module") {
    auto a3 = truncated_polynomial(F2(), 2);
    CHECK_THROWS_AS(Module::from_generators(a3, Side::left, {1}, {Matrix::identity(F2(), 1)}),
                    InvalidModule);
  }
}

TEST_CASE("dual numbers") {
  auto a = truncated_polynomial(F2(), 2);
  auto reg = regular_module(a, Side::left);
  CHECK(is_isomorphic(projective_module(a, 0), reg).has_value());
  CHECK(is_isomorphic(injective_module(a, 0), reg).has_value());
  CHECK(socle(reg).module.total_dim() == 1);
  CHECK(enumerate_submodules(reg).size() == 3);
  auto s = simple_module(a, 0);
  CHECK(enumerate_submodules(s).size() == 2);
  auto ss = direct_sum({s, s}, a, Side::left).sum;
  CHECK(enumerate_submodules(ss).size() == 5);
  CHECK(!is_indecomposable(ss));
  CHECK(is_indecomposable(reg));
}

TEST_CASE("enumeration budget") {
  auto a = truncated_polynomial(F2(), 3);
  auto reg = regular_module(a, Side::left);
  Budget b;
  b.enumeration = 4;
  CHECK_THROWS_AS(enumerate_submodules(reg, b), BudgetExceeded);
}

TEST_CASE("properties over random modules") {
  std::mt19937 rng(20240611);
  std::size_t checked = 0;
  for (const auto& a : small_corpus(F2())) {
    CAPTURE(a->name());
    for (Side side : {Side::left, Side::right}) {
      for (int trial = 0; trial < 6; ++trial) {
        auto m = random_module(rng, a, side, 4);
        auto n = random_module(rng, a, side, 4);
        if (!m || !n) continue;
        ++checked;
        CHECK(action_is_multiplicative(*m));
        std::size_t h = hom_dim(*m, *n);
        CHECK(h == brute_hom_dim(*m, *n));
        CHECK(h == hom_dim(d_dual(*n), d_dual(*m)));
        for (std::size_t v = 0; v < a->vertex_count(); ++v)
          CHECK(hom_dim(projective_module(a, v, side), *m) == m->dim(v));

        auto subs = enumerate_submodules(*m);
        CHECK(subs.size() == brute_submodule_count(*m));

        for (const auto& f : hom_space(*m, *n)) {
          auto k = kernel(f), c = cokernel(f), im = image(f);
          CHECK(k.map.is_injective());
          CHECK((f * k.map).is_zero());
          CHECK((c.map * f).is_zero());
          CHECK(c.map.is_surjective());
          CHECK(m->total_dim() == k.module.total_dim() + im.module.total_dim());
          CHECK(n->total_dim() == im.module.total_dim() + c.module.total_dim());
          auto q = coimage_map(f, im);
          CHECK((im.map * q).as_row() == f.as_row());
          ModuleMap(f.source(), f.target(), f.blocks());
          ModuleMap(k.module, m.value(), k.map.blocks());
          ModuleMap(n.value(), c.module, c.map.blocks());
        }

        auto cover = projective_cover(*m);
        CHECK(cover.is_surjective());
        CHECK(top(cover.source()).module.dims() == top(*m).module.dims());
        auto env = injective_envelope(*m);
        CHECK(env.is_injective());
        CHECK(socle(env.target()).module.dims() == socle(*m).module.dims());
        ModuleMap(env.source(), env.target(), env.blocks());

        std::size_t cf = composition_factors(*m).size();
        CHECK(cf == m->total_dim());
      }
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("isomorphism after random base change") {
  std::mt19937 rng(7);
  for (const auto& k : {Field::prime(3), Field::rational()}) {
    for (const auto& a : small_corpus(k)) {
      auto m = random_module(rng, a, Side::left, 4);
      if (!m) continue;
      // conjugate each vertex space by a random invertible matrix
      std::vector<Matrix> g;
      for (std::size_t v = 0; v < a->vertex_count(); ++v) {
        Matrix x(k, m->dim(v), m->dim(v));
        do {
          for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) x.set(i, j, Scalar(k, long(rng() % 5) - 2));
        } while (x.rank() != x.rows());
        g.push_back(x);
      }
      std::vector<Matrix> gens;
      for (std::size_t i = 0; i < a->generators().size(); ++i) {
        const auto& gen = a->generators()[i];
        gens.push_back(g[gen.dst] * m->gen(i) * *inverse(g[gen.src]));
      }
      auto n = Module::from_generators(a, Side::left, m->dims(), gens);
      auto f = is_isomorphic(*m, n);
      REQUIRE(f.has_value());
      CHECK(f->is_isomorphism());
      ModuleMap(f->source(), f->target(), f->blocks());
    }
  }
}
