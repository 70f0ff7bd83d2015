#include "doctest.h"
#include "support.hpp"

using namespace reflexa;
using namespace testsupport;

namespace {

MultTable dual_numbers_table(Field k) {
  Scalar z(k, 0), o(k, 1);
  return {{{o, z}, {z, o}}, {{z, o}, {z, z}}};
}

}  // namespace

TEST_CASE("table algebras") {
  Field k = Field::prime(3);
  Scalar z(k, 0), o(k, 1);

  SUBCASE("the field itself") {
    auto a = Algebra::from_table(k, {"1"}, {{{o}}}, {o}, {{o}});
    CHECK(a->dim() == 1);
    CHECK(a->is_basic());
    CHECK(regular_module(a, Side::left).total_dim() == 1);
  }
  SUBCASE("dual numbers") {
    auto a = Algebra::from_table(k, {"1", "x"}, dual_numbers_table(k), {o, z}, {{o, z}});
    CHECK(a->dim() == 2);
    CHECK(a->vertex_count() == 1);
    CHECK(a->is_basic());
    CHECK(a->generators().size() == 1);
    auto m = regular_module(a, Side::left);
    CHECK(m.total_dim() == 2);
    CHECK(!m.gen(0).is_zero());
    CHECK((m.gen(0) * m.gen(0)).is_zero());
    CHECK(a->opposite()->table() == a->table());
  }
  SUBCASE("x*x = 1 with x claimed idempotent") {
    MultTable t{{{o, z}, {z, o}}, {{z, o}, {o, z}}};
    CHECK_THROWS_AS(Algebra::from_table(k, {"1", "x"}, t, {o, z}, {{z, o}}), BadIdempotents);
  }
  SUBCASE("non-associative table") {
    // b*b = c, b*c = 0, c*b = b breaks (b*b)*b = b*(b*b)
    MultTable t{{{o, z, z}, {z, o, z}, {z, z, o}},
                {{z, o, z}, {z, z, o}, {z, z, z}},
                {{z, z, o}, {z, o, z}, {z, z, z}}};
    CHECK_THROWS_AS(Algebra::from_table(k, {"1", "b", "c"}, t, {o, z, z}, {{o, z, z}}), NonAssociative);
  }
  SUBCASE("bad unit") {
    auto t = dual_numbers_table(k);
    CHECK_THROWS_AS(Algebra::from_table(k, {"1", "x"}, t, {z, o}, {{z, o}}), BadUnit);
  }
  SUBCASE("matrix algebra is not basic") {
    // M_2(k) with matrix units e11, e12, e21, e22
    std::vector<std::string> labels{"e11", "e12", "e21", "e22"};
    MultTable t(4, std::vector<std::vector<Scalar>>(4, std::vector<Scalar>(4, z)));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) t[2 * i + j][2 * j + l][2 * i + l] = o;
    auto a = Algebra::from_table(k, labels, t, {o, z, z, o}, {{o, z, z, z}, {z, z, z, o}});
    CHECK(!a->is_basic());
    CHECK_THROWS_AS(simple_module(a, 0), NotBasic);
    auto m = regular_module(a, Side::left);
    CHECK(action_is_multiplicative(m));
    CHECK(hom_dim(m, m) == 4);
  }
}

TEST_CASE("bound quiver algebras") {
  Field k = F2();
  SUBCASE("A2") {
    auto a = linear_a(k, 2);
    CHECK(a->labels() == std::vector<std::string>{"e1", "e2", "a1"});
    CHECK(a->dim() == 3);
  }
  SUBCASE("loop with x.x = 0") {
    auto a = truncated_polynomial(k, 2);
    CHECK(a->labels() == std::vector<std::string>{"e1", "x"});
  }
  SUBCASE("free loop") {
    Quiver q{1, {{"x", 0, 0}}};
    CHECK_THROWS_AS(Algebra::bound_quiver(k, q, {}), InfiniteDimensional);
  }
  SUBCASE("oriented cycle without relations") {
    Quiver q{2, {{"a", 0, 1}, {"b", 1, 0}}};
    CHECK_THROWS_AS(Algebra::bound_quiver(k, q, {{"a", "a"}}), InvalidPresentation);
    CHECK_THROWS_AS(Algebra::bound_quiver(k, q, {}), InfiniteDimensional);
    auto c = Algebra::bound_quiver(k, q, {{"a", "b", "a"}});
    CHECK(c->dim() == 2 + 2 + 2 + 1);
  }
  SUBCASE("short relation") {
    Quiver q{1, {{"x", 0, 0}}};
    CHECK_THROWS_AS(Algebra::bound_quiver(k, q, {{"x"}}), InvalidPresentation);
  }
  SUBCASE("opposite of A2 reverses the arrow") {
    auto a = linear_a(k, 2);
    auto op = a->opposite();
    REQUIRE(op->presentation());
    const auto& arr = op->presentation()->quiver.arrows.at(0);
    CHECK(arr.src == 1);
    CHECK(arr.dst == 0);
    CHECK(op->opposite() == a);
  }
}

TEST_CASE("properties: path counts, opposite involution, left regular decomposition") {
  std::vector<Field> fields{Field::prime(2), Field::prime(5), Field::rational()};
  for (const auto& k : fields) {
    for (const auto& a : small_corpus(k)) {
      CAPTURE(a->name());
      if (a->presentation()) {
        const auto& pres = *a->presentation();
        std::size_t total = 0;
        for (std::size_t i = 0; i < a->vertex_count(); ++i)
          for (std::size_t j = 0; j < a->vertex_count(); ++j) {
            std::size_t c = count_paths(pres.quiver, pres.relations, i, j, 12);
            CHECK(a->words_between(i, j).size() == c);
            total += c;
          }
        CHECK(total == a->dim());
      }

      // opposite twice, after the original cache is dropped too
      auto op = a->opposite();
      CHECK(op->opposite()->fingerprint() == a->fingerprint());
      for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t j = 0; j < a->dim(); ++j) CHECK(op->table()[i][j] == a->table()[j][i]);

      // the same algebra fed through the table front end
      auto t = Algebra::from_table(k, a->labels(), a->table(), a->unit(), a->idempotents());
      CHECK(t->is_basic());
      CHECK(t->dim() == a->dim());
      for (std::size_t i = 0; i < a->vertex_count(); ++i)
        for (std::size_t j = 0; j < a->vertex_count(); ++j)
          CHECK(t->words_between(i, j).size() == a->words_between(i, j).size());

      auto reg = regular_module(a, Side::left);
      CHECK(action_is_multiplicative(reg));
      CHECK(action_is_multiplicative(regular_module(t, Side::right)));
      std::vector<Module> ps;
      for (std::size_t i = 0; i < a->vertex_count(); ++i) ps.push_back(projective_module(a, i));
      auto sum = direct_sum(ps, a, Side::left);
      CHECK(is_isomorphic(sum.sum, reg).has_value());
    }
  }
}

TEST_CASE("opposite rebuild is bit-exact after the original is gone") {
  std::string fp;
  AlgebraPtr op;
  {
    auto a = random_monomial(F2(), 3, 8);
    fp = a->fingerprint();
    op = a->opposite();
  }
  CHECK(op->opposite()->fingerprint() == fp);
}
