#include <random>

#include "doctest.h"
#include "reflexa/matrix.hpp"

using namespace reflexa;

namespace {

Matrix random_matrix(std::mt19937& rng, Field k, std::size_t r, std::size_t c) {
  Matrix m(k, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      long v = static_cast<long>(rng() % 7) - 3;
      if (k.is_rational() && rng() % 3 == 0)
        m.set(i, j, Scalar(k, mpq_class(v, 1 + rng() % 4)));
      else
        m.set(i, j, Scalar(k, v));
    }
  return m;
}

// Independent rank oracle: fraction-free elimination over mpq, no pivot
// normalisation, different control flow from the library.
std::size_t oracle_rank(const Matrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  bool prime = m.field().is_prime();
  long p = m.field().characteristic();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      a[i][j] = prime ? mpq_class(m.at(i, j).residue()) : m.at(i, j).rational();
  auto reduce = [&](mpq_class& x) {
    if (!prime) return;
    mpz_class n = x.get_num() % p;
    if (n < 0) n += p;
    x = n;
  };
  auto inv = [&](const mpq_class& x) {
    if (!prime) return mpq_class(1 / x);
    mpz_class r;
    mpz_class base = x.get_num();
    mpz_class mod = p;
    mpz_invert(r.get_mpz_t(), base.get_mpz_t(), mod.get_mpz_t());
    return mpq_class(r);
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      mpq_class f = a[i][c] * inv(a[rank][c]);
      reduce(f);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        a[i][j] -= f * a[rank][j];
        reduce(a[i][j]);
      }
    }
    ++rank;
  }
  return rank;
}

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F7 = Field::prime(7);
const Field QQ = Field::rational();

}  // namespace

TEST_CASE("field parsing and scalars") {
  CHECK(Field::parse("F2") == F2);
  CHECK(Field::parse("GF(7)") == F7);
  CHECK(Field::parse("F_3") == F3);
  CHECK(Field::parse("Q") == QQ);
  CHECK_THROWS_AS(Field::parse("F4"), ParseError);
  CHECK_THROWS_AS(Field::parse("R"), ParseError);
  CHECK(Scalar::parse(F7, "3/2").residue() == 5);
  CHECK(Scalar::parse(QQ, "4/6").to_string() == "2/3");
  CHECK(Scalar::parse(F7, "-1").residue() == 6);
  CHECK_THROWS_AS(Scalar::parse(F7, "1/7"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(QQ, "1/0"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(QQ, "x"), ParseError);
  CHECK((Scalar(F7, 3) * Scalar(F7, 3).inverse()).is_one());
}

TEST_CASE("rref examples") {
  auto id = rref(Matrix::identity(F2, 2));
  CHECK(id.reduced == Matrix::identity(F2, 2));
  CHECK(id.rank == 2);
  CHECK(id.pivot_cols == std::vector<std::size_t>{0, 1});

  auto ones = rref(Matrix::from_ints(F2, {{1, 1}, {1, 1}}));
  CHECK(ones.reduced == Matrix::from_ints(F2, {{1, 1}, {0, 0}}));
  CHECK(ones.rank == 1);
  CHECK(ones.pivot_cols == std::vector<std::size_t>{0});

  auto q = rref(Matrix::from_ints(QQ, {{2, 4}, {1, 3}}));
  CHECK(q.reduced == Matrix::identity(QQ, 2));
  CHECK(q.rank == 2);
}

TEST_CASE("kernel examples") {
  auto k0 = kernel_basis(Matrix(F3, 2, 3));
  CHECK(k0 == Matrix::identity(F3, 3));
  CHECK(kernel_basis(Matrix::from_ints(QQ, {{1, 2}, {3, 4}})).rows() == 0);
  CHECK(kernel_basis(Matrix::from_ints(F2, {{1, 1}})) == Matrix::from_ints(F2, {{1, 1}}));
}

TEST_CASE("solve examples") {
  auto b = Matrix::from_ints(F7, {{1, 2}, {3, 4}, {5, 6}});
  CHECK(*solve(Matrix::identity(F7, 3), b) == b);
  CHECK_FALSE(solve(Matrix::from_ints(QQ, {{1}, {0}}), Matrix::from_ints(QQ, {{0}, {1}})));
  auto x = solve(Matrix::from_ints(F2, {{1, 1}, {0, 1}}), Matrix::from_ints(F2, {{0}, {1}}));
  REQUIRE(x);
  CHECK(*x == Matrix::from_ints(F2, {{1}, {1}}));
  CHECK_THROWS_AS(solve(Matrix(F2, 2, 2), Matrix(F2, 3, 1)), DimensionMismatch);
}

TEST_CASE("linear algebra properties over random matrices") {
  std::mt19937 rng(20240611);
  for (Field k : {F2, F3, F7, QQ}) {
    for (int trial = 0; trial < 150; ++trial) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix m = random_matrix(rng, k, r, c);
      auto rr = rref(m);
      CHECK(rr.rank == oracle_rank(m));
      CHECK(m.rank() == m.transpose().rank());
      CHECK(rref(rr.reduced).reduced == rr.reduced);

      Matrix kb = kernel_basis(m);
      CHECK(kb.rows() + rr.rank == c);
      CHECK((kb * m.transpose()).is_zero());
      CHECK(kb.rank() == kb.rows());

      Matrix lk = left_kernel(m);
      CHECK((lk * m).is_zero());
      CHECK(lk.rows() + rr.rank == r);

      Matrix cs = column_space(m);
      CHECK(cs.cols() == rr.rank);
      CHECK(hstack(m, cs).rank() == rr.rank);

      // Consistent right-hand side: b = m * y for random y.
      Matrix y = random_matrix(rng, k, c, 2);
      Matrix b = m * y;
      auto x = solve(m, b);
      REQUIRE(x);
      CHECK(m * *x == b);

      if (k.is_rational())
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j) {
            mpq_class e = rr.reduced.at(i, j).rational();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
            CHECK((g == 1 || e == 0));
            CHECK(e.get_den() > 0);
          }

      if (r == c) {
        auto inv = inverse(m);
        CHECK(inv.has_value() == (rr.rank == r));
        if (inv) CHECK(m * *inv == Matrix::identity(k, r));
      }
    }
  }
}

TEST_CASE("rref is deterministic and key separates matrices") {
  std::mt19937 rng(7);
  Matrix a = random_matrix(rng, QQ, 4, 5);
  CHECK(rref(a).reduced.key() == rref(a).reduced.key());
  Matrix b = a;
  b.set(0, 0, a.at(0, 0) + Scalar(QQ, 1));
  CHECK(a.key() != b.key());
}
