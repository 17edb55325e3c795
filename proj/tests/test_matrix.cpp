#include <doctest.h>

#include <random>

#include "relhom/matrix.hpp"

using namespace relhom;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  std::uniform_int_distribution<long> dist(-6, 6);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set_int(i, j, dist(rng));
  return m;
}

}  // namespace

TEST_CASE("field construction rejects composite characteristic") {
  CHECK_THROWS_AS(Field::prime(6), std::invalid_argument);
  CHECK_THROWS_AS(Field::prime(1), std::invalid_argument);
  CHECK(Field::prime(2).is_prime_field());
  CHECK(Field::rationals().name() == "Q");
}

TEST_CASE("scalar arithmetic is exact") {
  Field f5 = Field::prime(5);
  Scalar a(f5, 3), b(f5, 4);
  CHECK((a * b).residue() == 2);
  CHECK((a + b).residue() == 2);
  CHECK(a.inverse().residue() == 2);  // 3 * 2 = 6 = 1 mod 5

  Field q = Field::rationals();
  Scalar x(q, 2), y(q, 3);
  CHECK((x * y.inverse()).rational() == mpq_class(2, 3));
}

TEST_CASE("rref identity and zero cases") {
  Field q = Field::rationals();
  auto id = Matrix::identity(q, 3);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});

  Matrix z(q, 2, 5);
  auto rz = rref(z);
  CHECK(rz.reduced.is_zero());
  CHECK(rz.pivots.empty());
}

TEST_CASE("rref over F_5 from hand elimination") {
  // [[2,4],[1,2]] row-reduces to [[1,2],[0,0]]: scale row 0 by 3 = 2^{-1}
  Field f5 = Field::prime(5);
  Matrix m = Matrix::from_int_rows(f5, {{2, 4}, {1, 2}});
  auto r = rref(m);
  CHECK(r.reduced == Matrix::from_int_rows(f5, {{1, 2}, {0, 0}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel basis shapes and membership") {
  Field q = Field::rationals();
  CHECK(kernel_basis(Matrix::identity(q, 4)).cols() == 0);
  Matrix z(q, 3, 4);
  CHECK(kernel_basis(z).cols() == 4);

  // single equation x + y = 0 has kernel spanned by (1, -1) up to scale
  Matrix m = Matrix::from_int_rows(q, {{1, 1}});
  Matrix k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero());
  CHECK(k.at(0, 0) == -k.at(1, 0));
}

TEST_CASE("solve returns exact solutions or reports inconsistency") {
  Field q = Field::rationals();
  Matrix id = Matrix::identity(q, 3);
  Matrix b = Matrix::column(q, {7, -2, 9});
  auto x = solve(id, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  Matrix z(q, 2, 2);
  CHECK_FALSE(solve(z, Matrix::column(q, {1, 0})).has_value());

  // rank-1 consistent system
  Matrix m = Matrix::from_int_rows(q, {{1, 2}, {2, 4}});
  auto s = solve(m, Matrix::column(q, {1, 2}));
  REQUIRE(s.has_value());
  CHECK(m * *s == Matrix::column(q, {1, 2}));
}

TEST_CASE("rank, image, intersection, quotient") {
  Field q = Field::rationals();
  CHECK(rank(Matrix::identity(q, 5)) == 5);

  // span{e1,e2} meet span{e2,e3} = span{e2} in k^3
  Matrix a = Matrix::from_int_rows(q, {{1, 0}, {0, 1}, {0, 0}});
  Matrix b = Matrix::from_int_rows(q, {{0, 0}, {1, 0}, {0, 1}});
  Matrix meet = intersect_columns(a, b);
  REQUIRE(meet.cols() == 1);
  CHECK(meet.at(0, 0).is_zero());
  CHECK_FALSE(meet.at(1, 0).is_zero());
  CHECK(meet.at(2, 0).is_zero());

  // quotient of k^3 by span{e1}
  Matrix e1(q, 3, 1);
  e1.set_int(0, 0, 1);
  QuotientBasis qb = quotient_basis(3, e1);
  CHECK(qb.projection.rows() == 2);
  CHECK((qb.projection * e1).is_zero());
  CHECK(qb.projection * qb.representatives == Matrix::identity(q, 2));
}

TEST_CASE("rank-nullity and rref idempotence on random matrices") {
  std::mt19937_64 rng(20240817);
  for (const Field& f : {Field::prime(5), Field::prime(2), Field::rationals()}) {
    for (int trial = 0; trial < 12; ++trial) {
      std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 6;
      Matrix m = random_matrix(f, r, c, rng);
      CHECK(rank(m) + kernel_basis(m).cols() == m.cols());
      auto r1 = rref(m);
      auto r2 = rref(r1.reduced);
      CHECK(r1.reduced == r2.reduced);
      CHECK(r1.pivots == r2.pivots);
      CHECK((m * kernel_basis(m)).is_zero());
      Matrix b = random_matrix(f, r, 1, rng);
      if (auto x = solve(m, b)) CHECK((m * *x - b).is_zero());
    }
  }
}

TEST_CASE("Fermat check on random F_p samples") {
  for (std::uint32_t p : {2u, 5u, 97u}) {
    Field f = Field::prime(p);
    std::mt19937_64 rng(7 + p);
    std::uniform_int_distribution<long> dist(1, p - 1);
    for (int t = 0; t < 32; ++t) {
      Scalar a(f, dist(rng));
      Scalar pow(f, 1);
      for (std::uint32_t e = 0; e + 1 < p; ++e) pow = pow * a;
      CHECK((a * pow).residue() == a.residue());
    }
  }
}

TEST_CASE("shape mismatches are rejected") {
  Field q = Field::rationals();
  Matrix a(q, 2, 3), b(q, 3, 3);
  CHECK_THROWS_AS(a + b, ShapeError);
  CHECK_THROWS_AS(b * a, ShapeError);
  CHECK_THROWS_AS(intersect_columns(a, b), ShapeError);
  CHECK_THROWS_AS(solve(a, Matrix(q, 3, 1)), ShapeError);
  CHECK_THROWS_AS(quotient_basis(5, a), ShapeError);
  CHECK_THROWS_AS(Matrix::hstack(a, b), ShapeError);
  Matrix fp(Field::prime(5), 2, 3);
  CHECK_THROWS_AS(a + fp, ShapeError);
}

TEST_CASE("rref over F_2 behaves") {
  Field f2 = Field::prime(2);
  Matrix m = Matrix::from_int_rows(f2, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  CHECK(rank(m) == 2);
  Matrix k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero());
}
