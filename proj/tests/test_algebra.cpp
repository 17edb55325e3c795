#include <doctest.h>

#include "relhom/corpus.hpp"

using namespace relhom;

TEST_CASE("the one-dimensional algebra is the field itself") {
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    AlgebraPtr k = preset_ring("field", f);
    CHECK(k->dim() == 1);
    CHECK(k->maximal_ideal_basis().cols() == 0);
    CHECK(k->residue_row().at(0, 0).is_one());
  }
}

TEST_CASE("square_zero_2vars validates with the expected maximal ideal") {
  AlgebraPtr R = preset_ring("square_zero_2vars", Field::prime(5));
  CHECK(R->dim() == 3);
  CHECK(R->maximal_ideal_basis().cols() == 2);
  CHECK(R->radical_nilpotency_index() == 2);  // m^2 = 0

  // multiplication by x has rank 1 (x*1 = x, x*x = 0, x*y = 0)
  Matrix x(R->field(), 3, 1);
  x.set_int(1, 0, 1);
  CHECK(rank(R->multiplication_matrix(x)) == 1);

  Matrix one(R->field(), 3, 1);
  one.set_int(0, 0, 1);
  CHECK(R->multiplication_matrix(one).is_identity());
}

TEST_CASE("truncated polynomial rings are local with nilpotent shift") {
  AlgebraPtr R = preset_ring("truncated_poly_3", Field::prime(5));
  CHECK(R->dim() == 3);
  CHECK(R->maximal_ideal_basis().cols() == 2);
  CHECK(R->radical_nilpotency_index() == 3);

  // mult-by-x is the nilpotent shift of rank 2
  Matrix x(R->field(), 3, 1);
  x.set_int(1, 0, 1);
  Matrix L = R->multiplication_matrix(x);
  CHECK(rank(L) == 2);
  CHECK((L * L * L).is_zero());
}

TEST_CASE("residue map kills exactly the maximal ideal") {
  for (const char* name : {"square_zero_2vars", "truncated_poly_4"}) {
    AlgebraPtr R = preset_ring(name, Field::prime(2));
    const Matrix& mb = R->maximal_ideal_basis();
    CHECK((R->residue_row() * mb).is_zero());
    CHECK(mb.cols() + 1 == R->dim());
  }
}

TEST_CASE("m^dim vanishes for every preset") {
  for (const auto& name : preset_names()) {
    AlgebraPtr R = preset_ring(name, Field::prime(5));
    Matrix power = R->maximal_ideal_basis();
    for (std::size_t step = 1; step < R->dim() && power.cols() > 0; ++step) {
      Matrix next(R->field(), R->dim(), 0);
      for (std::size_t i = 0; i < R->maximal_ideal_basis().cols(); ++i)
        next = Matrix::hstack(
            next, R->multiplication_matrix(R->maximal_ideal_basis().column_at(i)) * power);
      power = image_basis(next);
    }
    CHECK(power.cols() == 0);
  }
}

namespace {

std::vector<std::vector<std::vector<long>>> unital_table(std::size_t d) {
  std::vector<std::vector<std::vector<long>>> mult(
      d, std::vector<std::vector<long>>(d, std::vector<long>(d, 0)));
  for (std::size_t j = 0; j < d; ++j) {
    mult[0][j][j] = 1;
    mult[j][0][j] = 1;
  }
  return mult;
}

}  // namespace

TEST_CASE("non-commutative table is rejected with a witness") {
  auto mult = unital_table(3);
  mult[1][2][1] = 1;  // x*y = x but y*x = 0
  try {
    FiniteLocalAlgebra::from_int_table(Field::prime(5), 3, mult, 0);
    FAIL("expected AlgebraError");
  } catch (const AlgebraError& e) {
    CHECK(e.axiom() == AlgebraAxiom::commutative);
    CHECK(std::string(e.what()).find("NotCommutative") != std::string::npos);
  }
}

TEST_CASE("non-associative table is rejected") {
  auto mult = unital_table(3);
  mult[1][2][0] = 1;
  mult[2][1][0] = 1;  // x*y = y*x = 1 while x*x = y*y = 0: (x*x)*y = 0 != x = x*(x*y)
  try {
    FiniteLocalAlgebra::from_int_table(Field::prime(5), 3, mult, 0);
    FAIL("expected AlgebraError");
  } catch (const AlgebraError& e) {
    CHECK(e.axiom() == AlgebraAxiom::associative);
  }
}

TEST_CASE("a ring with a nontrivial idempotent is rejected as non-local") {
  auto mult = unital_table(2);
  mult[1][1][1] = 1;  // e^2 = e
  try {
    FiniteLocalAlgebra::from_int_table(Field::prime(5), 2, mult, 0);
    FAIL("expected AlgebraError");
  } catch (const AlgebraError& e) {
    CHECK(e.axiom() == AlgebraAxiom::local);
  }
}

TEST_CASE("an extension field is rejected: residue field must be k itself") {
  // F_4 over F_2: a^2 = a + 1
  auto mult = unital_table(2);
  mult[1][1][0] = 1;
  mult[1][1][1] = 1;
  try {
    FiniteLocalAlgebra::from_int_table(Field::prime(2), 2, mult, 0);
    FAIL("expected AlgebraError");
  } catch (const AlgebraError& e) {
    CHECK(e.axiom() == AlgebraAxiom::local);
  }
}

TEST_CASE("single structure-constant mutations validate or raise one named axiom error") {
  Field f = Field::prime(5);
  AlgebraPtr good = preset_ring("square_zero_2vars", f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t l = 0; l < 3; ++l) {
        std::vector<std::vector<std::vector<long>>> mult(
            3, std::vector<std::vector<long>>(3, std::vector<long>(3, 0)));
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 3; ++c)
              mult[a][b][c] = good->left_mult(a).at(c, b).is_zero() ? 0 : 1;
        mult[i][j][l] = (mult[i][j][l] + 1) % 5;
        try {
          auto R = FiniteLocalAlgebra::from_int_table(f, 3, mult, 0);
          CHECK(R->dim() == 3);
        } catch (const AlgebraError& e) {
          CHECK((e.axiom() == AlgebraAxiom::commutative ||
                 e.axiom() == AlgebraAxiom::associative || e.axiom() == AlgebraAxiom::unit ||
                 e.axiom() == AlgebraAxiom::local));
        }
      }
}

TEST_CASE("locality detection works over Q") {
  AlgebraPtr R = preset_ring("square_zero_2vars", Field::rationals());
  CHECK(R->maximal_ideal_basis().cols() == 2);
}
