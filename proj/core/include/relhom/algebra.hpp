#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "relhom/matrix.hpp"

namespace relhom {

enum class AlgebraAxiom { commutative, associative, unit, local };

std::string axiom_name(AlgebraAxiom a);

/// A structure-constant table fails one of the ring axioms. Carries the first
/// witness triple of basis indices found.
class AlgebraError : public std::runtime_error {
 public:
  AlgebraError(AlgebraAxiom axiom, std::array<std::size_t, 3> witness, const std::string& what)
      : std::runtime_error(what), axiom_(axiom), witness_(witness) {}
  AlgebraAxiom axiom() const { return axiom_; }
  const std::array<std::size_t, 3>& witness() const { return witness_; }

 private:
  AlgebraAxiom axiom_;
  std::array<std::size_t, 3> witness_;
};

/// A finite-dimensional commutative local k-algebra (R, m, k), presented by
/// structure constants on a k-basis. Construction validates every axiom:
/// commutativity, associativity, the distinguished unit, and locality with
/// residue field k. Immutable afterwards and freely shareable.
class FiniteLocalAlgebra {
 public:
  /// c[i][j] = coefficient vector of b_i * b_j in the basis.
  using MultTable = std::vector<std::vector<std::vector<Scalar>>>;

  static std::shared_ptr<const FiniteLocalAlgebra> from_structure_constants(
      const Field& f, std::size_t dim, const MultTable& mult, std::size_t unit_index,
      std::vector<std::string> basis_names = {});

  /// Integer-literal convenience for presets and tests.
  static std::shared_ptr<const FiniteLocalAlgebra> from_int_table(
      const Field& f, std::size_t dim, const std::vector<std::vector<std::vector<long>>>& mult,
      std::size_t unit_index, std::vector<std::string> basis_names = {});

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t unit_index() const { return unit_index_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }

  /// Matrix of multiplication by basis element b_i.
  const Matrix& left_mult(std::size_t i) const { return left_mult_[i]; }

  /// Matrix of multiplication by an arbitrary element (dim x 1 coefficients).
  Matrix multiplication_matrix(const Matrix& element) const;

  /// b_i * b_j as a coefficient vector (dim x 1).
  Matrix basis_product(std::size_t i, std::size_t j) const;

  /// Columns spanning the maximal ideal; codimension exactly 1.
  const Matrix& maximal_ideal_basis() const { return m_basis_; }

  /// The residue map R -> R/m = k as a 1 x dim row; unit maps to 1.
  const Matrix& residue_row() const { return residue_row_; }
  Scalar residue_of(const Matrix& element) const;

  std::size_t radical_nilpotency_index() const { return nilpotency_index_; }

 private:
  FiniteLocalAlgebra(const Field& f, std::size_t dim, std::vector<Matrix> left_mult,
                     std::size_t unit_index, std::vector<std::string> names);
  void validate();
  void compute_locality();

  Field field_;
  std::size_t dim_;
  std::size_t unit_index_;
  std::vector<Matrix> left_mult_;
  std::vector<std::string> basis_names_;
  Matrix m_basis_;
  Matrix residue_row_;
  std::size_t nilpotency_index_ = 0;  // least e with m^e = 0
};

using AlgebraPtr = std::shared_ptr<const FiniteLocalAlgebra>;

/// Structural ring equality: same field, dimension, unit, and structure
/// constants. Pointer identity is only a fast path, so modules parsed from
/// files interoperate with preset-built ones.
bool same_ring(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace relhom
