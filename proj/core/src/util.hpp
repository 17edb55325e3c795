#pragma once

// Small shared helpers for the module/homology translation units.

#include <optional>

#include "relhom/module.hpp"

namespace relhom::detail {

Matrix flatten_row_major(const Matrix& m);
Matrix unflatten_row_major(const Matrix& v, std::size_t rows, std::size_t cols);
Matrix kron(const Matrix& a, const Matrix& b);

/// Coordinates of the columns of W in the basis B (columns); throws
/// ModuleInvariantError when W is not inside the span. Fast path for
/// kernel-shaped bases that contain a unit row per column; `verify` controls
/// the consistency re-multiplication on that path (skip it only when the
/// containment is structurally guaranteed).
Matrix express_in_basis(const Matrix& B, const Matrix& W, bool verify = true);

/// Action matrices induced on an action-stable subspace with basis columns B.
std::vector<Matrix> induced_subspace_actions(const FDModule& M, const Matrix& B);

/// N^b with block-diagonal actions, without the quadratic direct_sum chain.
ModulePtr power_module(const ModulePtr& N, std::size_t b);

/// blockdiag(mult-by-element) applied to columns of V inside R^gens.
Matrix free_action_apply(const AlgebraPtr& R, const Matrix& element, const Matrix& V,
                         std::size_t gens);

/// For a matrix whose columns are unit vectors (coset representatives from
/// quotient_basis), the row index carrying the 1 per column; nullopt when a
/// column is not a unit vector.
std::optional<std::vector<std::size_t>> unit_column_indices(const Matrix& reps);

/// B * reps computed as a column selection when reps has unit columns.
Matrix apply_representatives(const Matrix& B, const Matrix& reps);

/// Homology subquotient ker(d_out)/im(d_in) of an ambient FDModule, carrying
/// enough data to express ambient cycles in homology coordinates.
struct Subquotient {
  ModulePtr module;
  Matrix cycles;     // ambient_dim x z
  QuotientBasis qb;  // quotient of k^z by boundary coordinates
  ModulePtr ambient;

  Matrix class_of(const Matrix& ambient_cols) const;
  Matrix representatives() const { return apply_representatives(cycles, qb.representatives); }
};

/// d_out leaves the ambient module, d_in enters it; nullptr means zero map.
Subquotient homology_subquotient(const ModulePtr& ambient, const Matrix* d_out,
                                 const Matrix* d_in);

}  // namespace relhom::detail
