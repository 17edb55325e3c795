#include "relhom/algebra.hpp"

#include <sstream>

namespace relhom {

namespace {

// Characteristic polynomial of a small square matrix, monic, coefficients
// c[0] + c[1] t + ... + c[n] t^n. Subset-DP expansion of det(tI - A); exact
// over any field and fine for the ring dimensions in play here.
std::vector<Scalar> char_poly(const Matrix& a) {
  const std::size_t n = a.rows();
  const Field& f = a.field();
  const Scalar zero(f, 0), one(f, 1);
  using Poly = std::vector<Scalar>;
  auto poly_zero = [&](std::size_t deg) { return Poly(deg + 1, zero); };

  std::vector<Poly> dp(std::size_t(1) << n, Poly{});
  dp[0] = Poly{one};
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    int r = __builtin_popcountll(mask) - 1;
    Poly acc = poly_zero(static_cast<std::size_t>(r) + 1);
    bool negate = (r % 2 == 1);  // cofactor expansion along row r
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t(1) << j))) continue;
      const Poly& sub = dp[mask ^ (std::size_t(1) << j)];
      // entry (tI - A)[r][j] = (j == r ? t : 0) - a[r][j]
      Scalar c0 = -a.at(static_cast<std::size_t>(r), j);
      for (std::size_t k = 0; k < sub.size(); ++k) {
        Scalar term = c0 * sub[k];
        acc[k] = negate ? acc[k] - term : acc[k] + term;
        if (static_cast<std::size_t>(r) == j) {
          Scalar tterm = sub[k];
          acc[k + 1] = negate ? acc[k + 1] - tterm : acc[k + 1] + tterm;
        }
      }
      negate = !negate;
    }
    dp[mask] = std::move(acc);
  }
  return dp[dp.size() - 1];
}

// If f(t) = (t - lambda)^n for some lambda in the field, return it.
// Works in any characteristic: write n = p^a * m with p !~ m; the coefficient
// of t^{p^a (m-1)} in (t^{p^a} - lambda^{p^a})^m is -m lambda^{p^a}, and over
// the prime field lambda^{p^a} = lambda.
std::optional<Scalar> single_eigenvalue(const std::vector<Scalar>& f, const Field& field) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return Scalar(field, 0);
  std::size_t pa = 1, m = n;
  if (field.is_prime_field()) {
    std::uint32_t p = field.characteristic();
    while (m % p == 0) {
      m /= p;
      pa *= p;
    }
  }
  Scalar coeff = f[pa * (m - 1)];
  Scalar lambda = -(coeff * Scalar(field, static_cast<long>(m)).inverse());
  // verify f == (t - lambda)^n by expanding
  std::vector<Scalar> pow{Scalar(field, 1)};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Scalar> next(pow.size() + 1, Scalar(field, 0));
    for (std::size_t i = 0; i < pow.size(); ++i) {
      next[i + 1] = next[i + 1] + pow[i];
      next[i] = next[i] - lambda * pow[i];
    }
    pow = std::move(next);
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (pow[i] != f[i]) return std::nullopt;
  }
  return lambda;
}

}  // namespace

std::string axiom_name(AlgebraAxiom a) {
  switch (a) {
    case AlgebraAxiom::commutative: return "NotCommutative";
    case AlgebraAxiom::associative: return "NotAssociative";
    case AlgebraAxiom::unit: return "NoUnit";
    case AlgebraAxiom::local: return "NotLocal";
  }
  return "?";
}

std::shared_ptr<const FiniteLocalAlgebra> FiniteLocalAlgebra::from_structure_constants(
    const Field& f, std::size_t dim, const MultTable& mult, std::size_t unit_index,
    std::vector<std::string> basis_names) {
  if (dim == 0) throw std::invalid_argument("algebra dimension must be positive");
  if (mult.size() != dim) throw std::invalid_argument("mult table has wrong size");
  if (unit_index >= dim) throw std::invalid_argument("unit index out of range");
  std::vector<Matrix> lm;
  lm.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (mult[i].size() != dim) throw std::invalid_argument("mult table has wrong size");
    Matrix L(f, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (mult[i][j].size() != dim) throw std::invalid_argument("mult table has wrong size");
      for (std::size_t l = 0; l < dim; ++l) L.set(l, j, mult[i][j][l]);
    }
    lm.push_back(std::move(L));
  }
  auto alg = std::shared_ptr<FiniteLocalAlgebra>(
      new FiniteLocalAlgebra(f, dim, std::move(lm), unit_index, std::move(basis_names)));
  alg->validate();
  return alg;
}

std::shared_ptr<const FiniteLocalAlgebra> FiniteLocalAlgebra::from_int_table(
    const Field& f, std::size_t dim, const std::vector<std::vector<std::vector<long>>>& mult,
    std::size_t unit_index, std::vector<std::string> basis_names) {
  MultTable table(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    table[i].resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t l = 0; l < dim; ++l) table[i][j].emplace_back(f, mult[i][j][l]);
    }
  }
  return from_structure_constants(f, dim, table, unit_index, std::move(basis_names));
}

FiniteLocalAlgebra::FiniteLocalAlgebra(const Field& f, std::size_t dim,
                                       std::vector<Matrix> left_mult, std::size_t unit_index,
                                       std::vector<std::string> names)
    : field_(f), dim_(dim), unit_index_(unit_index), left_mult_(std::move(left_mult)),
      basis_names_(std::move(names)) {
  if (basis_names_.empty()) {
    for (std::size_t i = 0; i < dim_; ++i) basis_names_.push_back("b" + std::to_string(i));
  }
}

void FiniteLocalAlgebra::validate() {
  // unit axiom
  if (!left_mult_[unit_index_].is_identity()) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t l = 0; l < dim_; ++l) {
        Scalar expect(field_, l == j ? 1 : 0);
        if (left_mult_[unit_index_].at(l, j) != expect) {
          throw AlgebraError(AlgebraAxiom::unit, {unit_index_, j, l},
                             "NoUnit: unit * " + basis_names_[j] + " != " + basis_names_[j]);
        }
      }
    }
  }
  // commutativity: c[i][j] = c[j][i]
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      for (std::size_t l = 0; l < dim_; ++l) {
        if (left_mult_[i].at(l, j) != left_mult_[j].at(l, i)) {
          throw AlgebraError(AlgebraAxiom::commutative, {i, j, l},
                             "NotCommutative: " + basis_names_[i] + "*" + basis_names_[j] +
                                 " != " + basis_names_[j] + "*" + basis_names_[i]);
        }
      }
    }
  }
  // associativity through the regular representation: L_i L_j = sum_l c[i][j][l] L_l
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      Matrix lhs = left_mult_[i] * left_mult_[j];
      Matrix rhs(field_, dim_, dim_);
      for (std::size_t l = 0; l < dim_; ++l) {
        Scalar c = left_mult_[i].at(l, j);
        if (c.is_zero()) continue;
        rhs = rhs + left_mult_[l].scaled(c);
      }
      if (lhs != rhs) {
        std::size_t wl = 0;
        for (std::size_t l = 0; l < dim_; ++l)
          for (std::size_t c = 0; c < dim_; ++c)
            if (lhs.at(l, c) != rhs.at(l, c)) wl = l;
        throw AlgebraError(AlgebraAxiom::associative, {i, j, wl},
                           "NotAssociative: (" + basis_names_[i] + "*" + basis_names_[j] +
                               ")*b != " + basis_names_[i] + "*(" + basis_names_[j] + "*b)");
      }
    }
  }
  compute_locality();
}

void FiniteLocalAlgebra::compute_locality() {
  // R is local with residue field k exactly when every multiplication matrix
  // has a single k-rational eigenvalue: then L_v - lambda(v) I is nilpotent
  // for every v (commuting nilpotents), lambda is the residue map, and
  // ker(lambda) is the maximal ideal.
  std::vector<Scalar> lambdas;
  for (std::size_t i = 0; i < dim_; ++i) {
    auto cp = char_poly(left_mult_[i]);
    auto lam = single_eigenvalue(cp, field_);
    if (!lam) {
      throw AlgebraError(AlgebraAxiom::local, {i, i, i},
                         "NotLocal: multiplication by " + basis_names_[i] +
                             " has more than one eigenvalue; non-units do not form an ideal");
    }
    lambdas.push_back(*lam);
  }
  residue_row_ = Matrix(field_, 1, dim_);
  for (std::size_t i = 0; i < dim_; ++i) residue_row_.set(0, i, lambdas[i]);
  m_basis_ = kernel_basis(residue_row_);

  // witness nilpotency: m^e = 0 for some e <= dim + 1
  Matrix power = m_basis_;
  nilpotency_index_ = 1;
  while (power.cols() > 0 && nilpotency_index_ <= dim_ + 1) {
    Matrix next(field_, dim_, 0);
    for (std::size_t i = 0; i < m_basis_.cols(); ++i) {
      Matrix prod = multiplication_matrix(m_basis_.column_at(i)) * power;
      next = Matrix::hstack(next, prod);
    }
    power = image_basis(next);
    ++nilpotency_index_;
  }
  if (power.cols() > 0) {
    throw AlgebraError(AlgebraAxiom::local, {0, 0, 0},
                       "NotLocal: candidate maximal ideal is not nilpotent");
  }
}

Matrix FiniteLocalAlgebra::multiplication_matrix(const Matrix& element) const {
  if (element.rows() != dim_ || element.cols() != 1)
    throw ShapeError("element coefficient vector has wrong shape");
  Matrix out(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Scalar a = element.at(i, 0);
    if (a.is_zero()) continue;
    out = out + left_mult_[i].scaled(a);
  }
  return out;
}

Matrix FiniteLocalAlgebra::basis_product(std::size_t i, std::size_t j) const {
  return left_mult_[i].column_at(j);
}

Scalar FiniteLocalAlgebra::residue_of(const Matrix& element) const {
  return (residue_row_ * element).at(0, 0);
}

bool same_ring(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->field() != b->field() || a->dim() != b->dim() || a->unit_index() != b->unit_index())
    return false;
  for (std::size_t i = 0; i < a->dim(); ++i)
    if (a->left_mult(i) != b->left_mult(i)) return false;
  return true;
}

}  // namespace relhom
