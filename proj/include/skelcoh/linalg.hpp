#pragma once

// Exact dense linear algebra on Eigen matrices with arbitrary-precision
// scalars. Field routines (echelon form, nullspace, rank) are templated on the
// scalar; the Smith form is specific to Integer.

#include "skelcoh/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <utility>
#include <vector>

namespace skelcoh {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

template <typename Scalar>
struct EchelonForm {
  Matrix<Scalar> reduced;     // reduced row echelon form, zero rows at the bottom
  std::vector<Index> pivots;  // pivot column of row i, i < rank

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination over a field. The first nonzero entry of a column
/// (scanning rows top-down) is the pivot, so the result is deterministic.
template <typename Derived>
EchelonForm<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  EchelonForm<Scalar> out{m.eval(), {}};
  Matrix<Scalar>& a = out.reduced;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index pivot = row;
    while (pivot < a.rows() && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == a.rows()) continue;
    a.row(row).swap(a.row(pivot));
    const Scalar inv = Scalar(1) / a(row, col);
    a.row(row) *= inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == Scalar(0)) continue;
      const Scalar f = a(r, col);
      a.row(r) -= f * a.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return reduced_row_echelon(m).rank();
}

/// Columns form the standard nullspace basis: one vector per free column f,
/// with 1 at f and -reduced(i, f) at pivot column i.
template <typename Scalar>
Matrix<Scalar> nullspace(const EchelonForm<Scalar>& ef) {
  const Index n = ef.reduced.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : ef.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(n, static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Index f = free[k];
    basis(f, static_cast<Index>(k)) = Scalar(1);
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
      basis(ef.pivots[i], static_cast<Index>(k)) = -ef.reduced(static_cast<Index>(i), f);
  }
  return basis;
}

template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  return nullspace(reduced_row_echelon(m));
}

/// Indices in [0, n) that are not pivots.
inline std::vector<Index> non_pivot_columns(const std::vector<Index>& pivots, Index n) {
  std::vector<Index> out;
  for (Index c = 0; c < n; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) out.push_back(c);
  return out;
}

/// Reduces v modulo the row space of an echelon form, leaving zeros at every
/// pivot position. The surviving entries are the coordinates of the class of v
/// against the standard vectors at non-pivot positions.
template <typename Scalar>
Vector<Scalar> reduce_modulo_rows(const EchelonForm<Scalar>& ef, Vector<Scalar> v) {
  for (std::size_t i = 0; i < ef.pivots.size(); ++i) {
    const Scalar f = v(ef.pivots[i]);
    if (f != Scalar(0)) v -= f * ef.reduced.row(static_cast<Index>(i)).transpose();
  }
  return v;
}

/// Solves a square nonsingular system; returns false when singular.
template <typename Scalar>
bool solve_square(const Matrix<Scalar>& a, const Vector<Scalar>& b, Vector<Scalar>& x) {
  const Index n = a.rows();
  Matrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  auto ef = reduced_row_echelon(aug);
  if (ef.rank() != n || ef.pivots.back() != n - 1) return false;
  x = ef.reduced.col(n);
  return true;
}

template <typename Derived>
RatMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

/// Nonzero invariant factors d_1 | d_2 | ... (all positive) of an integer
/// matrix. The number of factors is the rank.
std::vector<Integer> smith_invariants(IntMatrix a);

}  // namespace skelcoh
