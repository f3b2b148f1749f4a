#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

#include "tvg/rational.hpp"

namespace tvg {

using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using QRowVector = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;
using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline bool exactly_equal(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool is_zero(const QVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

/// In-place reduced row echelon form over the rationals. Pivot choice is the
/// first nonzero entry in column order, so the result is deterministic.
/// Returns the rank; pivot columns are appended to *pivot_cols when given.
inline int row_echelon(QMatrix& a, std::vector<int>* pivot_cols = nullptr) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index pr = 0;
  for (Eigen::Index c = 0; c < cols && pr < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = pr; r < rows; ++r)
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    a.row(pr).swap(a.row(pivot));
    const Rational inv = Rational(1) / a(pr, c);
    for (Eigen::Index j = c; j < cols; ++j) a(pr, j) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == pr || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (Eigen::Index j = c; j < cols; ++j) a(r, j) -= f * a(pr, j);
    }
    if (pivot_cols) pivot_cols->push_back(static_cast<int>(c));
    ++pr;
  }
  return static_cast<int>(pr);
}

inline int rank(QMatrix a) { return row_echelon(a); }

/// Affine rank of a point set: rank of the differences to the first point.
/// A single point has affine rank 0.
inline int affine_rank_rows(const QMatrix& points) {
  if (points.rows() == 0) throw std::invalid_argument("affine_rank: empty set");
  QMatrix d(points.rows() - 1, points.cols());
  for (Eigen::Index i = 1; i < points.rows(); ++i)
    d.row(i - 1) = points.row(i) - points.row(0);
  return rank(std::move(d));
}

inline int affine_rank(const std::vector<QVector>& points) {
  if (points.empty()) throw std::invalid_argument("affine_rank: empty set");
  QMatrix m(static_cast<Eigen::Index>(points.size()), points[0].size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != points[0].size())
      throw std::invalid_argument("affine_rank: mixed dimensions");
    m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  }
  return affine_rank_rows(m);
}

/// Columns form a basis of the exact null space { x : a x = 0 }.
inline QMatrix kernel_basis(QMatrix a) {
  const Eigen::Index n = a.cols();
  std::vector<int> pivots;
  row_echelon(a, &pivots);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  QMatrix basis(n, n - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index col = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    QVector x = QVector::Zero(n);
    x(free) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      x(pivots[r]) = -a(static_cast<Eigen::Index>(r), free);
    basis.col(col++) = x;
  }
  return basis;
}

/// Any exact solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_linear: shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<int> pivots;
  row_echelon(aug, &pivots);
  if (!pivots.empty() && pivots.back() == static_cast<int>(a.cols()))
    return std::nullopt;
  QVector x = QVector::Zero(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x(pivots[r]) = aug(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

}  // namespace tvg
