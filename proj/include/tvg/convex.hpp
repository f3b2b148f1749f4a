#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tvg/lp.hpp"

namespace tvg {

struct ConvIntersection {
  QVector point;                               // common point z
  std::vector<std::vector<Rational>> coeffs;   // convex coefficients per set
};

namespace detail {

/// Shared LP assembly for hull-intersection queries. Variables are the convex
/// coefficients of every set (all nonnegative); with_min_slack adds one extra
/// variable t and rows t - c_i <= 0, so maximizing t finds a common point
/// whose every coefficient is as large as possible.
inline LpProblem hull_intersection_problem(
    const std::vector<std::vector<QVector>>& sets, int ambient_dim,
    bool with_min_slack) {
  if (sets.empty())
    throw std::invalid_argument("conv intersection: no sets given");
  Eigen::Index total = 0;
  for (const auto& s : sets) {
    if (s.empty())
      throw std::invalid_argument("conv intersection: empty set");
    for (const auto& p : s)
      if (p.size() != ambient_dim)
        throw std::invalid_argument("conv intersection: point dimension mismatch");
    total += static_cast<Eigen::Index>(s.size());
  }

  LpProblem lp;
  lp.dim = total + (with_min_slack ? 1 : 0);
  lp.nonneg.assign(static_cast<std::size_t>(lp.dim), true);
  const Eigen::Index t_var = total;

  const Eigen::Index k = static_cast<Eigen::Index>(sets.size());
  const Eigen::Index eq_rows = k + (k - 1) * ambient_dim;
  lp.eq_lhs = QMatrix::Zero(eq_rows, lp.dim);
  lp.eq_rhs = QVector::Zero(eq_rows);

  std::vector<Eigen::Index> offset(sets.size());
  Eigen::Index off = 0;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    offset[j] = off;
    off += static_cast<Eigen::Index>(sets[j].size());
  }

  // sum of coefficients = 1 per set
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (std::size_t i = 0; i < sets[j].size(); ++i)
      lp.eq_lhs(static_cast<Eigen::Index>(j), offset[j] + static_cast<Eigen::Index>(i)) = 1;
    lp.eq_rhs(static_cast<Eigen::Index>(j)) = 1;
  }
  // equal combination points: set j reproduces the same point as set 0
  for (std::size_t j = 1; j < sets.size(); ++j) {
    for (int c = 0; c < ambient_dim; ++c) {
      const Eigen::Index row = k + static_cast<Eigen::Index>(j - 1) * ambient_dim + c;
      for (std::size_t i = 0; i < sets[j].size(); ++i)
        lp.eq_lhs(row, offset[j] + static_cast<Eigen::Index>(i)) = sets[j][i](c);
      for (std::size_t i = 0; i < sets[0].size(); ++i)
        lp.eq_lhs(row, offset[0] + static_cast<Eigen::Index>(i)) = -sets[0][i](c);
    }
  }

  if (with_min_slack) {
    lp.ineq_lhs = QMatrix::Zero(total, lp.dim);
    lp.ineq_rhs = QVector::Zero(total);
    for (Eigen::Index i = 0; i < total; ++i) {
      lp.ineq_lhs(i, t_var) = 1;
      lp.ineq_lhs(i, i) = -1;
    }
    lp.objective = QVector::Zero(lp.dim);
    lp.objective(t_var) = 1;
  }
  return lp;
}

inline ConvIntersection unpack_hull_solution(
    const std::vector<std::vector<QVector>>& sets, int ambient_dim,
    const QVector& x) {
  ConvIntersection out;
  out.coeffs.resize(sets.size());
  Eigen::Index off = 0;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    out.coeffs[j].resize(sets[j].size());
    for (std::size_t i = 0; i < sets[j].size(); ++i)
      out.coeffs[j][i] = x(off + static_cast<Eigen::Index>(i));
    off += static_cast<Eigen::Index>(sets[j].size());
  }
  out.point = QVector::Zero(ambient_dim);
  for (std::size_t i = 0; i < sets[0].size(); ++i)
    out.point += out.coeffs[0][i] * sets[0][i];
  return out;
}

}  // namespace detail

/// A point in the intersection of the convex hulls of the given sets, with
/// exact convex coefficients per set, or nullopt when the hulls are disjoint.
/// Duplicate points inside a set are permitted and change nothing.
inline std::optional<ConvIntersection> conv_intersection_point(
    const std::vector<std::vector<QVector>>& sets, int ambient_dim) {
  detail::LpProblem lp =
      detail::hull_intersection_problem(sets, ambient_dim, false);
  const detail::LpResult r = detail::simplex_solve(lp);
  if (r.status != detail::LpStatus::optimal) return std::nullopt;
  return detail::unpack_hull_solution(sets, ambient_dim, r.x);
}

}  // namespace tvg
