#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tvg/rng.hpp"
#include "tvg/sphere.hpp"

namespace tvg {

/// Maximal greedy packing of S^{m-1}: accepted points are pairwise more than
/// lambda apart (geodesically) and no point of the seeded sample pool can be
/// added. Floating-point by nature; the seed pins the whole object.
struct PackingSpec {
  int ambient_dim = 0;      // sphere S^{ambient_dim - 1}
  double lambda = 0.0;      // radians
  std::uint64_t seed = 0;
  int pool_size = 0;
  Eigen::MatrixXd points;   // accepted points, unit rows
};

inline PackingSpec greedy_lambda_packing(int m, double lambda, std::uint64_t seed,
                                         int pool_size) {
  if (m < 2) throw std::invalid_argument("greedy_lambda_packing: need m >= 2");
  if (!(lambda > 0.0 && lambda < std::numbers::pi))
    throw std::invalid_argument("greedy_lambda_packing: lambda must be in (0, pi)");
  if (pool_size < 1) throw std::invalid_argument("greedy_lambda_packing: empty pool");
  Rng rng = stream_rng(seed, "packing-pool");
  std::vector<Eigen::VectorXd> accepted;
  for (int i = 0; i < pool_size; ++i) {
    const Eigen::VectorXd cand = detail::random_unit_vector(rng, m);
    bool ok = true;
    for (const auto& a : accepted)
      if (geodesic_distance(a, cand) <= lambda) {
        ok = false;
        break;
      }
    if (ok) accepted.push_back(cand);
  }
  PackingSpec spec;
  spec.ambient_dim = m;
  spec.lambda = lambda;
  spec.seed = seed;
  spec.pool_size = pool_size;
  spec.points.resize(static_cast<Eigen::Index>(accepted.size()), m);
  for (std::size_t i = 0; i < accepted.size(); ++i)
    spec.points.row(static_cast<Eigen::Index>(i)) = accepted[i].transpose();
  return spec;
}

struct VoronoiCheck {
  double max_cell_diameter = 0.0;
  bool pass = false;
  double slack = 0.0;
  int sample_count = 0;
};

/// Samples the sphere, assigns each sample to its nearest packing point, and
/// measures per-cell diameters as max pairwise sample distance. Sampling only
/// underestimates true cell diameters; the slack absorbs the gap between
/// pool-maximality and true inclusion-maximality of the packing. Slack
/// default: twice the expected sample spacing pi * n^{-1/(m-1)}.
inline VoronoiCheck voronoi_diameter_check(const PackingSpec& x,
                                           int sample_count = 0) {
  if (x.points.rows() == 0)
    throw std::invalid_argument("voronoi_diameter_check: empty packing");
  const int m = x.ambient_dim;
  const int n_samples = sample_count > 0 ? sample_count : x.pool_size;
  Rng rng = stream_rng(x.seed, "voronoi-samples");

  std::vector<std::vector<Eigen::VectorXd>> cells(
      static_cast<std::size_t>(x.points.rows()));
  for (int i = 0; i < n_samples; ++i) {
    const Eigen::VectorXd s = detail::random_unit_vector(rng, m);
    Eigen::Index best = 0;
    double best_dot = x.points.row(0) * s;
    for (Eigen::Index j = 1; j < x.points.rows(); ++j) {
      const double dot = x.points.row(j) * s;
      if (dot > best_dot) {
        best_dot = dot;
        best = j;
      }
    }
    cells[static_cast<std::size_t>(best)].push_back(s);
  }

  VoronoiCheck check;
  check.sample_count = n_samples;
  check.slack = 2.0 * std::numbers::pi *
                std::pow(static_cast<double>(n_samples), -1.0 / (m - 1));
  for (const auto& cell : cells)
    for (std::size_t i = 0; i < cell.size(); ++i)
      for (std::size_t j = i + 1; j < cell.size(); ++j) {
        const double d = geodesic_distance(cell[i], cell[j]);
        if (d > check.max_cell_diameter) check.max_cell_diameter = d;
      }
  check.pass = check.max_cell_diameter <= 2.0 * x.lambda + check.slack;
  return check;
}

/// Polytope P_X = { y : <y, x> <= 1 for all x in X } with enumerated vertices
/// and facet incidence. Supported for m = 3 (vertex enumeration over plane
/// triples); higher dimensions go through the sampled Voronoi check instead.
struct PackingPolytope {
  Eigen::MatrixXd normals;   // the packing points, one facet per row
  Eigen::MatrixXd vertices;  // enumerated vertices of P_X
  std::vector<std::vector<int>> facet_vertices;
};

inline PackingPolytope packing_polytope(const PackingSpec& x) {
  const int m = x.ambient_dim;
  if (m != 3)
    throw std::invalid_argument("packing_polytope: exact construction supports m = 3");
  const Eigen::Index n = x.points.rows();
  if (n < m + 1)
    throw std::invalid_argument(
        "packing_polytope: fewer than m+1 points; the polytope is unbounded");

  const double feas_tol = 1e-9, on_tol = 1e-7;
  std::vector<Eigen::Vector3d> verts;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      for (Eigen::Index c = b + 1; c < n; ++c) {
        Eigen::Matrix3d plane;
        plane.row(0) = x.points.row(a);
        plane.row(1) = x.points.row(b);
        plane.row(2) = x.points.row(c);
        if (std::abs(plane.determinant()) < 1e-10) continue;
        const Eigen::Vector3d v = plane.partialPivLu().solve(Eigen::Vector3d::Ones());
        if (((x.points * v).array() > 1.0 + feas_tol).any()) continue;
        bool fresh = true;
        for (const auto& w : verts)
          if ((w - v).norm() < 1e-7) {
            fresh = false;
            break;
          }
        if (fresh) verts.push_back(v);
      }

  PackingPolytope p;
  p.normals = x.points;
  p.vertices.resize(static_cast<Eigen::Index>(verts.size()), 3);
  for (std::size_t i = 0; i < verts.size(); ++i)
    p.vertices.row(static_cast<Eigen::Index>(i)) = verts[i].transpose();
  p.facet_vertices.resize(static_cast<std::size_t>(n));
  for (Eigen::Index f = 0; f < n; ++f)
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (std::abs(x.points.row(f).dot(verts[i].transpose()) - 1.0) < on_tol)
        p.facet_vertices[static_cast<std::size_t>(f)].push_back(static_cast<int>(i));
  for (const auto& fv : p.facet_vertices)
    if (fv.size() < 3)
      throw std::runtime_error(
          "packing_polytope: facet with fewer than 3 vertices; polytope "
          "unbounded or degenerate");
  return p;
}

/// Spherical diameter of each radially projected facet (the Voronoi cell of
/// the corresponding packing point), from the enumerated vertices.
inline std::vector<double> cell_diameters(const PackingPolytope& p) {
  std::vector<double> out;
  for (const auto& fv : p.facet_vertices) {
    double best = 0.0;
    for (std::size_t i = 0; i < fv.size(); ++i)
      for (std::size_t j = i + 1; j < fv.size(); ++j) {
        const Eigen::VectorXd a = p.vertices.row(fv[i]).normalized().transpose();
        const Eigen::VectorXd b = p.vertices.row(fv[j]).normalized().transpose();
        const double d = geodesic_distance(a, b);
        if (d > best) best = d;
      }
    out.push_back(best);
  }
  return out;
}

}  // namespace tvg
