#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tvg/polytope.hpp"
#include "tvg/sphere.hpp"

namespace tvg {

/// Geometric simplicial complex triangulating the sphere image of a polytope
/// boundary under central projection from an interior point. Vertices are
/// unit vectors (rows); every simplex has exactly ambient_dim vertices, i.e.
/// dimension ambient_dim - 1 on S^{ambient_dim - 1}.
struct BoundaryComplex {
  Eigen::MatrixXd sphere_vertices;        // V x m, unit rows
  std::vector<std::vector<int>> simplices;  // sorted vertex ids, size m each
  int ambient_dim = 0;
};

namespace detail {

inline Eigen::VectorXd normalized_double(const QVector& v) {
  Eigen::VectorXd x(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) x(i) = to_double(v(i));
  const double n = x.norm();
  if (n == 0.0) throw std::invalid_argument("cannot project the origin to the sphere");
  return x / n;
}

}  // namespace detail

/// Triangulates the boundary of P and radially projects it to the unit sphere
/// around the vertex centroid. Simplicial faces are kept as they are;
/// non-simplicial faces are fanned from their barycenter, recursively through
/// the face lattice, so neighboring facets share subdivisions. Throws when
/// the centroid is not strictly interior.
inline BoundaryComplex boundary_complex(const Polytope& p) {
  const QVector center = polytope_centroid(p);
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    const auto [a, b] = facet_hyperplane(p, static_cast<int>(i));
    if (!((a.transpose() * center)(0) < b))
      throw std::invalid_argument("boundary_complex: centroid not strictly interior");
  }

  const auto faces = face_lattice(p);
  const int n = static_cast<int>(p.vertex_count());

  // exact coordinates relative to the centroid; barycenters appended per face
  std::vector<QVector> coords;
  for (int v = 0; v < n; ++v) coords.push_back(p.vertex(v) - center);

  std::map<std::uint64_t, int> face_vertex;  // non-simplex face -> cone apex id
  std::map<std::uint64_t, std::vector<std::vector<int>>> tri;  // face -> simplices

  // lattice is sorted by dim, so children are always processed first
  for (const auto& face : faces) {
    const bool simplex =
        static_cast<int>(face.vertex_indices.size()) == face.dim + 1;
    if (simplex) {
      tri[face.mask] = {face.vertex_indices};
      continue;
    }
    QVector bary = QVector::Zero(p.ambient_dim());
    for (int v : face.vertex_indices) bary += coords[static_cast<std::size_t>(v)];
    bary /= Rational(static_cast<long>(face.vertex_indices.size()));
    const int apex = static_cast<int>(coords.size());
    coords.push_back(bary);
    face_vertex[face.mask] = apex;

    std::vector<std::vector<int>> out;
    for (const auto& child : faces) {
      if (child.dim != face.dim - 1 || (child.mask & face.mask) != child.mask)
        continue;
      for (const auto& s : tri.at(child.mask)) {
        std::vector<int> cell = s;
        cell.push_back(apex);
        std::sort(cell.begin(), cell.end());
        out.push_back(std::move(cell));
      }
    }
    tri[face.mask] = std::move(out);
  }

  BoundaryComplex c;
  c.ambient_dim = p.dim;
  c.sphere_vertices.resize(static_cast<Eigen::Index>(coords.size()), p.ambient_dim());
  for (std::size_t i = 0; i < coords.size(); ++i)
    c.sphere_vertices.row(static_cast<Eigen::Index>(i)) =
        detail::normalized_double(coords[i]).transpose();
  for (const auto& face : faces) {
    if (face.dim != p.dim - 1) continue;
    for (const auto& s : tri.at(face.mask)) c.simplices.push_back(s);
  }
  std::sort(c.simplices.begin(), c.simplices.end());
  return c;
}

/// Standard barycentric subdivision: one new vertex per face of every
/// dimension (radially renormalized), one simplex per flag of faces. The top
/// simplex count multiplies by m! per cell.
inline BoundaryComplex barycentric_subdivide(const BoundaryComplex& c) {
  const int m = c.ambient_dim;
  std::map<std::vector<int>, int> face_id;
  std::vector<std::vector<int>> face_list;
  for (const auto& s : c.simplices) {
    const int k = static_cast<int>(s.size());
    for (int subset = 1; subset < (1 << k); ++subset) {
      std::vector<int> face;
      for (int i = 0; i < k; ++i)
        if (subset & (1 << i)) face.push_back(s[static_cast<std::size_t>(i)]);
      if (face_id.emplace(face, 0).second) face_list.push_back(face);
    }
  }
  std::sort(face_list.begin(), face_list.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (std::size_t i = 0; i < face_list.size(); ++i) face_id[face_list[i]] = static_cast<int>(i);

  BoundaryComplex out;
  out.ambient_dim = m;
  out.sphere_vertices.resize(static_cast<Eigen::Index>(face_list.size()), m);
  for (std::size_t i = 0; i < face_list.size(); ++i) {
    Eigen::VectorXd bary = Eigen::VectorXd::Zero(m);
    for (int v : face_list[i]) bary += c.sphere_vertices.row(v).transpose();
    out.sphere_vertices.row(static_cast<Eigen::Index>(i)) =
        (bary / bary.norm()).transpose();
  }

  for (const auto& s : c.simplices) {
    std::vector<int> perm = s;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> cell;
      std::vector<int> prefix;
      for (int v : perm) {
        prefix.push_back(v);
        std::vector<int> key = prefix;
        std::sort(key.begin(), key.end());
        cell.push_back(face_id.at(key));
      }
      std::sort(cell.begin(), cell.end());
      out.simplices.push_back(std::move(cell));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

inline BoundaryComplex subdivide_k(const Polytope& p, int k) {
  BoundaryComplex c = boundary_complex(p);
  for (int i = 0; i < k; ++i) c = barycentric_subdivide(c);
  return c;
}

/// Maximum spherical diameter over all top cells; for spherical simplices the
/// vertex pairs realize the diameter.
inline double face_diameter(const BoundaryComplex& c) {
  for (Eigen::Index v = 0; v < c.sphere_vertices.rows(); ++v)
    if (std::abs(c.sphere_vertices.row(v).norm() - 1.0) > 1e-12)
      throw std::invalid_argument("face_diameter: vertex not on the unit sphere");
  double best = 0.0;
  for (const auto& s : c.simplices)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const double d = geodesic_distance(
            c.sphere_vertices.row(s[i]).transpose(),
            c.sphere_vertices.row(s[j]).transpose());
        if (d > best) best = d;
      }
  return best;
}

struct DecayRow {
  int k = 0;
  double diameter = 0.0;
  double ratio = 0.0;             // diameter_k / diameter_{k-1}; NaN for k = 0
  bool shrank = true;             // ratio < 1 (vacuously true at k = 0)
  bool within_paper_factor = true;  // ratio <= (m-1)/m, recorded only
};

/// Measures diameters of P's boundary complex through k_max subdivisions.
/// Flags any ratio >= 1; also records whether each ratio stays within the
/// (m-1)/m factor, as a measurement rather than an assertion.
inline std::vector<DecayRow> subdivision_decay_report(const Polytope& p, int k_max) {
  if (k_max < 1) throw std::invalid_argument("subdivision_decay_report: k_max >= 1");
  std::vector<DecayRow> rows;
  BoundaryComplex c = boundary_complex(p);
  const double factor =
      static_cast<double>(p.dim - 1) / static_cast<double>(p.dim);
  double prev = face_diameter(c);
  rows.push_back({0, prev, std::numeric_limits<double>::quiet_NaN(), true, true});
  for (int k = 1; k <= k_max; ++k) {
    c = barycentric_subdivide(c);
    const double d = face_diameter(c);
    const double ratio = d / prev;
    rows.push_back({k, d, ratio, ratio < 1.0, ratio <= factor});
    prev = d;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Structural checks used by tests and validation
// ---------------------------------------------------------------------------

/// Every ridge ((m-2)-dimensional face) of a closed boundary complex must lie
/// in exactly two top cells.
inline bool ridges_in_two_cells(const BoundaryComplex& c) {
  std::map<std::vector<int>, int> ridge_count;
  for (const auto& s : c.simplices)
    for (std::size_t omit = 0; omit < s.size(); ++omit) {
      std::vector<int> ridge;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != omit) ridge.push_back(s[i]);
      ++ridge_count[ridge];
    }
  for (const auto& [ridge, count] : ridge_count)
    if (count != 2) return false;
  return true;
}

/// Euler characteristic of the complex (all faces of the top simplices).
inline long euler_characteristic(const BoundaryComplex& c) {
  std::set<std::vector<int>> faces;
  for (const auto& s : c.simplices) {
    const int k = static_cast<int>(s.size());
    for (int subset = 1; subset < (1 << k); ++subset) {
      std::vector<int> face;
      for (int i = 0; i < k; ++i)
        if (subset & (1 << i)) face.push_back(s[static_cast<std::size_t>(i)]);
      faces.insert(std::move(face));
    }
  }
  long chi = 0;
  for (const auto& f : faces) chi += (f.size() % 2 == 1) ? 1 : -1;
  return chi;
}

}  // namespace tvg
