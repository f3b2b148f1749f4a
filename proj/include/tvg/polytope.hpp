#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvg/convex.hpp"
#include "tvg/linalg.hpp"

namespace tvg {

/// V-polytope with known facet incidence. Vertices are rows; every listed
/// facet is the full vertex set of a supporting hyperplane; dim is the affine
/// rank of the vertices. Immutable by convention after construction.
struct Polytope {
  QMatrix vertices;                      // n x ambient, one vertex per row
  std::vector<std::vector<int>> facets;  // sorted vertex indices per facet
  int dim = 0;

  Eigen::Index vertex_count() const { return vertices.rows(); }
  Eigen::Index ambient_dim() const { return vertices.cols(); }
  QVector vertex(int i) const { return vertices.row(i).transpose(); }
};

/// A face is identified with its (sorted) vertex index set; dim is the affine
/// rank of those vertices. The mask mirrors vertex_indices for fast
/// disjointness tests (vertex counts are capped at 64).
struct Face {
  std::vector<int> vertex_indices;
  int dim = 0;
  std::uint64_t mask = 0;
};

struct SkeletonGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, lexicographically sorted
};

using Warnings = std::vector<std::string>;

inline std::uint64_t mask_of(const std::vector<int>& indices) {
  std::uint64_t m = 0;
  for (int i : indices) m |= (std::uint64_t{1} << i);
  return m;
}

inline std::vector<int> indices_of(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (mask & (std::uint64_t{1} << i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Standard families
// ---------------------------------------------------------------------------

/// Simplex with vertices 0, e_1, ..., e_m in R^m.
inline Polytope make_simplex(int m) {
  if (m < 1) throw std::invalid_argument("make_simplex: m must be >= 1");
  Polytope p;
  p.dim = m;
  p.vertices = QMatrix::Zero(m + 1, m);
  for (int i = 1; i <= m; ++i) p.vertices(i, i - 1) = 1;
  for (int omit = 0; omit <= m; ++omit) {
    std::vector<int> f;
    for (int i = 0; i <= m; ++i)
      if (i != omit) f.push_back(i);
    p.facets.push_back(std::move(f));
  }
  return p;
}

/// Cross polytope with vertices +-e_i; the antipodal pair of axis k sits at
/// adjacent indices 2k, 2k+1. Facets pick one sign per axis.
inline Polytope make_cross(int m) {
  if (m < 1) throw std::invalid_argument("make_cross: m must be >= 1");
  Polytope p;
  p.dim = m;
  p.vertices = QMatrix::Zero(2 * m, m);
  for (int k = 0; k < m; ++k) {
    p.vertices(2 * k, k) = 1;
    p.vertices(2 * k + 1, k) = -1;
  }
  for (int signs = 0; signs < (1 << m); ++signs) {
    std::vector<int> f;
    for (int k = 0; k < m; ++k)
      f.push_back(2 * k + ((signs >> k) & 1));
    std::sort(f.begin(), f.end());
    p.facets.push_back(std::move(f));
  }
  std::sort(p.facets.begin(), p.facets.end());
  return p;
}

/// Unit cube {0,1}^m. Vertex k has coordinate i equal to bit i of k, so
/// coordinate 1 toggles fastest along the vertex order.
inline Polytope make_cube(int m) {
  if (m < 1) throw std::invalid_argument("make_cube: m must be >= 1");
  if (m > 6) throw std::invalid_argument("make_cube: more than 64 vertices");
  Polytope p;
  p.dim = m;
  const int n = 1 << m;
  p.vertices = QMatrix::Zero(n, m);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i) p.vertices(k, i) = (k >> i) & 1;
  for (int i = 0; i < m; ++i)
    for (int side = 0; side <= 1; ++side) {
      std::vector<int> f;
      for (int k = 0; k < n; ++k)
        if (((k >> i) & 1) == side) f.push_back(k);
      p.facets.push_back(std::move(f));
    }
  std::sort(p.facets.begin(), p.facets.end());
  return p;
}

/// Facet index sets of the cyclic polytope C(m, n) by Gale's evenness
/// condition: an m-subset S of {0..n-1} is a facet iff any two elements
/// outside S have an even number of elements of S strictly between them.
inline std::vector<std::vector<int>> gale_evenness_facets(int n, int m) {
  if (n <= m) throw std::invalid_argument("gale_evenness_facets: need n > m");
  std::vector<std::vector<int>> out;
  std::vector<int> sel(m);
  std::vector<bool> in_s(n, false);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == m) {
      std::vector<int> prefix(n + 1, 0);
      for (int i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + (in_s[i] ? 1 : 0);
      for (int i = 0; i < n; ++i) {
        if (in_s[i]) continue;
        for (int j = i + 1; j < n; ++j) {
          if (in_s[j]) continue;
          if ((prefix[j] - prefix[i + 1]) % 2 != 0) return;
        }
      }
      out.push_back(sel);
      return;
    }
    for (int v = start; v < n; ++v) {
      sel[pos] = v;
      in_s[v] = true;
      rec(pos + 1, v + 1);
      in_s[v] = false;
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Cyclic polytope on the moment curve t -> (t, t^2, ..., t^m) with strictly
/// increasing parameters (defaults t_i = i+1). Facets come from Gale's
/// condition; facets_bruteforce provides the independent cross-check.
inline Polytope make_cyclic(int m, int n, const std::vector<Rational>& ts = {}) {
  if (m < 2 || n <= m)
    throw std::invalid_argument("make_cyclic: need n > m >= 2");
  std::vector<Rational> params = ts;
  if (params.empty())
    for (int i = 1; i <= n; ++i) params.emplace_back(i);
  if (static_cast<int>(params.size()) != n)
    throw std::invalid_argument("make_cyclic: wrong number of parameters");
  for (int i = 1; i < n; ++i)
    if (!(params[i - 1] < params[i]))
      throw std::invalid_argument("make_cyclic: parameters must increase strictly");
  Polytope p;
  p.dim = m;
  p.vertices = QMatrix::Zero(n, m);
  for (int i = 0; i < n; ++i) {
    Rational pw = 1;
    for (int j = 0; j < m; ++j) {
      pw *= params[i];
      p.vertices(i, j) = pw;
    }
  }
  p.facets = gale_evenness_facets(n, m);
  return p;
}

// ---------------------------------------------------------------------------
// Facet and face machinery
// ---------------------------------------------------------------------------

/// Supporting hyperplane <a, x> <= b of a facet, exact, with every
/// non-facet vertex strictly below. Throws if the listed facet is not a
/// supporting set.
inline std::pair<QVector, Rational> facet_hyperplane(const Polytope& p,
                                                     int facet_index) {
  const auto& facet = p.facets.at(static_cast<std::size_t>(facet_index));
  if (facet.size() < static_cast<std::size_t>(p.dim))
    throw std::invalid_argument("facet_hyperplane: facet too small");
  QMatrix diffs(static_cast<Eigen::Index>(facet.size()) - 1, p.ambient_dim());
  for (std::size_t i = 1; i < facet.size(); ++i)
    diffs.row(static_cast<Eigen::Index>(i - 1)) =
        p.vertices.row(facet[i]) - p.vertices.row(facet[0]);
  const QMatrix kernel = kernel_basis(diffs);
  if (kernel.cols() != 1)
    throw std::invalid_argument("facet_hyperplane: facet does not span a hyperplane");
  QVector a = kernel.col(0);
  Rational b = (p.vertices.row(facet[0]) * a)(0);
  bool oriented = false;
  for (Eigen::Index v = 0; v < p.vertex_count(); ++v) {
    if (std::binary_search(facet.begin(), facet.end(), static_cast<int>(v)))
      continue;
    const Rational side = (p.vertices.row(v) * a)(0);
    if (side == b)
      throw std::invalid_argument("facet_hyperplane: extra vertex on the facet plane");
    if (!oriented) {
      if (side > b) {
        a = -a;
        b = -b;
      }
      oriented = true;
    } else if (side > b) {
      throw std::invalid_argument("facet_hyperplane: vertices on both sides");
    }
  }
  return {a, b};
}

/// Independent facet oracle for V-polytopes at desk scale: enumerates vertex
/// subsets spanning hyperplanes with all remaining vertices strictly on one
/// side. Input must be full-dimensional.
inline std::vector<std::vector<int>> facets_bruteforce(const QMatrix& vertices) {
  const int n = static_cast<int>(vertices.rows());
  const int m = static_cast<int>(vertices.cols());
  const int ar = affine_rank_rows(vertices);
  if (ar != m)
    throw std::invalid_argument(
        "facets_bruteforce: input not full-dimensional (affine rank " +
        std::to_string(ar) + " in R^" + std::to_string(m) + ")");
  std::set<std::vector<int>> found;
  std::vector<int> sel(m);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == m) {
      QMatrix diffs(m - 1, m);
      for (int i = 1; i < m; ++i)
        diffs.row(i - 1) = vertices.row(sel[i]) - vertices.row(sel[0]);
      QMatrix kernel = kernel_basis(diffs);
      if (kernel.cols() != 1) return;
      const QVector a = kernel.col(0);
      const Rational b = (vertices.row(sel[0]) * a)(0);
      std::vector<int> on;
      bool below = false, above = false;
      for (int v = 0; v < n; ++v) {
        const Rational side = (vertices.row(v) * a)(0);
        if (side == b)
          on.push_back(v);
        else if (side < b)
          below = true;
        else
          above = true;
      }
      if (below && above) return;
      found.insert(on);
      return;
    }
    for (int v = start; v < n; ++v) {
      sel[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
  return {found.begin(), found.end()};
}

namespace detail {

inline std::uint64_t full_vertex_mask(const Polytope& p) {
  const int n = static_cast<int>(p.vertex_count());
  return (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

inline void require_mask_capacity(const Polytope& p) {
  if (p.vertex_count() > 64)
    throw std::invalid_argument("face enumeration limited to 64 vertices");
}

inline int face_dim(const Polytope& p, const std::vector<int>& verts) {
  QMatrix rows(static_cast<Eigen::Index>(verts.size()), p.ambient_dim());
  for (std::size_t i = 0; i < verts.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) = p.vertices.row(verts[i]);
  return affine_rank_rows(rows);
}

}  // namespace detail

/// Every nonempty proper face, computed as the closure of the facet vertex
/// sets under intersection, ordered by (dim, vertex list). Face dims come
/// from exact affine ranks.
inline std::vector<Face> face_lattice(const Polytope& p) {
  detail::require_mask_capacity(p);
  std::vector<std::uint64_t> facet_masks;
  for (const auto& f : p.facets) facet_masks.push_back(mask_of(f));
  std::set<std::uint64_t> known(facet_masks.begin(), facet_masks.end());
  std::vector<std::uint64_t> work(known.begin(), known.end());
  while (!work.empty()) {
    const std::uint64_t x = work.back();
    work.pop_back();
    for (const std::uint64_t g : facet_masks) {
      const std::uint64_t y = x & g;
      if (y != 0 && known.insert(y).second) work.push_back(y);
    }
  }
  std::vector<Face> faces;
  faces.reserve(known.size());
  for (const std::uint64_t m : known) {
    Face f;
    f.mask = m;
    f.vertex_indices = indices_of(m);
    f.dim = detail::face_dim(p, f.vertex_indices);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertex_indices < b.vertex_indices;
  });
  return faces;
}

inline std::vector<Face> all_proper_faces(const Polytope& p) {
  return face_lattice(p);
}

inline std::vector<Face> faces_of_dim(const Polytope& p, int k) {
  if (k < 0 || k >= p.dim)
    throw std::invalid_argument("faces_of_dim: need 0 <= k < dim");
  std::vector<Face> out;
  for (auto& f : face_lattice(p))
    if (f.dim == k) out.push_back(std::move(f));
  return out;
}

/// Smallest face containing the given vertices: the intersection of all
/// facets containing them. nullopt when no facet does (the minimal face is
/// then the whole polytope, which is not a proper face).
inline std::optional<std::vector<int>> minimal_face(const Polytope& p,
                                                    const std::vector<int>& verts) {
  detail::require_mask_capacity(p);
  const std::uint64_t s = mask_of(verts);
  std::uint64_t meet = detail::full_vertex_mask(p);
  bool any = false;
  for (const auto& f : p.facets) {
    const std::uint64_t fm = mask_of(f);
    if ((s & fm) == s) {
      meet &= fm;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return indices_of(meet);
}

/// True iff every k-subset of vertices spans a face.
inline bool is_k_neighborly(const Polytope& p, int k, Warnings* warnings = nullptr) {
  detail::require_mask_capacity(p);
  if (warnings && (k < 1 || 2 * k > p.dim))
    warnings->push_back("is_k_neighborly: k outside the recommended range [1, dim/2]");
  const int n = static_cast<int>(p.vertex_count());
  std::vector<std::uint64_t> facet_masks;
  for (const auto& f : p.facets) facet_masks.push_back(mask_of(f));
  std::vector<int> sel(static_cast<std::size_t>(k));
  std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
    if (pos == k) {
      const std::uint64_t s = mask_of(sel);
      std::uint64_t meet = detail::full_vertex_mask(p);
      bool any = false;
      for (const std::uint64_t fm : facet_masks)
        if ((s & fm) == s) {
          meet &= fm;
          any = true;
        }
      return any && meet == s;
    }
    for (int v = start; v < n; ++v) {
      sel[static_cast<std::size_t>(pos)] = v;
      if (!rec(pos + 1, v + 1)) return false;
    }
    return true;
  };
  return rec(0, 0);
}

inline SkeletonGraph skeleton(const Polytope& p) {
  SkeletonGraph g;
  g.vertex_count = static_cast<int>(p.vertex_count());
  for (const auto& e : faces_of_dim(p, 1)) {
    if (e.vertex_indices.size() != 2)
      throw std::runtime_error("skeleton: 1-face with vertex count != 2");
    g.edges.emplace_back(e.vertex_indices[0], e.vertex_indices[1]);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline int min_degree(const SkeletonGraph& g) {
  if (g.vertex_count == 0) return 0;
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count), 0);
  for (const auto& [u, v] : g.edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return *std::min_element(deg.begin(), deg.end());
}

inline bool is_triangle_free(const SkeletonGraph& g) {
  if (g.vertex_count > 64)
    throw std::invalid_argument("is_triangle_free: limited to 64 vertices");
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(g.vertex_count), 0);
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)] |= (std::uint64_t{1} << v);
    adj[static_cast<std::size_t>(v)] |= (std::uint64_t{1} << u);
  }
  for (const auto& [u, v] : g.edges)
    if (adj[static_cast<std::size_t>(u)] & adj[static_cast<std::size_t>(v)])
      return false;
  return true;
}

inline QVector polytope_centroid(const Polytope& p) {
  QVector c = QVector::Zero(p.ambient_dim());
  for (Eigen::Index i = 0; i < p.vertex_count(); ++i)
    c += p.vertices.row(i).transpose();
  return c / Rational(static_cast<long>(p.vertex_count()));
}

/// Exact structural validation: stated dim equals the affine rank, every
/// vertex is extreme, every facet is a supporting set. Throws with a reason on
/// the first violation.
inline void validate_polytope(const Polytope& p) {
  if (p.vertex_count() == 0) throw std::invalid_argument("polytope: no vertices");
  if (p.dim != affine_rank_rows(p.vertices))
    throw std::invalid_argument("polytope: dim does not match affine rank");
  for (Eigen::Index v = 0; v < p.vertex_count(); ++v) {
    std::vector<QVector> others;
    for (Eigen::Index w = 0; w < p.vertex_count(); ++w)
      if (w != v) others.push_back(p.vertices.row(w).transpose());
    const std::vector<std::vector<QVector>> sets = {
        others, {p.vertices.row(v).transpose()}};
    if (conv_intersection_point(sets, static_cast<int>(p.ambient_dim())))
      throw std::invalid_argument("polytope: vertex " + std::to_string(v) +
                                  " is not an extreme point");
  }
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    if (!std::is_sorted(p.facets[i].begin(), p.facets[i].end()))
      throw std::invalid_argument("polytope: facet vertex list not sorted");
    facet_hyperplane(p, static_cast<int>(i));  // throws when not supporting
  }
}

}  // namespace tvg
