#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvg/polytope.hpp"

namespace tvg {

/// Exact affine map x -> matrix * x + offset from vertex space to R^d.
struct LinearMap {
  QMatrix matrix;  // d x ambient
  QVector offset;  // d

  int output_dim() const { return static_cast<int>(matrix.rows()); }
  int input_dim() const { return static_cast<int>(matrix.cols()); }

  QVector apply(const QVector& x) const {
    if (x.size() != matrix.cols())
      throw std::invalid_argument("LinearMap: input dimension mismatch");
    return matrix * x + offset;
  }
};

struct SearchParams {
  int r = 2;
  int d = 1;
  std::optional<int> forbidden_vertex;
};

/// r faces with a common image point z and exact convex coefficients over
/// each face's vertices. Valid witnesses have pairwise vertex-disjoint faces,
/// all coefficients positive (each face is the minimal face of its point),
/// and f applied to each combination reproducing z exactly.
struct TverbergWitness {
  std::vector<Face> faces;
  QVector z;
  std::vector<std::vector<Rational>> coeffs;
};

/// Partition-style witness over a plain point set (no polytope): parts of the
/// index set whose hulls share the point z.
struct PartitionWitness {
  std::vector<std::vector<int>> parts;
  QVector z;
  std::vector<std::vector<Rational>> coeffs;
};

struct ColoredConfig {
  std::vector<QVector> points;
  std::vector<int> colors;
};

/// Output of the d = 1 construction: r-1 edges plus a final vertex whose
/// value lies in every edge's value interval.
struct D1Witness {
  std::vector<std::pair<int, int>> edges;
  int final_vertex = -1;
  Rational common_value;
};

struct ValidationResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

inline ValidationResult validation_failure(const std::string& msg) {
  return {false, msg};
}

/// Exact witness validation used by every test and report: disjointness,
/// forbidden-vertex avoidance, convexity, equal images, minimality.
inline ValidationResult validate_witness(const Polytope& p, const LinearMap& f,
                                         const TverbergWitness& w,
                                         std::optional<int> forbidden = {}) {
  if (w.faces.empty()) return validation_failure("witness has no faces");
  if (w.faces.size() != w.coeffs.size())
    return validation_failure("faces/coeffs length mismatch");
  std::uint64_t seen = 0;
  for (std::size_t j = 0; j < w.faces.size(); ++j) {
    const Face& face = w.faces[j];
    const auto& c = w.coeffs[j];
    if (face.vertex_indices.empty()) return validation_failure("empty face");
    if (c.size() != face.vertex_indices.size())
      return validation_failure("coefficient count differs from face size");
    const std::uint64_t m = mask_of(face.vertex_indices);
    if (m & seen) return validation_failure("faces are not vertex-disjoint");
    seen |= m;
    if (forbidden &&
        std::binary_search(face.vertex_indices.begin(),
                           face.vertex_indices.end(), *forbidden))
      return validation_failure("face contains the forbidden vertex");

    Rational sum = 0;
    QVector x = QVector::Zero(p.ambient_dim());
    std::vector<int> support;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0) return validation_failure("negative coefficient");
      if (c[i] > 0) support.push_back(face.vertex_indices[i]);
      sum += c[i];
      x += c[i] * p.vertex(face.vertex_indices[i]);
    }
    if (sum != 1) return validation_failure("coefficients do not sum to 1");
    const QVector img = f.apply(x);
    if (!exactly_equal(img, w.z))
      return validation_failure("face image differs from z");
    const auto mf = minimal_face(p, support);
    if (!mf || *mf != face.vertex_indices)
      return validation_failure("face is not the minimal face of its point");
  }
  return {};
}

inline ValidationResult validate_partition_witness(
    const std::vector<QVector>& points, int r, const PartitionWitness& w) {
  if (static_cast<int>(w.parts.size()) != r)
    return validation_failure("wrong number of parts");
  std::vector<bool> used(points.size(), false);
  std::size_t covered = 0;
  for (std::size_t j = 0; j < w.parts.size(); ++j) {
    if (w.parts[j].empty()) return validation_failure("empty part");
    if (w.parts[j].size() != w.coeffs[j].size())
      return validation_failure("coefficient count differs from part size");
    Rational sum = 0;
    QVector x = QVector::Zero(w.z.size());
    for (std::size_t i = 0; i < w.parts[j].size(); ++i) {
      const int idx = w.parts[j][i];
      if (idx < 0 || idx >= static_cast<int>(points.size()))
        return validation_failure("part index out of range");
      if (used[static_cast<std::size_t>(idx)])
        return validation_failure("parts overlap");
      used[static_cast<std::size_t>(idx)] = true;
      ++covered;
      const Rational& c = w.coeffs[j][i];
      if (c < 0) return validation_failure("negative coefficient");
      sum += c;
      x += c * points[static_cast<std::size_t>(idx)];
    }
    if (sum != 1) return validation_failure("coefficients do not sum to 1");
    if (!exactly_equal(x, w.z))
      return validation_failure("part combination differs from z");
  }
  if (covered != points.size())
    return validation_failure("parts do not cover the point set");
  return {};
}

/// Checks the d = 1 witness against the skeleton and values only.
inline ValidationResult validate_d1_witness(const SkeletonGraph& g,
                                            const std::vector<Rational>& values,
                                            int r, const D1Witness& w) {
  if (static_cast<int>(w.edges.size()) != r - 1)
    return validation_failure("wrong number of edges");
  std::uint64_t seen = std::uint64_t{1} << w.final_vertex;
  if (w.common_value != values.at(static_cast<std::size_t>(w.final_vertex)))
    return validation_failure("common value differs from the final vertex value");
  std::set<std::pair<int, int>> edge_set(g.edges.begin(), g.edges.end());
  for (const auto& [u, v] : w.edges) {
    const auto key = std::minmax(u, v);
    if (!edge_set.count({key.first, key.second}))
      return validation_failure("listed pair is not an edge of the skeleton");
    const std::uint64_t m =
        (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
    if (m & seen) return validation_failure("faces are not vertex-disjoint");
    seen |= m;
    const Rational lo = std::min(values[static_cast<std::size_t>(u)],
                                 values[static_cast<std::size_t>(v)]);
    const Rational hi = std::max(values[static_cast<std::size_t>(u)],
                                 values[static_cast<std::size_t>(v)]);
    if (w.common_value < lo || w.common_value > hi)
      return validation_failure("common value outside an edge interval");
  }
  return {};
}

}  // namespace tvg
