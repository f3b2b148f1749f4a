#pragma once

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvg/complex.hpp"
#include "tvg/packing.hpp"
#include "tvg/witness.hpp"

namespace tvg {

// Rationals serialize as canonical "p/q" strings in every JSON artifact.

inline nlohmann::json qvector_to_json(const QVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
  return a;
}

inline QVector qvector_from_json(const nlohmann::json& j) {
  QVector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& s : j) v(i++) = rational_from_string(s.get<std::string>());
  return v;
}

inline nlohmann::json rationals_to_json(const std::vector<Rational>& xs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

inline std::vector<Rational> rationals_from_json(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(rational_from_string(s.get<std::string>()));
  return out;
}

// --------------------------------------------------------------------------
// Polytope: {dim, facets, vertices}
// --------------------------------------------------------------------------

inline nlohmann::json polytope_to_json(const Polytope& p) {
  nlohmann::json vertices = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.vertex_count(); ++i)
    vertices.push_back(qvector_to_json(p.vertex(i)));
  return nlohmann::json{
      {"dim", p.dim}, {"vertices", vertices}, {"facets", p.facets}};
}

inline Polytope polytope_from_json(const nlohmann::json& j, bool validate = true) {
  Polytope p;
  p.dim = j.at("dim").get<int>();
  const auto& vs = j.at("vertices");
  if (vs.empty()) throw std::invalid_argument("polytope JSON: no vertices");
  const Eigen::Index n = static_cast<Eigen::Index>(vs.size());
  const QVector first = qvector_from_json(vs.at(0));
  p.vertices.resize(n, first.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const QVector v = qvector_from_json(vs.at(static_cast<std::size_t>(i)));
    if (v.size() != first.size())
      throw std::invalid_argument("polytope JSON: inconsistent vertex dimensions");
    p.vertices.row(i) = v.transpose();
  }
  p.facets = j.at("facets").get<std::vector<std::vector<int>>>();
  for (auto& f : p.facets) {
    std::sort(f.begin(), f.end());
    for (int v : f)
      if (v < 0 || v >= n)
        throw std::invalid_argument("polytope JSON: facet index out of range");
  }
  if (validate) validate_polytope(p);
  return p;
}

// --------------------------------------------------------------------------
// LinearMap: {ambient, d, matrix, offset}
// --------------------------------------------------------------------------

inline nlohmann::json linear_map_to_json(const LinearMap& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < f.matrix.rows(); ++i)
    rows.push_back(qvector_to_json(f.matrix.row(i).transpose()));
  return nlohmann::json{{"ambient", f.input_dim()},
                        {"d", f.output_dim()},
                        {"matrix", rows},
                        {"offset", qvector_to_json(f.offset)}};
}

inline LinearMap linear_map_from_json(const nlohmann::json& j) {
  LinearMap f;
  const int d = j.at("d").get<int>();
  const int ambient = j.at("ambient").get<int>();
  f.matrix.resize(d, ambient);
  const auto& rows = j.at("matrix");
  if (static_cast<int>(rows.size()) != d)
    throw std::invalid_argument("linear map JSON: wrong row count");
  for (int i = 0; i < d; ++i) {
    const QVector row = qvector_from_json(rows.at(static_cast<std::size_t>(i)));
    if (row.size() != ambient)
      throw std::invalid_argument("linear map JSON: wrong row dimension");
    f.matrix.row(i) = row.transpose();
  }
  f.offset = qvector_from_json(j.at("offset"));
  if (f.offset.size() != d)
    throw std::invalid_argument("linear map JSON: wrong offset dimension");
  return f;
}

// --------------------------------------------------------------------------
// Witness: {coeffs, faces, z}
// --------------------------------------------------------------------------

inline nlohmann::json witness_to_json(const TverbergWitness& w) {
  nlohmann::json faces = nlohmann::json::array();
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t j = 0; j < w.faces.size(); ++j) {
    faces.push_back(w.faces[j].vertex_indices);
    coeffs.push_back(rationals_to_json(w.coeffs[j]));
  }
  return nlohmann::json{
      {"faces", faces}, {"z", qvector_to_json(w.z)}, {"coeffs", coeffs}};
}

inline TverbergWitness witness_from_json(const nlohmann::json& j, const Polytope& p) {
  TverbergWitness w;
  w.z = qvector_from_json(j.at("z"));
  const auto faces = j.at("faces").get<std::vector<std::vector<int>>>();
  for (const auto& verts : faces) {
    Face f;
    f.vertex_indices = verts;
    std::sort(f.vertex_indices.begin(), f.vertex_indices.end());
    f.mask = mask_of(f.vertex_indices);
    f.dim = detail::face_dim(p, f.vertex_indices);
    w.faces.push_back(std::move(f));
  }
  for (const auto& c : j.at("coeffs")) w.coeffs.push_back(rationals_from_json(c));
  return w;
}

// --------------------------------------------------------------------------
// Complexes add {sphere_vertices, simplices}
// --------------------------------------------------------------------------

inline nlohmann::json complex_to_json(const BoundaryComplex& c) {
  nlohmann::json verts = nlohmann::json::array();
  for (Eigen::Index i = 0; i < c.sphere_vertices.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < c.sphere_vertices.cols(); ++k)
      row.push_back(c.sphere_vertices(i, k));
    verts.push_back(row);
  }
  return nlohmann::json{{"dim", c.ambient_dim},
                        {"sphere_vertices", verts},
                        {"simplices", c.simplices}};
}

inline nlohmann::json packing_to_json(const PackingSpec& x) {
  nlohmann::json pts = nlohmann::json::array();
  for (Eigen::Index i = 0; i < x.points.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < x.points.cols(); ++k) row.push_back(x.points(i, k));
    pts.push_back(row);
  }
  return nlohmann::json{{"ambient_dim", x.ambient_dim},
                        {"lambda", x.lambda},
                        {"seed", x.seed},
                        {"pool_size", x.pool_size},
                        {"points", pts}};
}

inline PackingSpec packing_from_json(const nlohmann::json& j) {
  PackingSpec x;
  x.ambient_dim = j.at("ambient_dim").get<int>();
  x.lambda = j.at("lambda").get<double>();
  x.seed = j.at("seed").get<std::uint64_t>();
  x.pool_size = j.at("pool_size").get<int>();
  const auto& pts = j.at("points");
  x.points.resize(static_cast<Eigen::Index>(pts.size()), x.ambient_dim);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int k = 0; k < x.ambient_dim; ++k)
      x.points(static_cast<Eigen::Index>(i), k) = pts.at(i).at(static_cast<std::size_t>(k)).get<double>();
  return x;
}

// --------------------------------------------------------------------------
// Files
// --------------------------------------------------------------------------

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace tvg
