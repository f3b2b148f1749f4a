#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "tvg/polytope.hpp"

using namespace tvg;
using tvgtest::qm;

namespace {

std::set<std::vector<int>> as_set(const std::vector<std::vector<int>>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("standard families have the textbook counts") {
  const Polytope simplex = make_simplex(2);
  CHECK(simplex.vertex_count() == 3);
  CHECK(simplex.facets.size() == 3);

  const Polytope cross = make_cross(3);
  CHECK(cross.vertex_count() == 6);
  CHECK(cross.facets.size() == 8);
  for (const auto& f : cross.facets) {
    CHECK(f.size() == 3);
    for (int k = 0; k < 3; ++k) {
      const bool plus = std::binary_search(f.begin(), f.end(), 2 * k);
      const bool minus = std::binary_search(f.begin(), f.end(), 2 * k + 1);
      CHECK(plus != minus);  // one of each antipodal pair
    }
  }

  const Polytope cube = make_cube(3);
  CHECK(cube.vertex_count() == 8);
  CHECK(cube.facets.size() == 6);
  const SkeletonGraph g = skeleton(cube);
  CHECK(g.edges.size() == 12);
  CHECK(is_triangle_free(g));

  CHECK_THROWS_AS(make_simplex(0), std::invalid_argument);
  CHECK_THROWS_AS(make_cross(0), std::invalid_argument);
  CHECK_THROWS_AS(make_cube(0), std::invalid_argument);
}

TEST_CASE("families pass exact structural validation") {
  validate_polytope(make_simplex(3));
  validate_polytope(make_cross(3));
  validate_polytope(make_cube(3));
  validate_polytope(make_cyclic(4, 7));
}

TEST_CASE("gale evenness on the pentagon") {
  const auto facets = gale_evenness_facets(5, 2);
  CHECK(as_set(facets) ==
        as_set({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));
}

TEST_CASE("gale evenness spot checks for C(4,7)") {
  const auto facets = as_set(gale_evenness_facets(7, 4));
  CHECK(facets.count({0, 1, 2, 3}) == 1);   // {1,2,3,4} in 1-based terms
  CHECK(facets.count({0, 1, 3, 5}) == 0);   // {1,2,4,6}: 3 and 5 see one element between
  CHECK(facets.size() == 14);
}

TEST_CASE("make_cyclic matches the brute-force facet oracle") {
  const Polytope c47 = make_cyclic(4, 7);
  CHECK(c47.vertex_count() == 7);
  CHECK(c47.facets.size() == 14);
  CHECK(as_set(c47.facets) == as_set(facets_bruteforce(c47.vertices)));

  const Polytope pentagon = make_cyclic(2, 5);
  CHECK(as_set(pentagon.facets) ==
        as_set({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));

  CHECK_THROWS_AS(make_cyclic(4, 7, {1, 2, 2, 3, 4, 5, 6}), std::invalid_argument);
  CHECK_THROWS_AS(make_cyclic(4, 4), std::invalid_argument);
}

TEST_CASE("facets_bruteforce on square and octahedron") {
  const QMatrix square = qm({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(facets_bruteforce(square).size() == 4);
  CHECK(facets_bruteforce(make_cross(3).vertices).size() == 8);

  // not full-dimensional: three collinear points in R^2
  const QMatrix line = qm({{0, 0}, {1, 1}, {2, 2}});
  CHECK_THROWS_WITH_AS(facets_bruteforce(line),
                       doctest::Contains("affine rank 1"),
                       std::invalid_argument);
}

TEST_CASE("face enumeration counts") {
  const Polytope oct = make_cross(3);
  CHECK(faces_of_dim(oct, 1).size() == 12);

  const Polytope c47 = make_cyclic(4, 7);
  CHECK(faces_of_dim(c47, 1).size() == 21);  // 2-neighborly: all pairs are edges

  CHECK(all_proper_faces(make_cube(3)).size() == 8 + 12 + 6);
}

TEST_CASE("face lattice is closed under intersection") {
  for (const Polytope& p :
       {make_cube(3), make_cross(3), make_simplex(3), make_cyclic(4, 7)}) {
    const auto faces = face_lattice(p);
    std::set<std::uint64_t> masks;
    for (const auto& f : faces) masks.insert(f.mask);
    for (const auto& a : faces)
      for (const auto& b : faces) {
        const std::uint64_t meet = a.mask & b.mask;
        if (meet != 0) CHECK(masks.count(meet) == 1);
      }
  }
}

TEST_CASE("neighborliness") {
  CHECK(is_k_neighborly(make_cyclic(4, 7), 2));
  CHECK(!is_k_neighborly(make_cross(3), 2));  // antipodal pair is not a face
  for (int k = 1; k <= 3; ++k) CHECK(is_k_neighborly(make_simplex(3), k));

  Warnings w;
  is_k_neighborly(make_cyclic(4, 7), 3, &w);
  CHECK(w.size() == 1);  // k beyond dim/2 warns

  // cyclic polytopes are floor(m/2)-neighborly across the desk corpus
  for (int m = 2; m <= 5; ++m)
    for (int n = m + 1; n <= 9; ++n)
      CHECK(is_k_neighborly(make_cyclic(m, n), m / 2));
}

TEST_CASE("skeleton, degrees, triangles") {
  const Polytope cube4 = make_cube(4);
  const SkeletonGraph g4 = skeleton(cube4);
  CHECK(min_degree(g4) == 4);
  CHECK(is_triangle_free(g4));
  CHECK(!is_triangle_free(skeleton(make_cross(3))));

  // Balinski consequence on a small corpus
  for (const Polytope& p :
       {make_simplex(4), make_cross(4), make_cube(4), make_cyclic(4, 7)})
    CHECK(min_degree(skeleton(p)) >= p.dim);
}

TEST_CASE("minimal_face identifies supports") {
  const Polytope oct = make_cross(3);
  const auto mf = minimal_face(oct, {0, 2});
  REQUIRE(mf.has_value());
  CHECK(*mf == std::vector<int>{0, 2});
  CHECK(!minimal_face(oct, {0, 1}).has_value());  // antipodal pair: no facet holds both

  const Polytope cube = make_cube(3);
  const auto edge = minimal_face(cube, {0, 1});
  REQUIRE(edge.has_value());
  CHECK(*edge == std::vector<int>{0, 1});
}

TEST_CASE("facet_hyperplane rejects broken facets") {
  Polytope p = make_cube(3);
  p.facets[0] = {0, 1, 2};  // not a supporting set of the cube
  CHECK_THROWS(facet_hyperplane(p, 0));
}
