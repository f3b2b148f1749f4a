#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tvg/engine.hpp"
#include "tvg/experiment.hpp"
#include "tvg/io.hpp"

using namespace tvg;
using tvgtest::qm;
using tvgtest::qv;

TEST_CASE("polytope JSON round trip preserves structure exactly") {
  for (const Polytope& p : {make_cyclic(4, 7), make_cross(3), make_cube(3)}) {
    const Polytope q = polytope_from_json(polytope_to_json(p));
    CHECK(q.dim == p.dim);
    CHECK(exactly_equal(q.vertices, p.vertices));
    CHECK(q.facets == p.facets);
  }
}

TEST_CASE("polytope JSON validation rejects broken inputs") {
  nlohmann::json j = polytope_to_json(make_cube(3));
  j["facets"][0] = {0, 1, 2};  // not a supporting set
  CHECK_THROWS(polytope_from_json(j));

  nlohmann::json bad_dim = polytope_to_json(make_cube(3));
  bad_dim["dim"] = 2;
  CHECK_THROWS(polytope_from_json(bad_dim));

  nlohmann::json extra = polytope_to_json(make_cube(3));
  extra["vertices"].push_back(
      nlohmann::json::array({"1/2", "1/2", "1/2"}));  // interior point
  CHECK_THROWS(polytope_from_json(extra));
}

TEST_CASE("linear map JSON round trip") {
  LinearMap f;
  f.matrix = qm({{Rational(1, 3), Rational(-2, 7)}, {Rational(5), Rational(0)}});
  f.offset = qv({Rational(-1, 2), Rational(3)});
  const LinearMap g = linear_map_from_json(linear_map_to_json(f));
  CHECK(exactly_equal(g.matrix, f.matrix));
  CHECK(exactly_equal(g.offset, f.offset));
}

TEST_CASE("witness JSON round trip re-validates offline") {
  const Polytope oct = make_cross(3);
  LinearMap f;
  f.matrix = qm({{1, 0, 0}});
  f.offset = qv({0});
  const auto res = polytope_tverberg_search(oct, f, SearchParams{3, 1, 4});
  REQUIRE(!res.witnesses.empty());
  const nlohmann::json j = witness_to_json(res.witnesses[0]);
  const TverbergWitness w = witness_from_json(j, oct);
  CHECK(validate_witness(oct, f, w, 4).ok);
  // the JSON carries the spec keys
  CHECK(j.contains("faces"));
  CHECK(j.contains("z"));
  CHECK(j.contains("coeffs"));
}

TEST_CASE("packing JSON round trip") {
  const PackingSpec x = greedy_lambda_packing(3, 0.4, 5, 500);
  const PackingSpec y = packing_from_json(packing_to_json(x));
  CHECK(y.ambient_dim == x.ambient_dim);
  CHECK(y.lambda == x.lambda);
  CHECK(y.seed == x.seed);
  CHECK((y.points - x.points).norm() == 0.0);
}

TEST_CASE("rational vectors reject malformed JSON") {
  CHECK_THROWS(qvector_from_json(nlohmann::json::array({"1/0"})));
  CHECK_THROWS(qvector_from_json(nlohmann::json::array({"x"})));
}

TEST_CASE("seeded_rational_map determinism and golden values") {
  const auto a = seeded_rational_map(1, 3, 42);
  const auto b = seeded_rational_map(1, 3, 42);
  CHECK(exactly_equal(a.map.matrix, b.map.matrix));
  CHECK(exactly_equal(a.map.offset, b.map.offset));

  // pinned generator output for seed 42 (d = 1, ambient = 3)
  CHECK(to_string(a.map.matrix(0, 0)) == "-290/239");
  CHECK(to_string(a.map.matrix(0, 1)) == "954/853");
  CHECK(to_string(a.map.matrix(0, 2)) == "-306/305");
  CHECK(to_string(a.map.offset(0)) == "-198/841");
  CHECK(a.reseeds == 0);
}

TEST_CASE("seeded_rational_map rejects degenerate images deterministically") {
  // a single-column vertex matrix with distinct entries: degenerate iff the
  // 1x1 matrix entry is zero, which cannot survive the rank filter
  QMatrix verts = qm({{0}, {1}, {2}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = seeded_rational_map(1, 1, seed, 3, &verts);
    CHECK(g.map.matrix(0, 0) != 0);
  }
}
