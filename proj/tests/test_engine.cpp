#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "tvg/engine.hpp"
#include "tvg/rng.hpp"

using namespace tvg;
using tvgtest::qm;
using tvgtest::qv;

namespace {

LinearMap seeded_map(int d, int ambient, std::uint64_t seed, int denom_bound = 1000) {
  Rng rng(seed);
  LinearMap f;
  f.matrix = QMatrix::Zero(d, ambient);
  f.offset = QVector::Zero(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < ambient; ++j)
      f.matrix(i, j) = Rational(rng.uniform_int(-denom_bound, denom_bound),
                                rng.uniform_int(1, denom_bound));
    f.offset(i) = Rational(rng.uniform_int(-denom_bound, denom_bound),
                           rng.uniform_int(1, denom_bound));
  }
  return f;
}

std::vector<std::vector<int>> face_sets(const TverbergWitness& w) {
  std::vector<std::vector<int>> out;
  for (const auto& f : w.faces) out.push_back(f.vertex_indices);
  return out;
}

}  // namespace

TEST_CASE("primes and the short-interval gap") {
  CHECK(next_prime_in_gap(10) == 11);
  CHECK(next_prime_in_gap(24) == 29);
  CHECK(29.0 < 24.0 + std::pow(24.0, 7.0 / 11.0) + 1.0);
  for (int r : {2, 3, 5, 7, 11, 13})
    CHECK(next_prime_in_gap(r) == r);
  for (int r = 2; r <= 200; ++r) {
    const int p = next_prime_in_gap(r);  // throws if the bound ever fails
    CHECK(p >= r);
    CHECK(is_prime(p));
  }
}

TEST_CASE("cross_bound evaluates the exact formula") {
  CHECK(cross_bound(4, 3) == Rational(1, 6));
  CHECK(cross_bound(2, 2) == Rational(1, 4));
  CHECK(cross_bound(1, 3) == Rational(1, 6));
  CHECK(cross_bound(1, 5) == Rational(1, 120));
  CHECK(ceil_rational(Rational(1, 6)) == 1);
  CHECK(ceil_rational(Rational(7, 3)) == 3);
  CHECK(ceil_rational(Rational(2)) == 2);
}

TEST_CASE("tverberg_partition: hexagon plus center, r = 3") {
  std::vector<QVector> pts;
  // regular hexagon scaled to rational coordinates plus its center: use
  // (2,0),(1,2),(-1,2),(-2,0),(-1,-2),(1,-2) and (0,0); symmetric about 0
  pts.push_back(qv({2, 0}));
  pts.push_back(qv({1, 2}));
  pts.push_back(qv({-1, 2}));
  pts.push_back(qv({-2, 0}));
  pts.push_back(qv({-1, -2}));
  pts.push_back(qv({1, -2}));
  pts.push_back(qv({0, 0}));
  const auto w = tverberg_partition(pts, 3);
  REQUIRE(w.has_value());
  CHECK(validate_partition_witness(pts, 3, *w).ok);
  CHECK(w->z(0) == 0);
  CHECK(w->z(1) == 0);
}

TEST_CASE("tverberg_partition: square corners, r = 2 (Radon)") {
  const std::vector<QVector> pts = {qv({0, 0}), qv({1, 0}), qv({1, 1}), qv({0, 1})};
  const auto w = tverberg_partition(pts, 2);
  REQUIRE(w.has_value());
  CHECK(validate_partition_witness(pts, 2, *w).ok);
  CHECK(w->z(0) == Rational(1, 2));
  CHECK(w->z(1) == Rational(1, 2));
  // diagonal pairs
  std::set<std::vector<int>> parts(w->parts.begin(), w->parts.end());
  CHECK(parts == std::set<std::vector<int>>{{0, 2}, {1, 3}});
}

TEST_CASE("tverberg_partition errors") {
  CHECK_THROWS_AS(tverberg_partition({}, 2), std::invalid_argument);
  CHECK_THROWS_AS(tverberg_partition({qv({0, 0})}, 2), std::invalid_argument);
}

TEST_CASE("colorful_tverberg on the three-point line") {
  ColoredConfig cfg;
  cfg.points = {qv({0}), qv({1}), qv({2})};

  // colors a,b,a: the only partition with meeting hulls is non-rainbow
  cfg.colors = {0, 1, 0};
  const auto r1 = colorful_tverberg(cfg, 2);
  CHECK(!r1.witness.has_value());

  // all colors distinct: {0,2},{1} is rainbow and the hulls meet at 1
  cfg.colors = {0, 1, 2};
  const auto r2 = colorful_tverberg(cfg, 2);
  REQUIRE(r2.witness.has_value());
  CHECK(validate_partition_witness(cfg.points, 2, *r2.witness).ok);
  CHECK(r2.witness->z(0) == 1);

  // non-prime p warns but the search still runs
  ColoredConfig four;
  four.points = {qv({0}), qv({1}), qv({2}), qv({3}), qv({4})};
  four.colors = {0, 1, 2, 3, 4};
  const auto r3 = colorful_tverberg(four, 4);
  CHECK(r3.warnings.size() == 1);
}

TEST_CASE("colorful with all-distinct colors agrees with tverberg_partition") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(stream_seed(404, "colorful", seed));
    std::vector<QVector> pts;
    for (int i = 0; i < 5; ++i)
      pts.push_back(qv({Rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 7)),
                        Rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 7))}));
    ColoredConfig cfg;
    cfg.points = pts;
    cfg.colors = {0, 1, 2, 3, 4};
    const auto plain = tverberg_partition(pts, 2);
    const auto rainbow = colorful_tverberg(cfg, 2);
    REQUIRE(plain.has_value() == rainbow.witness.has_value());
    if (plain) CHECK(plain->parts == rainbow.witness->parts);
  }
}

TEST_CASE("caratheodory_reduce") {
  // four collinear points in R^1, z their centroid: support shrinks to 2
  const std::vector<QVector> line = {qv({0}), qv({1}), qv({2}), qv({3})};
  const std::vector<Rational> quarter(4, Rational(1, 4));
  const auto r = caratheodory_reduce(line, qv({Rational(3, 2)}), quarter);
  CHECK(r.support.size() <= 2);
  Rational sum = 0, combo = 0;
  for (std::size_t i = 0; i < r.support.size(); ++i) {
    CHECK(r.coeffs[i] > 0);
    sum += r.coeffs[i];
    combo += r.coeffs[i] * line[static_cast<std::size_t>(r.support[i])](0);
  }
  CHECK(sum == 1);
  CHECK(combo == Rational(3, 2));

  // support already small: identity
  const std::vector<QVector> two = {qv({0, 0}), qv({1, 1})};
  const auto id = caratheodory_reduce(two, qv({Rational(1, 2), Rational(1, 2)}),
                                      {Rational(1, 2), Rational(1, 2)});
  CHECK(id.support == std::vector<int>{0, 1});

  // five points in R^2 averaging to the square center reduce to <= 3
  const std::vector<QVector> five = {qv({0, 0}), qv({1, 0}), qv({1, 1}),
                                     qv({0, 1}), qv({Rational(1, 2), Rational(1, 2)})};
  const std::vector<Rational> fifth(5, Rational(1, 5));
  const auto sq = caratheodory_reduce(five, qv({Rational(1, 2), Rational(1, 2)}), fifth);
  CHECK(sq.support.size() <= 3);
  QVector z = QVector::Zero(2);
  Rational s2 = 0;
  for (std::size_t i = 0; i < sq.support.size(); ++i) {
    z += sq.coeffs[i] * five[static_cast<std::size_t>(sq.support[i])];
    s2 += sq.coeffs[i];
  }
  CHECK(s2 == 1);
  CHECK(z(0) == Rational(1, 2));
  CHECK(z(1) == Rational(1, 2));

  // mismatched certificate is rejected
  CHECK_THROWS_AS(caratheodory_reduce(line, qv({Rational(5)}), quarter),
                  std::invalid_argument);
}

TEST_CASE("polytope_tverberg_search: octahedron with a forbidden vertex") {
  const Polytope oct = make_cross(3);
  LinearMap f;
  f.matrix = qm({{1, 0, 0}});
  f.offset = qv({0});
  SearchParams params{3, 1, 4};  // forbid +e_3 (vertex 4)
  const auto res = polytope_tverberg_search(oct, f, params, SearchMode::first);
  REQUIRE(!res.witnesses.empty());
  CHECK(validate_witness(oct, f, res.witnesses[0], 4).ok);
}

TEST_CASE("polytope_tverberg_search: simplex guarantee at the exact vertex count") {
  // n = (r-1)(d+1)+1 vertices: a witness must exist for every linear map
  for (int r : {2, 3})
    for (int d : {1, 2}) {
      const int m = (r - 1) * (d + 1);  // simplex with m+1 vertices
      const Polytope simplex = make_simplex(m);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const LinearMap f = seeded_map(
            d, m, stream_seed(77, "simplex", seed * 100 + static_cast<std::uint64_t>(10 * r + d)),
            50);
        const auto res = polytope_tverberg_search(
            simplex, f, SearchParams{r, d, {}});
        REQUIRE(!res.witnesses.empty());
        CHECK(validate_witness(simplex, f, res.witnesses[0]).ok);
      }
    }
}

TEST_CASE("polytope_tverberg_search: injective map on a segment finds nothing") {
  const Polytope seg = make_simplex(1);
  LinearMap f;
  f.matrix = qm({{1}});
  f.offset = qv({0});
  const auto res = polytope_tverberg_search(seg, f, SearchParams{2, 1, {}});
  CHECK(res.witnesses.empty());
  CHECK(res.diagnostic.find("intersecting") != std::string::npos);

  const auto res3 = polytope_tverberg_search(seg, f, SearchParams{3, 1, {}});
  CHECK(res3.witnesses.empty());
  CHECK(res3.diagnostic.find("exceeds") != std::string::npos);
}

TEST_CASE("count_cross_witnesses meets the bound on the octahedron") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMap f = seeded_map(1, 3, stream_seed(99, "count", seed));
    for (int forbidden = 0; forbidden < 6; ++forbidden) {
      const auto res = count_cross_witnesses(3, 1, 3, f, forbidden);
      CHECK(res.bound == Rational(1, 6));
      CHECK(res.threshold == 1);
      CHECK(res.count >= 1);
      CHECK(res.pass);
      CHECK(res.warnings.empty());
    }
  }
}

TEST_CASE("count agrees with the all-mode search (interval path vs LP path)") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const LinearMap f = seeded_map(1, 3, stream_seed(123, "agree", seed), 60);
    for (int forbidden : {0, 3, 5}) {
      const auto count = count_cross_witnesses(3, 1, 3, f, forbidden);
      const auto all = polytope_tverberg_search(make_cross(3), f,
                                                SearchParams{3, 1, forbidden},
                                                SearchMode::all);
      CHECK(count.count == static_cast<long long>(all.witnesses.size()));
      for (const auto& w : all.witnesses)
        CHECK(validate_witness(make_cross(3), f, w, forbidden).ok);
    }
  }
}

TEST_CASE("relative-interior common points pin the minimal-face semantics") {
  using tvgtest::qv;
  // B's hull contains A's point only on its boundary: no relint witness
  const std::vector<std::vector<QVector>> boundary = {{qv({0})}, {qv({0}), qv({1})}};
  CHECK(conv_intersection_point(boundary, 1).has_value());
  CHECK(!detail::relint_common_point(boundary, 1).has_value());

  // open overlap (1, 2): relint witness with all coefficients positive
  const std::vector<std::vector<QVector>> open_overlap = {{qv({0}), qv({2})},
                                                          {qv({1}), qv({3})}};
  const auto w = detail::relint_common_point(open_overlap, 1);
  REQUIRE(w.has_value());
  CHECK(w->t > 0);
  for (const auto& set_coeffs : w->coeffs)
    for (const auto& c : set_coeffs) CHECK(c >= w->t);
  CHECK(w->z(0) > 1);
  CHECK(w->z(0) < 2);

  // the interval shortcut agrees on both cases
  CHECK(!detail::relint_intervals_nonempty({{0, 0}, {0, 1}}));
  CHECK(detail::relint_intervals_nonempty({{0, 2}, {1, 3}}));
  CHECK(detail::relint_intervals_nonempty({{1, 1}, {0, 2}}));
  CHECK(!detail::relint_intervals_nonempty({{1, 1}, {2, 2}}));
  CHECK(detail::relint_intervals_nonempty({{1, 1}, {1, 1}}));
  CHECK(!detail::relint_intervals_nonempty({{0, 1}, {1, 2}}));
}

TEST_CASE("count agrees with the all-mode search in dimension two") {
  const LinearMap f = seeded_map(2, 4, 9001, 60);
  const auto count = count_cross_witnesses(4, 2, 3, f, 7);
  const auto all = polytope_tverberg_search(make_cross(4), f, SearchParams{3, 2, 7},
                                            SearchMode::all);
  CHECK(count.count == static_cast<long long>(all.witnesses.size()));
}

TEST_CASE("count is invariant under consistent antipodal relabeling") {
  const int m = 3;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const LinearMap f = seeded_map(1, m, stream_seed(321, "relabel", seed), 40);
    Rng rng(stream_seed(321, "perm", seed));
    // random axis permutation and sign flips
    std::vector<int> perm = {0, 1, 2};
    for (int i = 2; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    std::vector<int> flip(m);
    for (int k = 0; k < m; ++k) flip[static_cast<std::size_t>(k)] = static_cast<int>(rng.uniform_int(0, 1));

    LinearMap g;
    g.matrix = QMatrix::Zero(1, m);
    g.offset = f.offset;
    for (int k = 0; k < m; ++k) {
      const Rational sign = flip[static_cast<std::size_t>(k)] ? -1 : 1;
      g.matrix(0, perm[static_cast<std::size_t>(k)]) = sign * f.matrix(0, k);
    }
    const int forbidden = 1;  // vertex (axis 0, sign -)
    const int axis = 0, s = 1;
    const int forbidden_mapped =
        2 * perm[static_cast<std::size_t>(axis)] + (s ^ flip[static_cast<std::size_t>(axis)]);
    const auto c1 = count_cross_witnesses(m, 1, 3, f, forbidden);
    const auto c2 = count_cross_witnesses(m, 1, 3, g, forbidden_mapped);
    CHECK(c1.count == c2.count);
  }
}

TEST_CASE("count matches a hand enumeration on the octahedron projection") {
  // f = projection to the first axis. Vertex images: +e1 -> 1, -e1 -> -1,
  // +-e2 -> 0, +-e3 -> 0. Any witness triple needs a common value in every
  // face's open image interval; mixed edges give (0,1) or (-1,0) and share
  // +e1 or -e1, so the only canonical witness avoiding +e3 (vertex 4) is the
  // three zero-valued singletons {-e2}, {+e2 or -e3 variants}.
  LinearMap f;
  f.matrix = tvgtest::qm({{1, 0, 0}});
  f.offset = tvgtest::qv({0});

  const auto res4 = count_cross_witnesses(3, 1, 3, f, 4);
  CHECK(res4.count == 1);
  const auto all4 = polytope_tverberg_search(make_cross(3), f, SearchParams{3, 1, 4},
                                             SearchMode::all);
  REQUIRE(all4.witnesses.size() == 1);
  CHECK(face_sets(all4.witnesses[0]) ==
        std::vector<std::vector<int>>{{2}, {3}, {5}});

  // forbidding +e2 (vertex 2) instead leaves {-e2}, {+e3}, {-e3}
  const auto res2 = count_cross_witnesses(3, 1, 3, f, 2);
  CHECK(res2.count == 1);
  const auto all2 = polytope_tverberg_search(make_cross(3), f, SearchParams{3, 1, 2},
                                             SearchMode::all);
  REQUIRE(all2.witnesses.size() == 1);
  CHECK(face_sets(all2.witnesses[0]) ==
        std::vector<std::vector<int>>{{3}, {4}, {5}});
}

TEST_CASE("count_cross_witnesses reports hypothesis violations but still counts") {
  const LinearMap f = seeded_map(1, 3, 5);
  const auto res = count_cross_witnesses(3, 1, 4, f, 0);  // r = 4 not prime
  CHECK(!res.warnings.empty());
}

TEST_CASE("cross_via_colorful r=3 d=1 agrees with the exact validator and search") {
  const Polytope cross4 = make_cross(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMap f = seeded_map(1, 4, stream_seed(2718, "colorful-cross", seed));
    const TverbergWitness w = cross_via_colorful(4, 1, 3, f);
    CHECK(validate_witness(cross4, f, w).ok);
    for (const auto& face : w.faces)
      for (std::size_t a = 0; a < face.vertex_indices.size(); ++a)
        for (std::size_t b = a + 1; b < face.vertex_indices.size(); ++b)
          CHECK(face.vertex_indices[a] / 2 != face.vertex_indices[b] / 2);
    // the lifted witness is a canonical tuple, so the all-mode search lists it
    const auto all = polytope_tverberg_search(cross4, f, SearchParams{3, 1, {}},
                                              SearchMode::all);
    std::set<std::vector<std::vector<int>>> tuples;
    for (const auto& aw : all.witnesses) tuples.insert(face_sets(aw));
    CHECK(tuples.count(face_sets(w)) == 1);
  }
}

TEST_CASE("cross_via_colorful picks the Bertrand prime window") {
  // r=4: primes in [4,5] -> p=5, nine vertices selected; smoke-check validity
  const LinearMap f = seeded_map(1, 6, 42);
  const TverbergWitness w = cross_via_colorful(6, 1, 4, f);
  CHECK(w.faces.size() == 4);
  CHECK(validate_witness(make_cross(6), f, w).ok);
}

TEST_CASE("neighborly_construct on C(4,7), d=1, r=3") {
  const Polytope c47 = make_cyclic(4, 7);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMap f = seeded_map(1, 4, stream_seed(99, "neighborly", seed));
    const TverbergWitness w = neighborly_construct(c47, f, 3);
    CHECK(validate_witness(c47, f, w).ok);
    for (const auto& face : w.faces) CHECK(face.vertex_indices.size() <= 2);
    // witness tuple appears among the canonical all-mode witnesses
    const auto all = polytope_tverberg_search(c47, f, SearchParams{3, 1, {}},
                                              SearchMode::all);
    std::set<std::vector<std::vector<int>>> tuples;
    for (const auto& aw : all.witnesses) tuples.insert(face_sets(aw));
    CHECK(tuples.count(face_sets(w)) == 1);
  }
  // hypothesis check precedes any search
  CHECK_THROWS_AS(neighborly_construct(make_cross(3), seeded_map(1, 3, 1), 3),
                  std::invalid_argument);
}

TEST_CASE("partition witnesses canonicalize into the simplex search results") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(stream_seed(864, "pts", seed));
    std::vector<QVector> pts;
    for (int i = 0; i < 7; ++i)
      pts.push_back(qv({Rational(rng.uniform_int(-50, 50), rng.uniform_int(1, 20)),
                        Rational(rng.uniform_int(-50, 50), rng.uniform_int(1, 20))}));
    const auto part = tverberg_partition(pts, 3);
    REQUIRE(part.has_value());

    // simplex whose vertex images are exactly these points
    const Polytope simplex = make_simplex(6);
    LinearMap f;
    f.matrix = QMatrix::Zero(2, 6);
    f.offset = pts[0];
    for (int j = 1; j <= 6; ++j)
      f.matrix.col(j - 1) = pts[static_cast<std::size_t>(j)] - pts[0];

    std::vector<std::vector<int>> supports;
    for (std::size_t j = 0; j < part->parts.size(); ++j) {
      std::vector<int> sup;
      for (std::size_t i = 0; i < part->parts[j].size(); ++i)
        if (part->coeffs[j][i] > 0) sup.push_back(part->parts[j][i]);
      std::sort(sup.begin(), sup.end());
      supports.push_back(std::move(sup));
    }
    std::sort(supports.begin(), supports.end());

    const auto all = polytope_tverberg_search(simplex, f, SearchParams{3, 2, {}},
                                              SearchMode::all);
    std::set<std::vector<std::vector<int>>> tuples;
    for (const auto& aw : all.witnesses) {
      auto t = face_sets(aw);
      std::sort(t.begin(), t.end());
      tuples.insert(t);
    }
    CHECK(tuples.count(supports) == 1);
  }
}

TEST_CASE("triangle_free_d1 reproduces the worked 3-cube example") {
  const Polytope cube = make_cube(3);
  std::vector<Rational> values;
  for (int k = 0; k < 8; ++k)
    values.emplace_back(((k >> 0) & 1) + ((k >> 1) & 1) + ((k >> 2) & 1));
  const D1Witness w = triangle_free_d1(cube, values, 3);
  CHECK(validate_d1_witness(skeleton(cube), values, 3, w).ok);
  // sorted order: 000, 100, 010, 001, 110, ...; e1 = 000-001, e2 = 100-110, v3 = 010
  REQUIRE(w.edges.size() == 2);
  CHECK(w.edges[0] == std::pair<int, int>{0, 4});
  CHECK(w.edges[1] == std::pair<int, int>{1, 3});
  CHECK(w.final_vertex == 2);
  CHECK(w.common_value == 1);
}

TEST_CASE("triangle_free_d1: r = 1 and random 4-cube values") {
  const Polytope cube = make_cube(3);
  std::vector<Rational> values;
  for (int k = 0; k < 8; ++k) values.emplace_back(k);
  const D1Witness w1 = triangle_free_d1(cube, values, 1);
  CHECK(w1.edges.empty());
  CHECK(w1.final_vertex == 0);

  const Polytope cube4 = make_cube(4);
  const SkeletonGraph g = skeleton(cube4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(stream_seed(515, "d1", seed));
    std::vector<Rational> vals;
    for (int i = 0; i < 16; ++i)
      vals.emplace_back(Rational(rng.uniform_int(-1000, 1000), rng.uniform_int(1, 1000)));
    const D1Witness w = triangle_free_d1(g, vals, 4);
    CHECK(validate_d1_witness(g, vals, 4, w).ok);
  }
}

TEST_CASE("triangle_free_d1 rejects bad inputs") {
  const Polytope oct = make_cross(3);
  std::vector<Rational> vals(6, Rational(0));
  CHECK_THROWS_AS(triangle_free_d1(oct, vals, 2), std::invalid_argument);

  const Polytope cube = make_cube(3);
  std::vector<Rational> cvals(8, Rational(0));
  CHECK_THROWS_AS(triangle_free_d1(cube, cvals, 4), std::invalid_argument);  // dim < r
}
