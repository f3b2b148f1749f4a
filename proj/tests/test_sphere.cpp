#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tvg/stiefel.hpp"

using namespace tvg;

namespace {

StiefelFrame frame_e12(int dim) {
  StiefelFrame f;
  f.x = Eigen::VectorXd::Zero(dim);
  f.y = Eigen::VectorXd::Zero(dim);
  f.x(0) = 1;
  f.y(1) = 1;
  return f;
}

double frame_dist(const StiefelFrame& a, const StiefelFrame& b) {
  return std::max((a.x - b.x).norm(), (a.y - b.y).norm());
}

}  // namespace

TEST_CASE("rotate_frame is the order-p planar rotation") {
  Rng rng(3);
  const StiefelFrame f = detail::random_frame(rng, 4);
  CHECK(frame_valid(f));
  CHECK(frame_dist(rotate_frame(f, 0.0), f) == 0.0);
  CHECK(frame_dist(rotate_frame(f, 2 * std::numbers::pi), f) < 1e-12);

  for (int p : {2, 3, 5, 7}) {
    StiefelFrame g = f;
    for (int k = 0; k < p; ++k) g = rotate_frame(g, 2 * std::numbers::pi / p);
    CHECK(frame_dist(g, f) < 1e-10);
  }
  CHECK(frame_valid(rotate_frame(f, 0.62), 1e-12));
}

TEST_CASE("orbit_points geometry") {
  const StiefelFrame f2 = frame_e12(3);
  const auto antipodal = orbit_points(f2, 2);
  CHECK((antipodal[0] + antipodal[1]).norm() < 1e-12);

  const auto quarters = orbit_points(frame_e12(3), 4);
  CHECK((quarters[0] - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);
  CHECK((quarters[1] - Eigen::Vector3d(0, 1, 0)).norm() < 1e-12);
  CHECK((quarters[2] - Eigen::Vector3d(-1, 0, 0)).norm() < 1e-12);
  CHECK((quarters[3] - Eigen::Vector3d(0, -1, 0)).norm() < 1e-12);

  Rng rng(9);
  const StiefelFrame f = detail::random_frame(rng, 5);
  const auto thirds = orbit_points(f, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      CHECK(geodesic_distance(thirds[i], thirds[j]) ==
            doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-12));
}

TEST_CASE("orbit points stay on the frame's great circle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = stream_rng(314, "circle", seed);
    const StiefelFrame f = detail::random_frame(rng, 6);
    for (int p : {2, 3, 5})
      for (const auto& pt : orbit_points(f, p)) {
        const Eigen::VectorXd off_plane =
            pt - pt.dot(f.x) * f.x - pt.dot(f.y) * f.y;
        CHECK(off_plane.norm() < 1e-9);
        CHECK(std::abs(pt.norm() - 1.0) < 1e-12);
      }
  }
}

TEST_CASE("residual behavior") {
  const SmoothMap constant_map(3, {constant(2.5)});
  Rng rng(11);
  const StiefelFrame f = detail::random_frame(rng, 3);
  CHECK(residual(constant_map, f, 3).value == doctest::Approx(0.0).epsilon(1e-15));

  // p = 2 with f(x) = x_1: residual is sqrt(2) |x_1| of the first point
  const SmoothMap coord(3, {proj(0)});
  for (int trial = 0; trial < 5; ++trial) {
    Rng r2 = stream_rng(21, "res", static_cast<std::uint64_t>(trial));
    const StiefelFrame g = detail::random_frame(r2, 3);
    const double expected = std::sqrt(2.0) * std::abs(g.x(0));
    CHECK(residual(coord, g, 2).value == doctest::Approx(expected).epsilon(1e-12));
  }

  // coordinate projections vanishing on the frame's plane give zero
  const SmoothMap high(4, {proj(2), proj(3)});
  const StiefelFrame low = frame_e12(4);
  CHECK(residual(high, low, 3).value == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("residual is invariant under the orbit rotation") {
  const SmoothMap f = SmoothMap::random_trig(77, 4, 2);
  for (int p : {2, 3, 5}) {
    Rng rng = stream_rng(88, "equiv", static_cast<std::uint64_t>(p));
    const StiefelFrame frame = detail::random_frame(rng, 4);
    const double base = residual(f, frame, p).value;
    const double shifted =
        residual(f, rotate_frame(frame, 2 * std::numbers::pi / p), p).value;
    CHECK(std::abs(base - shifted) < 1e-10);
  }
}

TEST_CASE("mean-centering projection is idempotent") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + trial % 4, d = 1 + trial % 3;
    Eigen::VectorXd v(p * d);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.gaussian();
    const Eigen::VectorXd once = detail::mean_center_blocks(v, p, d);
    const Eigen::VectorXd twice = detail::mean_center_blocks(once, p, d);
    CHECK((once - twice).norm() < 1e-14);
  }
}

TEST_CASE("residual raises on non-finite values with the offending point") {
  // 1/x style blowup is outside the language; use an overflowing product
  std::vector<ExprNode> huge;
  ExprNode big = constant(1e308);
  huge.push_back(mul({big, big, proj(0)}));
  const SmoothMap f(3, std::move(huge));
  StiefelFrame frame = frame_e12(3);
  CHECK_THROWS_AS(residual(f, frame, 2), std::runtime_error);
}

TEST_CASE("gradient_check against finite differences") {
  // smooth trig-polynomial map
  const SmoothMap f = SmoothMap::random_trig(123, 4, 1);
  Rng rng(6);
  const StiefelFrame frame = detail::random_frame(rng, 4);
  CHECK(gradient_check(f, frame, 3, 1e-5) < 1e-5);

  // constant map: both derivative estimates vanish
  const SmoothMap c(4, {constant(3.0)});
  CHECK(gradient_check(c, frame, 3, 1e-5) < 1e-10);

  CHECK_THROWS_AS(gradient_check(f, frame, 3, 1e-2), std::invalid_argument);
}

TEST_CASE("solve_bu: coordinate map on S^2, p = 2") {
  const SmoothMap f(3, {proj(0)});
  const auto res = solve_bu(f, 2, 1, 2, 7, 1e-10, 20);
  REQUIRE(res.has_value());
  CHECK(res->residual < 1e-10);
  CHECK(std::abs(res->points[0](0)) < 1e-9);  // zero set is the x_1 = 0 circle
}

TEST_CASE("solve_bu: p = 3 trigonometric map on S^3") {
  const SmoothMap f = SmoothMap::random_trig(stream_seed(1, "bu-map", 0), 4, 1);
  const auto res = solve_bu(f, 3, 1, 3, 1, 1e-8, 50);
  REQUIRE(res.has_value());
  CHECK(res->residual < 1e-8);
  // equal values at all three points
  for (std::size_t k = 1; k < res->values.size(); ++k)
    CHECK(std::abs(res->values[k](0) - res->values[0](0)) < 1e-7);
}

TEST_CASE("solve_bu: weak antipodal instances for odd-plus-constant maps") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SmoothMap f =
        SmoothMap::random_odd_plus_constant(stream_seed(2, "odd", seed), 3);
    const auto res = solve_bu(f, 2, 1, 2, seed, 1e-8, 50);
    REQUIRE(res.has_value());
    CHECK((res->points[0] + res->points[1]).norm() < 1e-9);
    CHECK(std::abs(res->values[0](0) - res->values[1](0)) < 1e-7);
  }
}

TEST_CASE("solve_bu records hypothesis warnings") {
  const SmoothMap f = SmoothMap::random_trig(5, 3, 1);
  std::vector<std::string> warnings;
  solve_bu(f, 2, 1, 4, 3, 1e-6, 2, &warnings);
  REQUIRE(warnings.size() == 2);  // p = 4 not prime, m = 2 < d(p-1)+1 = 4
}

TEST_CASE("smooth map JSON round trip") {
  const SmoothMap f = SmoothMap::random_trig(99, 4, 2);
  const SmoothMap g = SmoothMap::from_json(f.to_json());
  CHECK(g.input_dim() == 4);
  CHECK(g.output_dim() == 2);
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd x = detail::random_unit_vector(rng, 4);
    CHECK((f(x) - g(x)).norm() == 0.0);
  }
  CHECK_THROWS_AS(SmoothMap::from_json(nlohmann::json{{"input_dim", 2}}),
                  nlohmann::json::exception);
}
