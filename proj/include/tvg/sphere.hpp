#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "tvg/rng.hpp"

namespace tvg {

/// Angle between unit vectors via 2*atan2(|a-b|, |a+b|), which stays
/// accurate near 0 and near pi where acos of the dot product loses digits.
inline double geodesic_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

namespace detail {

/// Uniform point on S^{dim-1}: normalized Gaussian vector.
inline Eigen::VectorXd random_unit_vector(Rng& rng, int dim) {
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = rng.gaussian();
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

}  // namespace detail
}  // namespace tvg
