#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvg/primes.hpp"
#include "tvg/rng.hpp"
#include "tvg/smooth_map.hpp"
#include "tvg/sphere.hpp"

namespace tvg {

/// Ordered orthonormal pair in R^{m+1}; the configuration space of the
/// rotation-orbit search.
struct StiefelFrame {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

inline bool frame_valid(const StiefelFrame& f, double tol = 1e-12) {
  return std::abs(f.x.norm() - 1.0) <= tol && std::abs(f.y.norm() - 1.0) <= tol &&
         std::abs(f.x.dot(f.y)) <= tol;
}

/// Rotation by `angle` inside span{x, y}:
/// (x', y') = (cos a * x + sin a * y, -sin a * x + cos a * y).
inline StiefelFrame rotate_frame(const StiefelFrame& f, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * f.x + s * f.y, -s * f.x + c * f.y};
}

/// First vectors of the p frames obtained by repeated rotation by 2*pi/p.
/// They lie on the great circle span{x, y} with consecutive gaps exactly
/// 2*pi/p, so pairwise spherical distances are at least 2*pi/p.
inline std::vector<Eigen::VectorXd> orbit_points(const StiefelFrame& f, int p) {
  if (p < 2) throw std::invalid_argument("orbit_points: need p >= 2");
  std::vector<Eigen::VectorXd> pts;
  const double step = 2.0 * std::numbers::pi / p;
  for (int k = 0; k < p; ++k)
    pts.push_back(std::cos(k * step) * f.x + std::sin(k * step) * f.y);
  return pts;
}

struct ResidualValue {
  double value = 0.0;
  Eigen::VectorXd projected;  // mean-centered stacked values, p*d entries
};

namespace detail {

/// Orthogonal projection onto the zero-mean subspace, blockwise over the p
/// stacked d-vectors.
inline Eigen::VectorXd mean_center_blocks(const Eigen::VectorXd& stacked, int p,
                                          int d) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < p; ++k) mean += stacked.segment(k * d, d);
  mean /= static_cast<double>(p);
  Eigen::VectorXd out(stacked.size());
  for (int k = 0; k < p; ++k)
    out.segment(k * d, d) = stacked.segment(k * d, d) - mean;
  return out;
}

}  // namespace detail

/// Stacks (f(x_1), ..., f(x_p)), removes the blockwise mean, and returns the
/// Euclidean norm with the projected vector. Zero exactly when all p values
/// agree. Non-finite map values raise with the offending point.
inline ResidualValue residual(const SmoothMap& f, const StiefelFrame& frame, int p) {
  const int d = f.output_dim();
  const auto pts = orbit_points(frame, p);
  Eigen::VectorXd stacked(p * d);
  for (int k = 0; k < p; ++k) {
    const Eigen::VectorXd v = f(pts[static_cast<std::size_t>(k)]);
    if (!v.allFinite()) {
      std::ostringstream os;
      os << "residual: non-finite map value at orbit point "
         << pts[static_cast<std::size_t>(k)].transpose();
      throw std::runtime_error(os.str());
    }
    stacked.segment(k * d, d) = v;
  }
  ResidualValue r;
  r.projected = detail::mean_center_blocks(stacked, p, d);
  r.value = r.projected.norm();
  return r;
}

struct OrbitResult {
  std::vector<Eigen::VectorXd> points;   // p unit vectors on a great circle
  std::vector<Eigen::VectorXd> values;   // f at each point
  double residual = 0.0;
  StiefelFrame frame;
  int restarts_used = 0;
};

namespace detail {

inline StiefelFrame random_frame(Rng& rng, int ambient) {
  Eigen::VectorXd x = random_unit_vector(rng, ambient);
  Eigen::VectorXd y;
  do {
    y = random_unit_vector(rng, ambient);
    y -= y.dot(x) * x;
  } while (y.norm() < 1e-8);
  return {x, y / y.norm()};
}

inline StiefelFrame retract(const Eigen::VectorXd& xt, const Eigen::VectorXd& yt) {
  const Eigen::VectorXd x = xt / xt.norm();
  Eigen::VectorXd y = yt - yt.dot(x) * x;
  return {x, y / y.norm()};
}

/// Ambient squared residual as a function of the stacked (x, y) coordinates;
/// smooth in a neighborhood of the manifold because the orbit formula needs
/// no normalization.
inline double ambient_objective(const SmoothMap& f, int p,
                                const Eigen::VectorXd& coords) {
  const int n = static_cast<int>(coords.size()) / 2;
  StiefelFrame fr{coords.head(n), coords.tail(n)};
  const double r = residual(f, fr, p).value;
  return r * r;
}

inline Eigen::VectorXd numerical_gradient(const SmoothMap& f, int p,
                                          const Eigen::VectorXd& coords,
                                          double h = 1e-6) {
  Eigen::VectorXd g(coords.size());
  Eigen::VectorXd probe = coords;
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    probe(i) = coords(i) + h;
    const double fp = ambient_objective(f, p, probe);
    probe(i) = coords(i) - h;
    const double fm = ambient_objective(f, p, probe);
    probe(i) = coords(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Orthogonal projection onto the tangent space of V_{m+1,2} at the frame.
/// The three constraint normals (x,0), (0,y), (y,x)/sqrt(2) are orthonormal
/// at any valid frame.
inline Eigen::VectorXd tangent_project(const StiefelFrame& fr,
                                       const Eigen::VectorXd& g) {
  const int n = static_cast<int>(fr.x.size());
  const Eigen::VectorXd gx = g.head(n), gy = g.tail(n);
  Eigen::VectorXd ux = gx - gx.dot(fr.x) * fr.x;
  Eigen::VectorXd uy = gy - gy.dot(fr.y) * fr.y;
  const double mixed = (ux.dot(fr.y) + uy.dot(fr.x)) / 2.0;
  ux -= mixed * fr.y;
  uy -= mixed * fr.x;
  Eigen::VectorXd out(2 * n);
  out << ux, uy;
  return out;
}

inline void check_orbit(const StiefelFrame& fr,
                        const std::vector<Eigen::VectorXd>& pts, int p) {
  const double step = 2.0 * std::numbers::pi / p;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    // great-circle containment: no component orthogonal to span{x, y}
    const Eigen::VectorXd res =
        pts[k] - pts[k].dot(fr.x) * fr.x - pts[k].dot(fr.y) * fr.y;
    if (res.norm() > 1e-9)
      throw std::logic_error("orbit point off the great circle");
    const Eigen::VectorXd next = pts[(k + 1) % pts.size()];
    const double gap = geodesic_distance(pts[k], next);
    if (std::abs(gap - std::min(step, 2.0 * std::numbers::pi - step)) > 1e-9)
      throw std::logic_error("consecutive orbit gap differs from 2*pi/p");
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (geodesic_distance(pts[i], pts[j]) < step - 1e-9)
        throw std::logic_error("orbit points closer than 2*pi/p");
}

}  // namespace detail

/// Multi-start projected gradient descent over V_{m+1,2} for p orbit points
/// with equal f-values: seeded random frames, central-difference gradients
/// pulled back to the tangent space, Armijo backtracking, Gram-Schmidt
/// retraction. Success means residual < tol; restarts run in a fixed order so
/// the result is deterministic. Failure after max_restarts returns nullopt
/// (no certificate, never a refutation).
inline std::optional<OrbitResult> solve_bu(const SmoothMap& f, int m, int d, int p,
                                           std::uint64_t seed, double tol = 1e-8,
                                           int max_restarts = 50,
                                           std::vector<std::string>* warnings = nullptr,
                                           int max_iters = 600) {
  if (f.input_dim() != m + 1)
    throw std::invalid_argument("solve_bu: map input dimension must be m+1");
  if (f.output_dim() != d)
    throw std::invalid_argument("solve_bu: map output dimension must be d");
  if (warnings) {
    if (!is_prime(p))
      warnings->push_back("p is not prime; the existence theorem does not apply");
    if (m < d * (p - 1) + 1)
      warnings->push_back("m below d(p-1)+1; outside the theorem hypothesis");
  }

  const int n = m + 1;
  for (int restart = 0; restart < max_restarts; ++restart) {
    Rng rng = stream_rng(seed, "bu-restart", static_cast<std::uint64_t>(restart));
    StiefelFrame frame = detail::random_frame(rng, n);
    double fval = detail::ambient_objective(
        f, p, (Eigen::VectorXd(2 * n) << frame.x, frame.y).finished());

    for (int iter = 0; iter < max_iters; ++iter) {
      if (std::sqrt(fval) < tol) break;
      Eigen::VectorXd coords(2 * n);
      coords << frame.x, frame.y;
      const Eigen::VectorXd grad =
          detail::tangent_project(frame, detail::numerical_gradient(f, p, coords));
      const double gnorm2 = grad.squaredNorm();
      if (gnorm2 < 1e-30) break;  // flat point, restart
      double t = 1.0;
      bool stepped = false;
      while (t > 1e-16) {
        const Eigen::VectorXd cand = coords - t * grad;
        const StiefelFrame next = detail::retract(cand.head(n), cand.tail(n));
        const double fnext = detail::ambient_objective(
            f, p, (Eigen::VectorXd(2 * n) << next.x, next.y).finished());
        if (fnext <= fval - 1e-4 * t * gnorm2) {
          frame = next;
          fval = fnext;
          stepped = true;
          break;
        }
        t /= 2.0;
      }
      if (!stepped) break;
    }

    const ResidualValue res = residual(f, frame, p);
    if (res.value < tol) {
      OrbitResult out;
      out.frame = frame;
      out.points = orbit_points(frame, p);
      detail::check_orbit(frame, out.points, p);
      for (const auto& pt : out.points) out.values.push_back(f(pt));
      out.residual = res.value;
      out.restarts_used = restart + 1;
      return out;
    }
  }
  return std::nullopt;
}

/// Compares the optimizer's internal directional derivatives of the squared
/// residual against central finite differences along 10 seeded random tangent
/// directions. Errors are relative to max(1, |reference|), so flat maps
/// report their absolute error.
inline double gradient_check(const SmoothMap& f, const StiefelFrame& frame, int p,
                             double h_step) {
  if (h_step < 1e-8 || h_step > 1e-4)
    throw std::invalid_argument("gradient_check: h_step outside [1e-8, 1e-4]");
  const int n = static_cast<int>(frame.x.size());
  Eigen::VectorXd coords(2 * n);
  coords << frame.x, frame.y;
  const Eigen::VectorXd grad =
      detail::tangent_project(frame, detail::numerical_gradient(f, p, coords));
  Rng rng = stream_rng(0x9d5f, "gradient-check");
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd dir(2 * n);
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = rng.gaussian();
    dir = detail::tangent_project(frame, dir);
    if (dir.norm() < 1e-12) continue;
    dir /= dir.norm();
    const double d_int = grad.dot(dir);
    const double fp = detail::ambient_objective(f, p, coords + h_step * dir);
    const double fm = detail::ambient_objective(f, p, coords - h_step * dir);
    const double d_fd = (fp - fm) / (2.0 * h_step);
    const double err = std::abs(d_int - d_fd) / std::max(1.0, std::abs(d_fd));
    if (err > worst) worst = err;
  }
  return worst;
}

}  // namespace tvg
