#pragma once

#include <cstdint>
#include <optional>

#include "tvg/rng.hpp"
#include "tvg/witness.hpp"

namespace tvg {

struct SeededMapResult {
  LinearMap map;
  int reseeds = 0;               // rejection count, recorded in reports
  std::uint64_t final_seed = 0;  // seed that produced the accepted map
};

/// Deterministic rational map from a seed: entries num/den with
/// |num| <= denom_bound, 1 <= den <= denom_bound. When the target vertex set
/// is supplied, draws whose vertex images are affinely degenerate (rank below
/// d) are rejected and the seed is advanced deterministically.
inline SeededMapResult seeded_rational_map(int d, int ambient, std::uint64_t seed,
                                           int denom_bound = 1000,
                                           const QMatrix* vertices = nullptr) {
  if (d < 1 || ambient < 1)
    throw std::invalid_argument("seeded_rational_map: need d, ambient >= 1");
  if (denom_bound < 1)
    throw std::invalid_argument("seeded_rational_map: denom_bound >= 1");

  SeededMapResult out;
  std::uint64_t current = seed;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Rng rng = stream_rng(current, "rational-map");
    LinearMap f;
    f.matrix.resize(d, ambient);
    f.offset.resize(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < ambient; ++j)
        f.matrix(i, j) = Rational(rng.uniform_int(-denom_bound, denom_bound),
                                  rng.uniform_int(1, denom_bound));
      f.offset(i) = Rational(rng.uniform_int(-denom_bound, denom_bound),
                             rng.uniform_int(1, denom_bound));
    }
    bool ok = true;
    if (vertices) {
      QMatrix images(vertices->rows(), d);
      for (Eigen::Index v = 0; v < vertices->rows(); ++v)
        images.row(v) = f.apply(vertices->row(v).transpose()).transpose();
      const int target = std::min<int>(d, affine_rank_rows(*vertices));
      ok = affine_rank_rows(images) >= target;
    }
    if (ok) {
      out.map = std::move(f);
      out.final_seed = current;
      return out;
    }
    current = Rng(current).u64();  // deterministic reseed
    ++out.reseeds;
  }
  throw std::runtime_error("seeded_rational_map: rejection limit reached");
}

}  // namespace tvg
