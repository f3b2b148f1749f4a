#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tvg/convex.hpp"
#include "tvg/primes.hpp"
#include "tvg/witness.hpp"

namespace tvg {

/// Exact lower bound of the cross-polytope witness count:
/// (1/r!) * ((r-1)/2)^(m-1).
inline Rational cross_bound(int m, int r) {
  if (m < 1 || r < 2) throw std::invalid_argument("cross_bound: need m >= 1, r >= 2");
  Rational b = Rational(1) / Rational(factorial(r));
  const Rational base = Rational(r - 1, 2);
  for (int i = 0; i < m - 1; ++i) b *= base;
  return b;
}

inline BigInt ceil_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quo = num / den;
  if (quo * den != num && num > 0) ++quo;
  return quo;
}

namespace detail {

/// Common point of the hulls with every convex coefficient at least t,
/// maximizing t. A positive optimum certifies a point whose minimal face per
/// set is the full set (relative interior membership); this is the canonical
/// form used for witness counting, and it is invariant under any relabeling
/// of vertices or parts.
struct RelintWitness {
  QVector z;
  std::vector<std::vector<Rational>> coeffs;
  Rational t;
};

inline std::optional<RelintWitness> relint_common_point(
    const std::vector<std::vector<QVector>>& sets, int d) {
  LpProblem lp = hull_intersection_problem(sets, d, true);
  const LpResult r = simplex_solve(lp);
  if (r.status != LpStatus::optimal || r.value <= 0) return std::nullopt;
  RelintWitness w;
  const ConvIntersection c = unpack_hull_solution(sets, d, r.x);
  w.z = c.point;
  w.coeffs = c.coeffs;
  w.t = r.value;
  return w;
}

/// d = 1 shortcut for counting: the relative interiors of the value
/// intervals have a common point iff point-like faces agree on one value
/// that lies strictly inside every non-degenerate interval.
inline bool relint_intervals_nonempty(
    const std::vector<std::pair<Rational, Rational>>& ranges) {
  bool has_point = false;
  Rational point_value = 0;
  for (const auto& [lo, hi] : ranges) {
    if (lo == hi) {
      if (has_point && point_value != lo) return false;
      has_point = true;
      point_value = lo;
    }
  }
  if (has_point) {
    for (const auto& [lo, hi] : ranges)
      if (lo != hi && !(lo < point_value && point_value < hi)) return false;
    return true;
  }
  Rational lo_max = ranges[0].first, hi_min = ranges[0].second;
  for (const auto& [lo, hi] : ranges) {
    if (lo > lo_max) lo_max = lo;
    if (hi < hi_min) hi_min = hi;
  }
  return lo_max < hi_min;
}

struct FaceData {
  const Face* face;
  std::vector<QVector> images;
  QVector box_lo, box_hi;  // componentwise image bounds
};

/// Mask-only early-exit check that r pairwise disjoint faces exist at all;
/// used to pick the right diagnostic when a search comes back empty.
inline bool exists_disjoint_tuple(const std::vector<Face>& faces, int r) {
  const int nf = static_cast<int>(faces.size());
  std::function<bool(int, int, std::uint64_t)> rec =
      [&](int pos, int start, std::uint64_t used) -> bool {
    if (pos == r) return true;
    for (int i = start; i < nf; ++i) {
      if (faces[static_cast<std::size_t>(i)].mask & used) continue;
      if (rec(pos + 1, i + 1, used | faces[static_cast<std::size_t>(i)].mask))
        return true;
    }
    return false;
  };
  return rec(0, 0, 0);
}

inline FaceData face_data(const Polytope& p, const LinearMap& f, const Face& face) {
  FaceData d;
  d.face = &face;
  for (int v : face.vertex_indices) d.images.push_back(f.apply(p.vertex(v)));
  d.box_lo = d.images[0];
  d.box_hi = d.images[0];
  for (const auto& img : d.images)
    for (Eigen::Index c = 0; c < img.size(); ++c) {
      if (img(c) < d.box_lo(c)) d.box_lo(c) = img(c);
      if (img(c) > d.box_hi(c)) d.box_hi(c) = img(c);
    }
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Brute-force oracles on point sets
// ---------------------------------------------------------------------------

/// Exhaustive Tverberg search: enumerates unordered partitions of the index
/// set into exactly r nonempty parts (restricted-growth strings, lexicographic
/// order) and returns the first whose hulls share a point. nullopt only after
/// every partition failed.
inline std::optional<PartitionWitness> tverberg_partition(
    const std::vector<QVector>& points, int r) {
  if (points.empty()) throw std::invalid_argument("tverberg_partition: no points");
  if (r < 1 || r > static_cast<int>(points.size()))
    throw std::invalid_argument("tverberg_partition: need 1 <= r <= #points");
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(points[0].size());
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::optional<PartitionWitness> found;

  std::function<bool(int, int)> rec = [&](int pos, int used) -> bool {
    if (r - used > n - pos) return false;  // cannot fill remaining parts
    if (pos == n) {
      if (used != r) return false;
      std::vector<std::vector<int>> parts(static_cast<std::size_t>(r));
      for (int i = 0; i < n; ++i)
        parts[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i);
      std::vector<std::vector<QVector>> sets;
      for (const auto& part : parts) {
        std::vector<QVector> s;
        for (int i : part) s.push_back(points[static_cast<std::size_t>(i)]);
        sets.push_back(std::move(s));
      }
      const auto hit = conv_intersection_point(sets, d);
      if (!hit) return false;
      found = PartitionWitness{parts, hit->point, hit->coeffs};
      return true;
    }
    const int limit = std::min(used, r - 1);
    for (int lab = 0; lab <= limit; ++lab) {
      label[static_cast<std::size_t>(pos)] = lab;
      if (rec(pos + 1, std::max(used, lab + 1))) return true;
    }
    return false;
  };
  rec(0, 0);
  return found;
}

struct ColorfulResult {
  std::optional<PartitionWitness> witness;
  Warnings warnings;
};

/// Colorful variant: each part may use at most one point of every color.
/// Non-prime p only voids the theorem guarantee; the exhaustive search still
/// runs and a warning is recorded.
inline ColorfulResult colorful_tverberg(const ColoredConfig& cfg, int p) {
  if (cfg.points.size() != cfg.colors.size())
    throw std::invalid_argument("colorful_tverberg: points/colors length mismatch");
  if (cfg.points.empty())
    throw std::invalid_argument("colorful_tverberg: no points");
  ColorfulResult out;
  if (!is_prime(p))
    out.warnings.push_back("p = " + std::to_string(p) +
                           " is not prime; the theorem guarantee is void");
  const int n = static_cast<int>(cfg.points.size());
  if (p < 1 || p > n) {
    out.warnings.push_back("p outside [1, #points]; no partition exists");
    return out;
  }
  const int d = static_cast<int>(cfg.points[0].size());
  std::vector<int> label(static_cast<std::size_t>(n), 0);

  std::function<bool(int, int)> rec = [&](int pos, int used) -> bool {
    if (p - used > n - pos) return false;
    if (pos == n) {
      if (used != p) return false;
      std::vector<std::vector<int>> parts(static_cast<std::size_t>(p));
      for (int i = 0; i < n; ++i)
        parts[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i);
      for (const auto& part : parts) {
        std::set<int> seen;
        for (int i : part)
          if (!seen.insert(cfg.colors[static_cast<std::size_t>(i)]).second)
            return false;  // two points of one color in a part
      }
      std::vector<std::vector<QVector>> sets;
      for (const auto& part : parts) {
        std::vector<QVector> s;
        for (int i : part) s.push_back(cfg.points[static_cast<std::size_t>(i)]);
        sets.push_back(std::move(s));
      }
      const auto hit = conv_intersection_point(sets, d);
      if (!hit) return false;
      out.witness = PartitionWitness{parts, hit->point, hit->coeffs};
      return true;
    }
    const int limit = std::min(used, p - 1);
    for (int lab = 0; lab <= limit; ++lab) {
      label[static_cast<std::size_t>(pos)] = lab;
      if (rec(pos + 1, std::max(used, lab + 1))) return true;
    }
    return false;
  };
  rec(0, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Polytope face searches
// ---------------------------------------------------------------------------

enum class SearchMode { first, all };

struct SearchResult {
  std::vector<TverbergWitness> witnesses;
  std::string diagnostic;
};

/// Enumerates unordered r-tuples of pairwise vertex-disjoint proper faces
/// (lexicographic on sorted vertex-set tuples, forbidden vertex excluded) and
/// emits a witness for every tuple whose images share a point lying in the
/// relative interior of each face's hull. Those tuples are exactly the
/// minimal-face canonical forms, so `all` needs no deduplication and `first`
/// is the lexicographically least canonical witness.
inline SearchResult polytope_tverberg_search(const Polytope& p, const LinearMap& f,
                                             const SearchParams& params,
                                             SearchMode mode = SearchMode::first) {
  if (f.input_dim() != p.ambient_dim())
    throw std::invalid_argument("search: map input dimension mismatch");
  if (params.r < 1) throw std::invalid_argument("search: r must be >= 1");
  if (params.forbidden_vertex &&
      (*params.forbidden_vertex < 0 ||
       *params.forbidden_vertex >= p.vertex_count()))
    throw std::invalid_argument("search: forbidden vertex out of range");
  const int d = f.output_dim();

  std::vector<Face> faces = all_proper_faces(p);
  if (params.forbidden_vertex) {
    const std::uint64_t fb = std::uint64_t{1} << *params.forbidden_vertex;
    std::erase_if(faces, [&](const Face& fc) { return (fc.mask & fb) != 0; });
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    return a.vertex_indices < b.vertex_indices;
  });

  std::vector<detail::FaceData> data;
  data.reserve(faces.size());
  for (const auto& fc : faces) data.push_back(detail::face_data(p, f, fc));

  SearchResult result;
  const int nf = static_cast<int>(faces.size());
  std::vector<int> chosen(static_cast<std::size_t>(params.r));

  // running componentwise intersection of the image boxes
  std::vector<QVector> lo_stack(static_cast<std::size_t>(params.r));
  std::vector<QVector> hi_stack(static_cast<std::size_t>(params.r));

  std::function<bool(int, int, std::uint64_t)> rec = [&](int pos, int start,
                                                         std::uint64_t used) -> bool {
    if (pos == params.r) {
      std::vector<std::vector<QVector>> sets;
      for (int idx : chosen) sets.push_back(data[static_cast<std::size_t>(idx)].images);
      if (!conv_intersection_point(sets, d)) return false;
      const auto relint = detail::relint_common_point(sets, d);
      if (!relint) return false;
      TverbergWitness w;
      for (int idx : chosen) w.faces.push_back(*data[static_cast<std::size_t>(idx)].face);
      w.z = relint->z;
      w.coeffs = relint->coeffs;
      result.witnesses.push_back(std::move(w));
      return mode == SearchMode::first;
    }
    for (int i = start; i < nf; ++i) {
      const auto& fd = data[static_cast<std::size_t>(i)];
      if (fd.face->mask & used) continue;
      // image bounding boxes must commonly intersect
      QVector lo = (pos == 0) ? fd.box_lo : lo_stack[static_cast<std::size_t>(pos - 1)];
      QVector hi = (pos == 0) ? fd.box_hi : hi_stack[static_cast<std::size_t>(pos - 1)];
      bool empty = false;
      for (Eigen::Index c = 0; c < lo.size() && !empty; ++c) {
        if (fd.box_lo(c) > lo(c)) lo(c) = fd.box_lo(c);
        if (fd.box_hi(c) < hi(c)) hi(c) = fd.box_hi(c);
        if (lo(c) > hi(c)) empty = true;
      }
      if (pos > 0 && empty) continue;
      lo_stack[static_cast<std::size_t>(pos)] = std::move(lo);
      hi_stack[static_cast<std::size_t>(pos)] = std::move(hi);
      chosen[static_cast<std::size_t>(pos)] = i;
      if (rec(pos + 1, i + 1, used | fd.face->mask)) return true;
    }
    return false;
  };
  rec(0, 0, 0);

  if (result.witnesses.empty())
    result.diagnostic =
        detail::exists_disjoint_tuple(faces, params.r)
            ? "no " + std::to_string(params.r) +
                  " pairwise vertex-disjoint faces have intersecting images"
            : "r = " + std::to_string(params.r) +
                  " exceeds the maximum number of pairwise vertex-disjoint faces";
  return result;
}

struct CrossCountResult {
  long long count = 0;
  Rational bound;
  long long threshold = 0;
  bool pass = false;
  Warnings warnings;
};

/// Counts the unordered sets of r pairwise vertex-disjoint faces of the
/// m-cross-polytope avoiding the forbidden vertex whose images under f share
/// a common point, by minimal-support canonical form (relative-interior
/// membership, see relint_common_point). pass requires count >= ceil(bound).
inline CrossCountResult count_cross_witnesses(int m, int d, int r,
                                              const LinearMap& f, int forbidden) {
  const Polytope p = make_cross(m);
  if (f.input_dim() != m)
    throw std::invalid_argument("count_cross_witnesses: map dimension mismatch");
  if (f.output_dim() != d)
    throw std::invalid_argument("count_cross_witnesses: d mismatch");
  if (forbidden < 0 || forbidden >= 2 * m)
    throw std::invalid_argument("count_cross_witnesses: forbidden vertex out of range");
  CrossCountResult out;
  out.bound = cross_bound(m, r);
  out.threshold = ceil_rational(out.bound).convert_to<long long>();
  if (!is_prime(r))
    out.warnings.push_back("hypothesis violated: r = " + std::to_string(r) +
                           " is not prime");
  if (2 * m < 2 + (r - 1) * (d + 1))
    out.warnings.push_back("hypothesis violated: m < 1 + (r-1)(d+1)/2");

  std::vector<Face> faces = all_proper_faces(p);
  const std::uint64_t fb = std::uint64_t{1} << forbidden;
  std::erase_if(faces, [&](const Face& fc) { return (fc.mask & fb) != 0; });
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    return a.vertex_indices < b.vertex_indices;
  });

  std::vector<detail::FaceData> data;
  data.reserve(faces.size());
  for (const auto& fc : faces) data.push_back(detail::face_data(p, f, fc));

  const int nf = static_cast<int>(faces.size());
  std::vector<int> chosen(static_cast<std::size_t>(r));
  std::vector<QVector> lo_stack(static_cast<std::size_t>(r));
  std::vector<QVector> hi_stack(static_cast<std::size_t>(r));

  std::function<void(int, int, std::uint64_t)> rec = [&](int pos, int start,
                                                         std::uint64_t used) {
    if (pos == r) {
      if (d == 1) {
        std::vector<std::pair<Rational, Rational>> ranges;
        for (int idx : chosen) {
          const auto& fd = data[static_cast<std::size_t>(idx)];
          ranges.emplace_back(fd.box_lo(0), fd.box_hi(0));
        }
        if (detail::relint_intervals_nonempty(ranges)) ++out.count;
        return;
      }
      std::vector<std::vector<QVector>> sets;
      for (int idx : chosen) sets.push_back(data[static_cast<std::size_t>(idx)].images);
      if (!conv_intersection_point(sets, d)) return;
      if (detail::relint_common_point(sets, d)) ++out.count;
      return;
    }
    for (int i = start; i < nf; ++i) {
      const auto& fd = data[static_cast<std::size_t>(i)];
      if (fd.face->mask & used) continue;
      QVector lo = (pos == 0) ? fd.box_lo : lo_stack[static_cast<std::size_t>(pos - 1)];
      QVector hi = (pos == 0) ? fd.box_hi : hi_stack[static_cast<std::size_t>(pos - 1)];
      bool empty = false;
      for (Eigen::Index c = 0; c < lo.size() && !empty; ++c) {
        if (fd.box_lo(c) > lo(c)) lo(c) = fd.box_lo(c);
        if (fd.box_hi(c) < hi(c)) hi(c) = fd.box_hi(c);
        if (lo(c) > hi(c)) empty = true;
      }
      if (empty) continue;
      lo_stack[static_cast<std::size_t>(pos)] = std::move(lo);
      hi_stack[static_cast<std::size_t>(pos)] = std::move(hi);
      chosen[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1, i + 1, used | fd.face->mask);
    }
  };
  rec(0, 0, 0);

  out.pass = out.count >= out.threshold;
  return out;
}

// ---------------------------------------------------------------------------
// Constructive routes
// ---------------------------------------------------------------------------

struct CaratheodoryResult {
  std::vector<int> support;          // indices into the input point list
  std::vector<Rational> coeffs;      // positive, sum to 1, reproduce z
};

/// Shrinks a convex representation of z to at most d+1 points by repeatedly
/// shifting mass along an exact affine dependence until a coefficient hits
/// zero.
inline CaratheodoryResult caratheodory_reduce(const std::vector<QVector>& points,
                                              const QVector& z,
                                              const std::vector<Rational>& coeffs) {
  if (points.size() != coeffs.size())
    throw std::invalid_argument("caratheodory_reduce: points/coeffs length mismatch");
  const int d = static_cast<int>(z.size());
  Rational sum = 0;
  QVector check = QVector::Zero(d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (coeffs[i] < 0)
      throw std::invalid_argument("caratheodory_reduce: negative coefficient");
    sum += coeffs[i];
    check += coeffs[i] * points[i];
  }
  if (sum != 1 || !exactly_equal(check, z))
    throw std::invalid_argument("caratheodory_reduce: coefficients do not reproduce z");

  std::vector<int> support;
  std::vector<Rational> c;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (coeffs[i] > 0) {
      support.push_back(static_cast<int>(i));
      c.push_back(coeffs[i]);
    }

  while (static_cast<int>(support.size()) > d + 1) {
    // affine dependence: sum(mu_s * p_s) = 0 with sum(mu_s) = 0, mu != 0
    QMatrix a = QMatrix::Zero(d + 1, static_cast<Eigen::Index>(support.size()));
    for (std::size_t s = 0; s < support.size(); ++s) {
      for (int row = 0; row < d; ++row)
        a(row, static_cast<Eigen::Index>(s)) = points[static_cast<std::size_t>(support[s])](row);
      a(d, static_cast<Eigen::Index>(s)) = 1;
    }
    const QMatrix kernel = kernel_basis(a);
    if (kernel.cols() == 0)
      throw std::logic_error("caratheodory_reduce: no affine dependence found");
    QVector mu = kernel.col(0);
    bool has_positive = false;
    for (Eigen::Index s = 0; s < mu.size(); ++s)
      if (mu(s) > 0) has_positive = true;
    if (!has_positive) mu = -mu;

    bool first = true;
    Rational t = 0;
    for (std::size_t s = 0; s < support.size(); ++s) {
      if (mu(static_cast<Eigen::Index>(s)) <= 0) continue;
      const Rational ratio = c[s] / mu(static_cast<Eigen::Index>(s));
      if (first || ratio < t) {
        t = ratio;
        first = false;
      }
    }
    std::vector<int> next_support;
    std::vector<Rational> next_c;
    for (std::size_t s = 0; s < support.size(); ++s) {
      const Rational v = c[s] - t * mu(static_cast<Eigen::Index>(s));
      if (v > 0) {
        next_support.push_back(support[s]);
        next_c.push_back(v);
      }
    }
    support = std::move(next_support);
    c = std::move(next_c);
  }
  return {support, c};
}

/// Constructive witness for (d+1)-neighborly polytopes: Tverberg partition of
/// the vertex images, Caratheodory reduction of each part to <= d+1 points,
/// and the lift of each reduced support to the face it spans.
inline TverbergWitness neighborly_construct(const Polytope& p, const LinearMap& f,
                                            int r) {
  const int d = f.output_dim();
  if (!is_k_neighborly(p, d + 1))
    throw std::invalid_argument("neighborly_construct: polytope is not (d+1)-neighborly");
  if (p.vertex_count() < (r - 1) * (d + 1) + 1)
    throw std::invalid_argument("neighborly_construct: too few vertices for r");
  std::vector<QVector> images;
  for (Eigen::Index v = 0; v < p.vertex_count(); ++v)
    images.push_back(f.apply(p.vertex(v)));
  const auto partition = tverberg_partition(images, r);
  if (!partition)
    throw std::runtime_error("neighborly_construct: no Tverberg partition of the images");

  TverbergWitness w;
  w.z = partition->z;
  for (std::size_t j = 0; j < partition->parts.size(); ++j) {
    std::vector<QVector> part_points;
    for (int i : partition->parts[j]) part_points.push_back(images[static_cast<std::size_t>(i)]);
    const auto reduced = caratheodory_reduce(part_points, partition->z,
                                             partition->coeffs[j]);
    Face face;
    for (int local : reduced.support)
      face.vertex_indices.push_back(partition->parts[j][static_cast<std::size_t>(local)]);
    std::sort(face.vertex_indices.begin(), face.vertex_indices.end());
    const auto mf = minimal_face(p, face.vertex_indices);
    if (!mf || *mf != face.vertex_indices)
      throw std::logic_error("neighborly_construct: reduced support does not span a face");
    face.mask = mask_of(face.vertex_indices);
    face.dim = detail::face_dim(p, face.vertex_indices);
    // coefficients follow the sorted vertex order of the face
    std::vector<Rational> face_coeffs(face.vertex_indices.size());
    for (std::size_t s = 0; s < reduced.support.size(); ++s) {
      const int global = partition->parts[j][static_cast<std::size_t>(reduced.support[s])];
      const auto it = std::lower_bound(face.vertex_indices.begin(),
                                       face.vertex_indices.end(), global);
      face_coeffs[static_cast<std::size_t>(it - face.vertex_indices.begin())] =
          reduced.coeffs[s];
    }
    w.faces.push_back(std::move(face));
    w.coeffs.push_back(std::move(face_coeffs));
  }
  return w;
}

/// Cross-polytope witness through the colorful route: prime p in [r, 2r-3],
/// (p-1)(d+1)+1 vertices colored constantly on antipodal pairs, colorful
/// Tverberg on the images, rainbow parts lifted to faces. Falls back to the
/// direct face search when the prime window is empty (r < 3).
inline TverbergWitness cross_via_colorful(int m, int d, int r, const LinearMap& f) {
  if (m != (r - 1) * (d + 1))
    throw std::invalid_argument("cross_via_colorful: expected m = (r-1)(d+1)");
  if (f.input_dim() != m || f.output_dim() != d)
    throw std::invalid_argument("cross_via_colorful: map dimensions mismatch");
  const Polytope p = make_cross(m);

  int prime = 0;
  for (int q = r; q <= 2 * r - 3; ++q)
    if (is_prime(q)) {
      prime = q;
      break;
    }
  if (prime == 0) {
    const SearchResult direct =
        polytope_tverberg_search(p, f, SearchParams{r, d, std::nullopt});
    if (direct.witnesses.empty())
      throw std::runtime_error("cross_via_colorful: direct fallback found no witness");
    return direct.witnesses.front();
  }

  const int selected = (prime - 1) * (d + 1) + 1;
  if (selected > 2 * m)
    throw std::logic_error("cross_via_colorful: not enough vertices to select");
  ColoredConfig cfg;
  for (int i = 0; i < selected; ++i) {
    cfg.points.push_back(f.apply(p.vertex(i)));
    cfg.colors.push_back(i / 2);  // antipodal pairs sit at indices 2k, 2k+1
  }
  const ColorfulResult colorful = colorful_tverberg(cfg, prime);
  if (!colorful.witness)
    throw std::runtime_error("cross_via_colorful: colorful search found no partition");

  struct Lifted {
    std::vector<int> verts;
    std::vector<Rational> coeffs;
  };
  std::vector<Lifted> lifted;
  for (std::size_t j = 0; j < colorful.witness->parts.size(); ++j) {
    Lifted part;
    for (std::size_t i = 0; i < colorful.witness->parts[j].size(); ++i) {
      if (colorful.witness->coeffs[j][i] == 0) continue;
      part.verts.push_back(colorful.witness->parts[j][i]);
      part.coeffs.push_back(colorful.witness->coeffs[j][i]);
    }
    lifted.push_back(std::move(part));
  }
  for (const auto& part : lifted)
    for (std::size_t a = 0; a < part.verts.size(); ++a)
      for (std::size_t b = a + 1; b < part.verts.size(); ++b)
        if (part.verts[a] / 2 == part.verts[b] / 2)
          throw std::logic_error("cross_via_colorful: lifted part contains an antipodal pair");

  std::sort(lifted.begin(), lifted.end(),
            [](const Lifted& a, const Lifted& b) { return a.verts < b.verts; });

  TverbergWitness w;
  w.z = colorful.witness->z;
  for (int j = 0; j < r; ++j) {
    auto& part = lifted[static_cast<std::size_t>(j)];
    std::vector<std::size_t> order(part.verts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return part.verts[a] < part.verts[b];
    });
    Face face;
    std::vector<Rational> coeffs;
    for (std::size_t i : order) {
      face.vertex_indices.push_back(part.verts[i]);
      coeffs.push_back(part.coeffs[i]);
    }
    face.mask = mask_of(face.vertex_indices);
    face.dim = detail::face_dim(p, face.vertex_indices);
    w.faces.push_back(std::move(face));
    w.coeffs.push_back(std::move(coeffs));
  }
  return w;
}

// ---------------------------------------------------------------------------
// The d = 1 construction for triangle-free skeletons
// ---------------------------------------------------------------------------

/// Runs the greedy edge-picking construction on the skeleton alone: vertices
/// sorted by (value, index), each of the first r-1 sorted vertices matched to
/// a partner beyond the first r sorted positions. The returned r faces
/// (r-1 edges plus the r-th sorted vertex) are pairwise vertex-disjoint and
/// the final vertex value lies in every edge interval. If no partner exists
/// the skeleton contains a triangle, which is reported and violates the
/// precondition.
inline D1Witness triangle_free_d1(const SkeletonGraph& g,
                                  const std::vector<Rational>& values, int r) {
  const int n = g.vertex_count;
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument("triangle_free_d1: one value per vertex required");
  if (r < 1 || r > n) throw std::invalid_argument("triangle_free_d1: need 1 <= r <= n");
  if (!is_triangle_free(g))
    throw std::invalid_argument("triangle_free_d1: skeleton has a triangle");
  if (r >= 2 && min_degree(g) < r)
    throw std::invalid_argument("triangle_free_d1: minimum degree below r");

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[static_cast<std::size_t>(a)] != values[static_cast<std::size_t>(b)])
      return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    return a < b;
  });
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)] |= (std::uint64_t{1} << v);
    adj[static_cast<std::size_t>(v)] |= (std::uint64_t{1} << u);
  }

  D1Witness w;
  w.final_vertex = order[static_cast<std::size_t>(r - 1)];
  w.common_value = values[static_cast<std::size_t>(w.final_vertex)];
  std::vector<bool> taken(static_cast<std::size_t>(n), false);  // sorted positions
  std::vector<int> partner(static_cast<std::size_t>(r), -1);    // sorted position j_i
  for (int i = 0; i < r; ++i) taken[static_cast<std::size_t>(i)] = true;

  for (int i = 0; i < r - 1; ++i) {
    const int vi = order[static_cast<std::size_t>(i)];
    int found = -1;
    for (int j = r; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      const int vj = order[static_cast<std::size_t>(j)];
      if (adj[static_cast<std::size_t>(vi)] & (std::uint64_t{1} << vj)) {
        found = j;
        break;
      }
    }
    if (found < 0) {
      // the proof derives a triangle: some earlier edge has both ends adjacent
      for (int t = 0; t < i; ++t) {
        const int vt = order[static_cast<std::size_t>(t)];
        const int vjt = order[static_cast<std::size_t>(partner[static_cast<std::size_t>(t)])];
        if ((adj[static_cast<std::size_t>(vi)] & (std::uint64_t{1} << vt)) &&
            (adj[static_cast<std::size_t>(vi)] & (std::uint64_t{1} << vjt)))
          throw std::runtime_error(
              "triangle_free_d1: triangle {" + std::to_string(vi) + "," +
              std::to_string(vt) + "," + std::to_string(vjt) +
              "} contradicts the triangle-free precondition");
      }
      throw std::runtime_error(
          "triangle_free_d1: no admissible partner and no witnessing triangle; "
          "preconditions violated");
    }
    taken[static_cast<std::size_t>(found)] = true;
    partner[static_cast<std::size_t>(i)] = found;
    w.edges.emplace_back(order[static_cast<std::size_t>(i)],
                         order[static_cast<std::size_t>(found)]);
  }
  return w;
}

/// Polytope entry point; adds the dimension check before delegating to the
/// skeleton-level construction.
inline D1Witness triangle_free_d1(const Polytope& p,
                                  const std::vector<Rational>& values, int r) {
  if (p.dim < r)
    throw std::invalid_argument("triangle_free_d1: polytope dimension below r");
  return triangle_free_d1(skeleton(p), values, r);
}

}  // namespace tvg
