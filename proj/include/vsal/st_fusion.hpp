#ifndef VSAL_ST_FUSION_HPP_
#define VSAL_ST_FUSION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vsal/errors.hpp"
#include "vsal/saliency_map.hpp"

namespace vsal {

struct FusionParams {
  double omega = 2.1;
  double epsilon = 1e-8;
};

struct ConsistencyScores {
  double c_s2t = 0.0;
  double c_t2s = 0.0;
};

/// Shannon entropy (nats) of the sum-normalized pixel distribution.
inline double entropy(const SaliencyMap& m) {
  const SaliencyMap p = normalize_sum(m);
  double e = 0.0;
  for (double v : p.values)
    if (v > 0.0) e -= v * std::log(v);
  return e;
}

namespace detail {

inline SaliencyMap pixel_product(const SaliencyMap& a, const SaliencyMap& b) {
  if (a.width != b.width || a.height != b.height)
    throw DimensionMismatch("pixel product: map dimensions differ");
  SaliencyMap out(a.width, a.height);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a.values[i] * b.values[i];
  return out;
}

}  // namespace detail

/// Entropy-ratio consistency between a spatial and a temporal map. The
/// product map and both inputs are sum-normalized before entropy, so the
/// score is higher against the cleaner (lower-entropy) counterpart.
inline ConsistencyScores consistency(const SaliencyMap& s,
                                     const SaliencyMap& t) {
  const SaliencyMap sn = normalize_sum(s);
  const SaliencyMap tn = normalize_sum(t);
  const double e_s = entropy(sn);
  const double e_t = entropy(tn);
  if (e_s == 0.0 || e_t == 0.0) throw ZeroEntropyDenominator();
  const double e_prod = entropy(detail::pixel_product(sn, tn));
  return {e_prod / e_t, e_prod / e_s};
}

/// Consistency-weighted blend of the two maps, emphasizing the cleaner
/// one. Output is sum-normalized.
inline SaliencyMap interaction_map(const SaliencyMap& s, const SaliencyMap& t,
                                   const ConsistencyScores& scores) {
  const double total = scores.c_s2t + scores.c_t2s;
  if (total <= 0.0) throw DegenerateScores();
  const SaliencyMap sn = normalize_sum(s);
  const SaliencyMap tn = normalize_sum(t);
  SaliencyMap out(sn.width, sn.height);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] =
        (scores.c_t2s * tn.values[i] + scores.c_s2t * sn.values[i]) / total;
  return normalize_sum(out);
}

/// Saliency-weighted mean distance of pixels to the saliency-weighted
/// centroid; smaller means more compact salient regions.
inline double compactness(const SaliencyMap& m) {
  const SaliencyMap p = normalize_sum(m);
  double cx = 0.0, cy = 0.0;
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) {
      const double w = p.at(x, y);
      cx += w * x;
      cy += w * y;
    }
  double d = 0.0;
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x)
      d += p.at(x, y) * std::hypot(x - cx, y - cy);
  return d;
}

/// Picks the map with the more compact salient regions; ties favor the
/// first (spatial) argument.
inline SaliencyMap select_map(const SaliencyMap& s, const SaliencyMap& t) {
  return compactness(s) <= compactness(t) ? s : t;
}

/// Adaptive spatiotemporal fusion: blends the interaction map with the
/// compactness-selected map. The blend weight is the smaller consistency
/// score (clamped to [0,1]) when the interaction map stays compact
/// relative to the inputs, and zero otherwise. Degenerate inputs (zero
/// entropy, disjoint supports, or an all-zero side) fall back to pure
/// selection.
inline SaliencyMap fuse(const SaliencyMap& s, const SaliencyMap& t,
                        const FusionParams& params,
                        double* lambda_out = nullptr) {
  if (s.width != t.width || s.height != t.height)
    throw DimensionMismatch("fuse: map dimensions differ");
  if (lambda_out) *lambda_out = 0.0;
  const bool s_zero = s.all_zero();
  const bool t_zero = t.all_zero();
  if (s_zero && t_zero) throw AllZeroMap("fuse: both maps are all-zero");
  if (s_zero) return normalize_sum(t);
  if (t_zero) return normalize_sum(s);

  const SaliencyMap sn = normalize_sum(s);
  const SaliencyMap tn = normalize_sum(t);
  const double d_s = compactness(sn);
  const double d_t = compactness(tn);
  const SaliencyMap& sel = d_s <= d_t ? sn : tn;

  ConsistencyScores scores;
  SaliencyMap inter;
  try {
    scores = consistency(sn, tn);
    inter = interaction_map(sn, tn, scores);
  } catch (const ZeroEntropyDenominator&) {
    return sel;
  } catch (const AllZeroMap&) {  // disjoint supports
    return sel;
  } catch (const DegenerateScores&) {
    return sel;
  }

  const double d_int = compactness(inter);
  double lambda = 0.0;
  if (d_int < params.omega * std::min(d_s, d_t))
    lambda = std::clamp(std::min(scores.c_s2t, scores.c_t2s), 0.0, 1.0);
  if (lambda_out) *lambda_out = lambda;

  SaliencyMap out(sn.width, sn.height);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] =
        lambda * inter.values[i] + (1.0 - lambda) * sel.values[i];
  return normalize_sum(out);
}

/// Spatial ensemble: mean of the min-max-normalized maps, sum-normalized.
inline SaliencyMap spatial_ensemble_fuse(const std::vector<SaliencyMap>& maps) {
  if (maps.empty()) throw EmptyList("spatial_ensemble_fuse: no maps");
  SaliencyMap acc(maps[0].width, maps[0].height);
  for (const SaliencyMap& m : maps) {
    if (m.width != acc.width || m.height != acc.height)
      throw DimensionMismatch("spatial_ensemble_fuse: map dimensions differ");
    const SaliencyMap mm = normalize_minmax(m);
    for (std::size_t i = 0; i < acc.values.size(); ++i)
      acc.values[i] += mm.values[i];
  }
  for (double& v : acc.values) v /= static_cast<double>(maps.size());
  return normalize_sum(acc);
}

}  // namespace vsal

#endif  // VSAL_ST_FUSION_HPP_
