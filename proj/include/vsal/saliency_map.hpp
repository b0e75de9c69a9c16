#ifndef VSAL_SALIENCY_MAP_HPP_
#define VSAL_SALIENCY_MAP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "vsal/errors.hpp"

namespace vsal {

enum class NormState { Raw, SumOne, MinMax };

/// A W x H grid of non-negative reals, row-major, with a declared
/// normalization state. Immutable by convention: every operation returns
/// a new map.
struct SaliencyMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  NormState norm_state = NormState::Raw;

  SaliencyMap() = default;
  SaliencyMap(int w, int h, double fill = 0.0,
              NormState state = NormState::Raw)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h),
               fill),
        norm_state(state) {}
  SaliencyMap(int w, int h, std::vector<double> vals,
              NormState state = NormState::Raw)
      : width(w), height(h), values(std::move(vals)), norm_state(state) {}

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  std::size_t size() const { return values.size(); }

  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  double max_value() const {
    return values.empty() ? 0.0
                          : *std::max_element(values.begin(), values.end());
  }
  double min_value() const {
    return values.empty() ? 0.0
                          : *std::min_element(values.begin(), values.end());
  }
  bool all_zero() const {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return v == 0.0; });
  }
};

/// Rescale so the values sum to 1. Errors on all-zero input.
inline SaliencyMap normalize_sum(const SaliencyMap& m) {
  const double total = m.sum();
  if (total <= 0.0) throw AllZeroMap();
  SaliencyMap out = m;
  for (double& v : out.values) v /= total;
  out.norm_state = NormState::SumOne;
  return out;
}

/// Affine rescale to [0,1]. A constant map maps to all zeros.
inline SaliencyMap normalize_minmax(const SaliencyMap& m) {
  SaliencyMap out = m;
  const double lo = m.min_value();
  const double hi = m.max_value();
  if (hi > lo) {
    const double scale = 1.0 / (hi - lo);
    for (double& v : out.values) v = (v - lo) * scale;
  } else {
    std::fill(out.values.begin(), out.values.end(), 0.0);
  }
  out.norm_state = NormState::MinMax;
  return out;
}

namespace detail {

// Pixel-center bilinear sampling with edge clamping. Identity when the
// dimensions match.
inline std::vector<double> resize_grid(const std::vector<double>& src,
                                       int sw, int sh, int dw, int dh) {
  std::vector<double> dst(static_cast<std::size_t>(dw) * dh);
  const double sx = static_cast<double>(sw) / dw;
  const double sy = static_cast<double>(sh) / dh;
  for (int y = 0; y < dh; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    fy = std::clamp(fy, 0.0, static_cast<double>(sh - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, sh - 1);
    const double wy = fy - y0;
    for (int x = 0; x < dw; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      fx = std::clamp(fx, 0.0, static_cast<double>(sw - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, sw - 1);
      const double wx = fx - x0;
      const double top = src[static_cast<std::size_t>(y0) * sw + x0] * (1 - wx) +
                         src[static_cast<std::size_t>(y0) * sw + x1] * wx;
      const double bot = src[static_cast<std::size_t>(y1) * sw + x0] * (1 - wx) +
                         src[static_cast<std::size_t>(y1) * sw + x1] * wx;
      dst[static_cast<std::size_t>(y) * dw + x] = top * (1 - wy) + bot * wy;
    }
  }
  return dst;
}

}  // namespace detail

/// Bilinear resize. The result is flagged Raw regardless of the input
/// state, since interpolation invalidates SumOne/MinMax.
inline SaliencyMap resize(const SaliencyMap& m, int w, int h) {
  SaliencyMap out(w, h);
  out.values = detail::resize_grid(m.values, m.width, m.height, w, h);
  out.norm_state = NormState::Raw;
  return out;
}

}  // namespace vsal

#endif  // VSAL_SALIENCY_MAP_HPP_
