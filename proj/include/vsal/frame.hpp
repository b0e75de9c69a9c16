#ifndef VSAL_FRAME_HPP_
#define VSAL_FRAME_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "vsal/errors.hpp"
#include "vsal/saliency_map.hpp"

namespace vsal {

/// A decoded video frame: luminance in [0,1], plus two optional chroma
/// channel grids of the same dimensions.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<double> luminance;
  std::optional<std::vector<double>> chroma_a;
  std::optional<std::vector<double>> chroma_b;

  Frame() = default;
  Frame(int w, int h, std::vector<double> lum)
      : width(w), height(h), luminance(std::move(lum)) {}

  bool has_chroma() const { return chroma_a.has_value(); }
};

/// BT.601 luma plus offset Cb/Cr chroma, all in [0,1]. Single place for
/// the color policy.
inline Frame frame_from_rgb(int w, int h, const std::vector<double>& r,
                            const std::vector<double>& g,
                            const std::vector<double>& b) {
  Frame f;
  f.width = w;
  f.height = h;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  f.luminance.resize(n);
  std::vector<double> cb(n), cr(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.luminance[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
    cb[i] = 0.5 + 0.5 * (b[i] - f.luminance[i]) / (1.0 - 0.114);
    cr[i] = 0.5 + 0.5 * (r[i] - f.luminance[i]) / (1.0 - 0.299);
  }
  f.chroma_a = std::move(cb);
  f.chroma_b = std::move(cr);
  return f;
}

namespace detail {

// Separable Gaussian with edge-clamped borders; sigma <= 0 is identity.
// Clamping keeps constant grids exactly constant.
inline std::vector<double> gaussian_blur(const std::vector<double>& src,
                                         int w, int h, double sigma) {
  if (sigma <= 0.0) return src;
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    ksum += kernel[i + radius];
  }
  for (double& k : kernel) k /= ksum;

  std::vector<double> tmp(src.size()), dst(src.size());
  for (int y = 0; y < h; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xi = std::clamp(x + i, 0, w - 1);
        acc += kernel[i + radius] * row[xi];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yi = std::clamp(y + i, 0, h - 1);
        acc += kernel[i + radius] * tmp[static_cast<std::size_t>(yi) * w + x];
      }
      dst[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return dst;
}

}  // namespace detail

}  // namespace vsal

#endif  // VSAL_FRAME_HPP_
