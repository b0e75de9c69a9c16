#ifndef VSAL_PREDICTORS_HPP_
#define VSAL_PREDICTORS_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vsal/errors.hpp"
#include "vsal/frame.hpp"
#include "vsal/saliency_map.hpp"

namespace vsal {

enum class Predictor {
  SpectralResidual,
  CenterSurround,
  GlobalContrast,
  FrequencyTuned,
  TemporalDiff,
};

inline constexpr std::array<Predictor, 5> kAllPredictors = {
    Predictor::SpectralResidual, Predictor::CenterSurround,
    Predictor::GlobalContrast, Predictor::FrequencyTuned,
    Predictor::TemporalDiff};

inline std::string_view predictor_name(Predictor p) {
  switch (p) {
    case Predictor::SpectralResidual: return "spectral_residual";
    case Predictor::CenterSurround: return "center_surround";
    case Predictor::GlobalContrast: return "global_contrast";
    case Predictor::FrequencyTuned: return "frequency_tuned";
    case Predictor::TemporalDiff: return "temporal_diff";
  }
  return "unknown";
}

inline Predictor predictor_from_name(std::string_view name) {
  for (Predictor p : kAllPredictors)
    if (predictor_name(p) == name) return p;
  throw std::invalid_argument("unknown predictor: " + std::string(name));
}

inline bool is_temporal(Predictor p) { return p == Predictor::TemporalDiff; }

// Fixed smoothing bandwidths so runs are bit-reproducible.
namespace predictor_defaults {
inline constexpr double kSpectralSmoothSigma = 3.0;   // at working scale
inline constexpr double kTemporalSmoothSigma = 2.0;
inline constexpr double kContrastSmoothSigma = 2.0;
inline constexpr double kFrequencyHeavySigma = 12.0;
inline constexpr double kFrequencyLightSigma = 1.0;
inline constexpr int kSpectralWorkingSide = 64;       // longer side
}  // namespace predictor_defaults

namespace detail {

// Direct DFT, row-column. Grids here are at most 64 on the longer side,
// where O(n^2) per line is cheap and has no radix restrictions.
inline void dft_1d(std::vector<std::complex<double>>& line, bool inverse) {
  const std::size_t n = line.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * M_PI * static_cast<double>(k * j % n) /
                         static_cast<double>(n);
      acc += line[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  line = std::move(out);
}

inline void dft_2d(std::vector<std::complex<double>>& grid, int w, int h,
                   bool inverse) {
  std::vector<std::complex<double>> line;
  for (int y = 0; y < h; ++y) {
    line.assign(grid.begin() + static_cast<std::size_t>(y) * w,
                grid.begin() + static_cast<std::size_t>(y + 1) * w);
    dft_1d(line, inverse);
    std::copy(line.begin(), line.end(),
              grid.begin() + static_cast<std::size_t>(y) * w);
  }
  line.resize(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y)
      line[y] = grid[static_cast<std::size_t>(y) * w + x];
    dft_1d(line, inverse);
    for (int y = 0; y < h; ++y)
      grid[static_cast<std::size_t>(y) * w + x] = line[y];
  }
}

// 3x3 box filter with edge clamping.
inline std::vector<double> box3(const std::vector<double>& src, int w, int h) {
  std::vector<double> dst(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = std::clamp(x + dx, 0, w - 1);
          acc += src[static_cast<std::size_t>(yy) * w + xx];
        }
      }
      dst[static_cast<std::size_t>(y) * w + x] = acc / 9.0;
    }
  }
  return dst;
}

}  // namespace detail

/// Spectral-residual saliency on the luminance channel. The frame is
/// downscaled to a 64-pixel longer side, the log-amplitude spectrum is
/// compared against its 3x3 local average, and the residual is inverted
/// with the original phase. The DC bin and numerically empty bins carry
/// no residual, so flat frames map to exactly zero.
inline SaliencyMap spectral_residual(const Frame& f) {
  if (f.width < 8 || f.height < 8) throw FrameTooSmall(f.width, f.height);

  const int side = predictor_defaults::kSpectralWorkingSide;
  int w = f.width, h = f.height;
  if (std::max(w, h) > side) {
    const double scale = static_cast<double>(side) / std::max(w, h);
    w = std::max(8, static_cast<int>(std::lround(f.width * scale)));
    h = std::max(8, static_cast<int>(std::lround(f.height * scale)));
  }
  const std::vector<double> lum =
      detail::resize_grid(f.luminance, f.width, f.height, w, h);

  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<std::complex<double>> spec(n);
  for (std::size_t i = 0; i < n; ++i) spec[i] = lum[i];
  detail::dft_2d(spec, w, h, false);

  std::vector<double> amp(n);
  double amp_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    amp[i] = std::abs(spec[i]);
    amp_max = std::max(amp_max, amp[i]);
  }
  const double floor = amp_max * 1e-12;

  std::vector<double> log_amp(n);
  for (std::size_t i = 0; i < n; ++i)
    log_amp[i] = std::log(amp[i] + floor + 1e-300);
  const std::vector<double> log_avg = detail::box3(log_amp, w, h);

  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || amp[i] <= floor) {
      spec[i] = 0.0;
      continue;
    }
    const double residual = log_amp[i] - log_avg[i];
    spec[i] *= std::exp(residual) / amp[i];
  }
  detail::dft_2d(spec, w, h, true);

  std::vector<double> sal(n);
  for (std::size_t i = 0; i < n; ++i) sal[i] = std::norm(spec[i]);
  sal = detail::gaussian_blur(sal, w, h,
                              predictor_defaults::kSpectralSmoothSigma);

  SaliencyMap out(f.width, f.height);
  out.values = detail::resize_grid(sal, w, h, f.width, f.height);
  return out;
}

/// Multiscale center-surround contrast: sum over three Gaussian scale
/// pairs of |center - surround| on every channel.
inline SaliencyMap center_surround(const Frame& f) {
  if (f.width < 8 || f.height < 8) throw FrameTooSmall(f.width, f.height);
  static constexpr std::array<std::pair<double, double>, 3> kScales = {
      {{1.0, 4.0}, {2.0, 8.0}, {4.0, 16.0}}};

  SaliencyMap out(f.width, f.height);
  auto accumulate = [&](const std::vector<double>& chan) {
    for (const auto& [sc, ss] : kScales) {
      const std::vector<double> c =
          detail::gaussian_blur(chan, f.width, f.height, sc);
      const std::vector<double> s =
          detail::gaussian_blur(chan, f.width, f.height, ss);
      for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += std::abs(c[i] - s[i]);
    }
  };
  accumulate(f.luminance);
  if (f.chroma_a) accumulate(*f.chroma_a);
  if (f.chroma_b) accumulate(*f.chroma_b);
  return out;
}

/// Global contrast: |luminance - frame mean|, Gaussian-smoothed.
inline SaliencyMap global_contrast(
    const Frame& f, double sigma = predictor_defaults::kContrastSmoothSigma) {
  double mean = 0.0;
  for (double v : f.luminance) mean += v;
  mean /= static_cast<double>(f.luminance.size());

  std::vector<double> sal(f.luminance.size());
  for (std::size_t i = 0; i < sal.size(); ++i)
    sal[i] = std::abs(f.luminance[i] - mean);
  SaliencyMap out(f.width, f.height);
  out.values = detail::gaussian_blur(sal, f.width, f.height, sigma);
  return out;
}

/// Frequency-tuned saliency: Euclidean distance between heavily blurred
/// and lightly blurred channel values. Invariant to a constant offset.
inline SaliencyMap frequency_tuned(const Frame& f) {
  SaliencyMap out(f.width, f.height);
  auto accumulate = [&](const std::vector<double>& chan) {
    const std::vector<double> heavy = detail::gaussian_blur(
        chan, f.width, f.height, predictor_defaults::kFrequencyHeavySigma);
    const std::vector<double> light = detail::gaussian_blur(
        chan, f.width, f.height, predictor_defaults::kFrequencyLightSigma);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      const double d = heavy[i] - light[i];
      out.values[i] += d * d;
    }
  };
  accumulate(f.luminance);
  if (f.chroma_a) accumulate(*f.chroma_a);
  if (f.chroma_b) accumulate(*f.chroma_b);
  for (double& v : out.values) v = std::sqrt(v);
  return out;
}

/// Temporal saliency: smoothed absolute luminance difference between
/// consecutive frames.
inline SaliencyMap temporal_diff(const Frame& curr, const Frame& prev) {
  if (curr.width != prev.width || curr.height != prev.height)
    throw DimensionMismatch("temporal_diff: frame dimensions differ");
  std::vector<double> diff(curr.luminance.size());
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] = std::abs(curr.luminance[i] - prev.luminance[i]);
  SaliencyMap out(curr.width, curr.height);
  out.values =
      detail::gaussian_blur(diff, curr.width, curr.height,
                            predictor_defaults::kTemporalSmoothSigma);
  return out;
}

inline SaliencyMap run_predictor(Predictor p, const Frame& curr,
                                 const Frame* prev) {
  switch (p) {
    case Predictor::SpectralResidual: return spectral_residual(curr);
    case Predictor::CenterSurround: return center_surround(curr);
    case Predictor::GlobalContrast: return global_contrast(curr);
    case Predictor::FrequencyTuned: return frequency_tuned(curr);
    case Predictor::TemporalDiff:
      // First frame has no predecessor: all-zero by convention.
      if (prev == nullptr) return SaliencyMap(curr.width, curr.height);
      return temporal_diff(curr, *prev);
  }
  throw std::invalid_argument("unknown predictor");
}

/// Runs the requested predictors on every frame. Result is indexed
/// [frame][predictor], each map at frame resolution.
inline std::vector<std::vector<SaliencyMap>> run_bank(
    const std::vector<Frame>& frames, const std::vector<Predictor>& which) {
  if (which.empty()) throw EmptyList("run_bank: empty predictor list");
  std::vector<std::vector<SaliencyMap>> maps(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    maps[k].reserve(which.size());
    const Frame* prev = k > 0 ? &frames[k - 1] : nullptr;
    for (Predictor p : which)
      maps[k].push_back(run_predictor(p, frames[k], prev));
  }
  return maps;
}

}  // namespace vsal

#endif  // VSAL_PREDICTORS_HPP_
