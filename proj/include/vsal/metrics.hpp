#ifndef VSAL_METRICS_HPP_
#define VSAL_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "vsal/errors.hpp"
#include "vsal/saliency_map.hpp"

namespace vsal {

struct PixelCoord {
  int x = 0;
  int y = 0;
  auto operator<=>(const PixelCoord&) const = default;
};

namespace detail {

// Saliency values at the distinct fixated pixels (positives).
inline std::vector<double> fixated_values(const SaliencyMap& pred,
                                          const std::vector<PixelCoord>& fix,
                                          std::set<PixelCoord>* pixels) {
  std::set<PixelCoord> uniq;
  for (const PixelCoord& p : fix)
    if (p.x >= 0 && p.x < pred.width && p.y >= 0 && p.y < pred.height)
      uniq.insert(p);
  if (uniq.empty()) throw NoFixations();
  std::vector<double> vals;
  vals.reserve(uniq.size());
  for (const PixelCoord& p : uniq) vals.push_back(pred.at(p.x, p.y));
  if (pixels) *pixels = std::move(uniq);
  return vals;
}

// ROC area with thresholds swept over the distinct positive values
// (plus +inf), trapezoidal rule over (FPR, TPR).
inline double roc_area(std::vector<double> pos, std::vector<double> neg) {
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  std::vector<double> thresholds = pos;
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  const double np = static_cast<double>(pos.size());
  const double nn = static_cast<double>(neg.size());
  std::vector<std::pair<double, double>> curve;  // (FPR, TPR)
  curve.emplace_back(0.0, 0.0);
  for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
    const double theta = *it;
    const double tp =
        static_cast<double>(pos.end() -
                            std::lower_bound(pos.begin(), pos.end(), theta));
    const double fp =
        static_cast<double>(neg.end() -
                            std::lower_bound(neg.begin(), neg.end(), theta));
    curve.emplace_back(fp / nn, tp / np);
  }
  curve.emplace_back(1.0, 1.0);

  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    area += (curve[i].first - curve[i - 1].first) *
            (curve[i].second + curve[i - 1].second) * 0.5;
  return area;
}

}  // namespace detail

/// AUC-Judd: positives are the fixated pixels, negatives all remaining
/// pixels of the map.
inline double auc(const SaliencyMap& pred,
                  const std::vector<PixelCoord>& fixations) {
  std::set<PixelCoord> fixated;
  std::vector<double> pos = detail::fixated_values(pred, fixations, &fixated);
  std::vector<double> neg;
  neg.reserve(pred.size() - fixated.size());
  for (int y = 0; y < pred.height; ++y)
    for (int x = 0; x < pred.width; ++x)
      if (!fixated.contains({x, y})) neg.push_back(pred.at(x, y));
  return detail::roc_area(std::move(pos), std::move(neg));
}

/// Shuffled AUC: negatives are drawn from a pool of fixations from other
/// videos/frames instead of all non-fixated pixels.
inline double sauc(const SaliencyMap& pred,
                   const std::vector<PixelCoord>& fixations,
                   const std::vector<PixelCoord>& shuffle_pool) {
  if (shuffle_pool.empty()) throw EmptyPool();
  std::set<PixelCoord> fixated;
  std::vector<double> pos = detail::fixated_values(pred, fixations, &fixated);
  std::set<PixelCoord> pool;
  for (const PixelCoord& p : shuffle_pool)
    if (p.x >= 0 && p.x < pred.width && p.y >= 0 && p.y < pred.height &&
        !fixated.contains(p))
      pool.insert(p);
  if (pool.empty()) throw EmptyPool();
  std::vector<double> neg;
  neg.reserve(pool.size());
  for (const PixelCoord& p : pool) neg.push_back(pred.at(p.x, p.y));
  return detail::roc_area(std::move(pos), std::move(neg));
}

/// Mean standardized (zero mean, unit population deviation) saliency at
/// the fixations. Constant maps score 0 by convention.
inline double nss(const SaliencyMap& pred,
                  const std::vector<PixelCoord>& fixations) {
  detail::fixated_values(pred, fixations, nullptr);  // bounds check
  if (pred.max_value() == pred.min_value()) return 0.0;
  double mean = 0.0;
  for (double v : pred.values) mean += v;
  mean /= static_cast<double>(pred.size());
  double var = 0.0;
  for (double v : pred.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(pred.size());
  if (var == 0.0) return 0.0;
  const double sd = std::sqrt(var);

  double acc = 0.0;
  std::size_t n = 0;
  for (const PixelCoord& p : fixations) {
    if (p.x < 0 || p.x >= pred.width || p.y < 0 || p.y >= pred.height)
      continue;
    acc += (pred.at(p.x, p.y) - mean) / sd;
    ++n;
  }
  return acc / static_cast<double>(n);
}

/// Histogram intersection of the two maps as probability distributions.
inline double sim(const SaliencyMap& pred, const SaliencyMap& gt) {
  if (pred.width != gt.width || pred.height != gt.height)
    throw DimensionMismatch("sim: map dimensions differ");
  const SaliencyMap p = normalize_sum(pred);
  const SaliencyMap q = normalize_sum(gt);
  double s = 0.0;
  for (std::size_t i = 0; i < p.values.size(); ++i)
    s += std::min(p.values[i], q.values[i]);
  return s;
}

/// Pearson correlation over pixels.
inline double cc(const SaliencyMap& pred, const SaliencyMap& gt) {
  if (pred.width != gt.width || pred.height != gt.height)
    throw DimensionMismatch("cc: map dimensions differ");
  const std::size_t n = pred.size();
  double mp = 0.0, mg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mp += pred.values[i];
    mg += gt.values[i];
  }
  mp /= static_cast<double>(n);
  mg /= static_cast<double>(n);
  double spg = 0.0, spp = 0.0, sgg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dp = pred.values[i] - mp;
    const double dg = gt.values[i] - mg;
    spg += dp * dg;
    spp += dp * dp;
    sgg += dg * dg;
  }
  if (spp == 0.0 || sgg == 0.0) throw ZeroVariance();
  return spg / std::sqrt(spp * sgg);
}

struct FrameMetrics {
  std::optional<double> auc, sauc, nss, sim, cc;
};

struct MetricReport {
  std::optional<double> auc, sauc, nss, sim, cc;  // means over valid frames
  std::vector<FrameMetrics> per_frame;
};

/// Per-frame metrics plus their means. AUC/sAUC/NSS are skipped on frames
/// without fixations; SIM/CC are skipped only where undefined (all-zero
/// or constant ground truth). Ground truth is resized to the prediction
/// resolution.
inline MetricReport evaluate_sequence(
    const std::vector<SaliencyMap>& preds, const std::vector<SaliencyMap>& gts,
    const std::vector<std::vector<PixelCoord>>& fixations,
    const std::vector<PixelCoord>& pool) {
  if (preds.empty()) throw EmptyList("evaluate_sequence: no frames");
  if (preds.size() != gts.size() || preds.size() != fixations.size())
    throw DimensionMismatch("evaluate_sequence: misaligned frame counts");

  MetricReport report;
  report.per_frame.resize(preds.size());
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const SaliencyMap& pred = preds[k];
    SaliencyMap gt = gts[k];
    if (gt.width != pred.width || gt.height != pred.height)
      gt = resize(gt, pred.width, pred.height);
    FrameMetrics& fm = report.per_frame[k];
    if (!fixations[k].empty()) {
      fm.auc = auc(pred, fixations[k]);
      fm.nss = nss(pred, fixations[k]);
      try {
        fm.sauc = sauc(pred, fixations[k], pool);
      } catch (const EmptyPool&) {
      }
    }
    try {
      fm.sim = sim(pred, gt);
    } catch (const AllZeroMap&) {
    }
    try {
      fm.cc = cc(pred, gt);
    } catch (const ZeroVariance&) {
    }
  }

  auto mean_of = [&](std::optional<double> FrameMetrics::* field)
      -> std::optional<double> {
    double acc = 0.0;
    int n = 0;
    for (const FrameMetrics& fm : report.per_frame)
      if (fm.*field) {
        acc += *(fm.*field);
        ++n;
      }
    if (n == 0) return std::nullopt;
    return acc / n;
  };
  report.auc = mean_of(&FrameMetrics::auc);
  report.sauc = mean_of(&FrameMetrics::sauc);
  report.nss = mean_of(&FrameMetrics::nss);
  report.sim = mean_of(&FrameMetrics::sim);
  report.cc = mean_of(&FrameMetrics::cc);
  return report;
}

}  // namespace vsal

#endif  // VSAL_METRICS_HPP_
