#ifndef VSAL_PATH_SELECTION_HPP_
#define VSAL_PATH_SELECTION_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vsal/errors.hpp"
#include "vsal/saliency_map.hpp"

namespace vsal {

/// M x M symmetric matrix of pairwise predictor similarities in [0,1]
/// with unit diagonal.
struct SimilarityMatrix {
  int m = 0;
  std::vector<double> entries;  // row-major M x M

  SimilarityMatrix() = default;
  explicit SimilarityMatrix(int m_) : m(m_), entries(std::size_t(m_) * m_) {}

  double at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * m + j];
  }
  double& at(int i, int j) {
    return entries[static_cast<std::size_t>(i) * m + j];
  }
};

/// Binary selection vector over M predictors; at least one must be set.
struct SelectionMask {
  std::vector<bool> alpha;

  int count() const {
    int c = 0;
    for (bool b : alpha) c += b;
    return c;
  }
  std::vector<int> selected() const {
    std::vector<int> idx;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i]) idx.push_back(static_cast<int>(i));
    return idx;
  }
  bool operator==(const SelectionMask&) const = default;
};

struct SelectionParams {
  double lambda_d = 0.2;
  double epsilon = 1e-8;
};

/// Average histogram intersection between every pair of predictors:
/// each map is resized to (target_w, target_h), sum-normalized, and the
/// per-pixel minima are summed, then averaged over frames.
inline SimilarityMatrix similarity_matrix(
    const std::vector<std::vector<SaliencyMap>>& maps, int target_w,
    int target_h) {
  if (maps.empty() || maps[0].empty())
    throw EmptyList("similarity_matrix: no maps");
  const int m = static_cast<int>(maps[0].size());
  const std::size_t frames = maps.size();

  SimilarityMatrix sim(m);
  std::vector<std::vector<double>> normed(m);
  for (std::size_t k = 0; k < frames; ++k) {
    for (int i = 0; i < m; ++i)
      normed[i] =
          normalize_sum(resize(maps[k][i], target_w, target_h)).values;
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double inter = 0.0;
        for (std::size_t p = 0; p < normed[i].size(); ++p)
          inter += std::min(normed[i][p], normed[j][p]);
        sim.at(i, j) += inter;
      }
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      sim.at(i, j) /= static_cast<double>(frames);
      sim.at(j, i) = sim.at(i, j);
    }
  return sim;
}

/// How well the unselected predictors are covered by their most similar
/// selected one. Zero when everything is selected.
inline double representativeness(const SelectionMask& alpha,
                                 const SimilarityMatrix& sim,
                                 double epsilon) {
  const int m = sim.m;
  double num = 0.0, den = epsilon;
  for (int i = 0; i < m; ++i) {
    if (alpha.alpha[i]) continue;
    double best = 0.0;
    for (int j = 0; j < m; ++j)
      if (j != i && alpha.alpha[j]) best = std::max(best, sim.at(i, j));
    num += best;
    den += 1.0;
  }
  return num / den;
}

/// Average pairwise dissimilarity among the selected predictors. Zero
/// for singletons.
inline double diversity(const SelectionMask& alpha,
                        const SimilarityMatrix& sim, double epsilon) {
  const int m = sim.m;
  double num = 0.0, den = epsilon;
  for (int i = 0; i < m; ++i) {
    if (!alpha.alpha[i]) continue;
    for (int j = 0; j < m; ++j) {
      if (j == i || !alpha.alpha[j]) continue;
      num += 1.0 - sim.at(i, j);
      den += 1.0;
    }
  }
  return num / den;
}

inline double objective(const SelectionMask& alpha,
                        const SimilarityMatrix& sim,
                        const SelectionParams& params) {
  return representativeness(alpha, sim, params.epsilon) +
         params.lambda_d * diversity(alpha, sim, params.epsilon);
}

namespace detail {

inline SelectionMask mask_from_code(std::uint32_t code, int m) {
  SelectionMask mask;
  mask.alpha.resize(m);
  for (int i = 0; i < m; ++i) mask.alpha[i] = (code >> i) & 1u;
  return mask;
}

// Tie-break: higher objective wins; then fewer selected paths; then the
// lexicographically smallest selected-index sequence.
inline bool mask_better(double obj_a, const SelectionMask& a, double obj_b,
                        const SelectionMask& b) {
  if (obj_a != obj_b) return obj_a > obj_b;
  const int ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return a.selected() < b.selected();
}

}  // namespace detail

/// Enumerates all 2^M - 1 non-empty masks. Guarded at M <= 20.
inline SelectionMask select_exhaustive(const SimilarityMatrix& sim,
                                       const SelectionParams& params) {
  const int m = sim.m;
  if (m > 20) throw TooManyPaths(m);
  SelectionMask best;
  double best_obj = 0.0;
  for (std::uint32_t code = 1; code < (1u << m); ++code) {
    SelectionMask mask = detail::mask_from_code(code, m);
    const double obj = objective(mask, sim, params);
    if (best.alpha.empty() ||
        detail::mask_better(obj, mask, best_obj, best)) {
      best = std::move(mask);
      best_obj = obj;
    }
  }
  return best;
}

/// Local search: start from the best singleton, then repeatedly flip the
/// single path whose addition or removal most improves the objective.
/// Removal moves matter because representativeness rewards not selecting.
inline SelectionMask select_greedy(const SimilarityMatrix& sim,
                                   const SelectionParams& params) {
  const int m = sim.m;
  SelectionMask current;
  current.alpha.assign(m, false);
  current.alpha[0] = true;
  double current_obj = objective(current, sim, params);
  for (int i = 1; i < m; ++i) {
    SelectionMask cand;
    cand.alpha.assign(m, false);
    cand.alpha[i] = true;
    const double obj = objective(cand, sim, params);
    if (detail::mask_better(obj, cand, current_obj, current)) {
      current = std::move(cand);
      current_obj = obj;
    }
  }

  for (;;) {
    SelectionMask best_flip;
    double best_obj = current_obj;
    for (int i = 0; i < m; ++i) {
      SelectionMask cand = current;
      cand.alpha[i] = !cand.alpha[i];
      if (cand.count() == 0) continue;
      const double obj = objective(cand, sim, params);
      if (obj > best_obj) {
        best_flip = std::move(cand);
        best_obj = obj;
      }
    }
    if (best_flip.alpha.empty()) break;
    current = std::move(best_flip);
    current_obj = best_obj;
  }
  return current;
}

}  // namespace vsal

#endif  // VSAL_PATH_SELECTION_HPP_
