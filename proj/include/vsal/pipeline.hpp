#ifndef VSAL_PIPELINE_HPP_
#define VSAL_PIPELINE_HPP_

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsal/errors.hpp"
#include "vsal/fixation_density.hpp"
#include "vsal/io.hpp"
#include "vsal/metrics.hpp"
#include "vsal/path_selection.hpp"
#include "vsal/predictors.hpp"
#include "vsal/st_fusion.hpp"

namespace vsal {

enum class Solver { Exhaustive, Greedy };

struct RunConfig {
  double sigma_d_frac = 0.03;
  double sigma_t = 0.1;
  double lambda_d = 0.2;
  double omega = 2.1;
  double epsilon = 1e-8;
  int working_w = 320;
  int working_h = 320;
  std::vector<Predictor> predictors{kAllPredictors.begin(),
                                    kAllPredictors.end()};
  Solver solver = Solver::Exhaustive;
  std::filesystem::path out_dir;
  bool write_artifacts = true;
};

struct PipelineResult {
  std::vector<SaliencyMap> ground_truth;
  std::vector<Predictor> spatial_predictors;
  SimilarityMatrix similarity;
  SelectionMask mask;
  std::vector<Predictor> selected;
  std::vector<SaliencyMap> spatial;
  std::vector<SaliencyMap> fused;
  std::vector<double> lambdas;  // per-frame blend weight actually applied
  MetricReport report;
};

namespace detail {

inline std::string frame_file(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04zu.pfm", k);
  return buf;
}

}  // namespace detail

/// Fixations binned to frames by timestamp, rounded to pixel centers.
inline std::vector<std::vector<PixelCoord>> fixations_per_frame(
    const std::vector<FixationRecord>& fixations, double fps,
    std::size_t frame_count) {
  std::vector<std::vector<PixelCoord>> out(frame_count);
  for (const FixationRecord& f : fixations) {
    const auto k = static_cast<std::size_t>(f.t_f * fps);
    if (k >= frame_count) continue;
    out[k].push_back({static_cast<int>(std::lround(f.x_f)),
                      static_cast<int>(std::lround(f.y_f))});
  }
  return out;
}

/// All stages end to end: ground-truth density maps, predictor bank,
/// similarity + selection over the spatial predictors, spatial ensemble,
/// spatiotemporal fusion against the temporal predictor, and evaluation.
/// Artifacts are written under config.out_dir when requested.
inline PipelineResult run_pipeline(const RunConfig& config,
                                   const VideoManifest& manifest,
                                   const std::vector<FixationRecord>& fixations) {
  namespace fs = std::filesystem;
  if (config.predictors.empty())
    throw EmptyList("pipeline: empty predictor list");

  std::vector<Frame> frames;
  frames.reserve(manifest.frame_paths.size());
  for (const auto& p : manifest.frame_paths) frames.push_back(load_frame(p));
  const std::size_t n_frames = frames.size();

  PipelineResult result;

  // Stage 1: ground truth from fixations.
  DensityParams dp;
  dp.sigma_d = config.sigma_d_frac * std::max(manifest.width, manifest.height);
  dp.sigma_t = config.sigma_t;
  result.ground_truth.reserve(n_frames);
  for (std::size_t k = 0; k < n_frames; ++k)
    result.ground_truth.push_back(
        density_map(fixations, static_cast<double>(k) / manifest.fps,
                    manifest.width, manifest.height, dp));

  // Stage 2: predictor bank.
  const std::vector<std::vector<SaliencyMap>> bank =
      run_bank(frames, config.predictors);

  std::vector<int> spatial_idx;
  int temporal_idx = -1;
  for (std::size_t i = 0; i < config.predictors.size(); ++i) {
    if (is_temporal(config.predictors[i]))
      temporal_idx = static_cast<int>(i);
    else
      spatial_idx.push_back(static_cast<int>(i));
  }
  if (spatial_idx.empty())
    throw EmptyList("pipeline: no spatial predictor in list");
  for (int i : spatial_idx)
    result.spatial_predictors.push_back(config.predictors[i]);

  // Stage 3: similarity + selection over the spatial predictors. Frames
  // where some predictor produced an all-zero map (e.g. flat frames)
  // cannot be sum-normalized and are left out of the average.
  std::vector<std::vector<SaliencyMap>> sel_maps;
  for (std::size_t k = 0; k < n_frames; ++k) {
    bool usable = true;
    for (int i : spatial_idx)
      if (bank[k][i].all_zero()) usable = false;
    if (!usable) continue;
    std::vector<SaliencyMap> row;
    for (int i : spatial_idx) row.push_back(bank[k][i]);
    sel_maps.push_back(std::move(row));
  }
  if (sel_maps.empty())
    throw AllZeroMap("pipeline: every frame has an all-zero predictor map");
  result.similarity =
      similarity_matrix(sel_maps, config.working_w, config.working_h);

  const SelectionParams sp{config.lambda_d, config.epsilon};
  result.mask = config.solver == Solver::Exhaustive
                    ? select_exhaustive(result.similarity, sp)
                    : select_greedy(result.similarity, sp);
  for (int i : result.mask.selected())
    result.selected.push_back(config.predictors[spatial_idx[i]]);

  // Stage 4: spatial ensemble of the selected predictors.
  result.spatial.reserve(n_frames);
  for (std::size_t k = 0; k < n_frames; ++k) {
    std::vector<SaliencyMap> chosen;
    for (int i : result.mask.selected()) chosen.push_back(bank[k][spatial_idx[i]]);
    result.spatial.push_back(spatial_ensemble_fuse(chosen));
  }

  // Stage 5: spatiotemporal fusion.
  const FusionParams fp{config.omega, config.epsilon};
  result.fused.reserve(n_frames);
  result.lambdas.reserve(n_frames);
  for (std::size_t k = 0; k < n_frames; ++k) {
    if (temporal_idx < 0) {
      result.fused.push_back(result.spatial[k]);
      result.lambdas.push_back(0.0);
      continue;
    }
    const SaliencyMap& temporal = bank[k][temporal_idx];
    double lambda = 0.0;
    result.fused.push_back(fuse(result.spatial[k], temporal, fp, &lambda));
    result.lambdas.push_back(lambda);
  }

  // Stage 6: evaluation of the fused maps against the ground truth.
  const std::vector<std::vector<PixelCoord>> per_frame_fix =
      fixations_per_frame(fixations, manifest.fps, n_frames);
  std::vector<PixelCoord> pool;
  for (const auto& fr : per_frame_fix)
    pool.insert(pool.end(), fr.begin(), fr.end());
  result.report = evaluate_sequence(result.fused, result.ground_truth,
                                    per_frame_fix, pool);

  if (!config.write_artifacts) return result;

  const fs::path out = config.out_dir;
  fs::create_directories(out / "gt");
  fs::create_directories(out / "spatial");
  fs::create_directories(out / "fused");
  for (std::size_t i = 0; i < config.predictors.size(); ++i)
    fs::create_directories(
        out / "predictors" /
        std::string(predictor_name(config.predictors[i])));

  for (std::size_t k = 0; k < n_frames; ++k) {
    write_map(result.ground_truth[k], out / "gt" / detail::frame_file(k),
              MapFormat::Pfm);
    write_map(result.spatial[k], out / "spatial" / detail::frame_file(k),
              MapFormat::Pfm);
    write_map(result.fused[k], out / "fused" / detail::frame_file(k),
              MapFormat::Pfm);
    for (std::size_t i = 0; i < config.predictors.size(); ++i)
      write_map(bank[k][i],
                out / "predictors" /
                    std::string(predictor_name(config.predictors[i])) /
                    detail::frame_file(k),
                MapFormat::Pfm);
  }

  std::vector<std::string> spatial_names;
  for (Predictor p : result.spatial_predictors)
    spatial_names.emplace_back(predictor_name(p));
  write_similarity_csv(result.similarity, spatial_names,
                       out / "similarity.csv");

  nlohmann::json selection;
  selection["mask"] = std::vector<int>();
  for (bool b : result.mask.alpha) selection["mask"].push_back(b ? 1 : 0);
  selection["selected"] = nlohmann::json::array();
  for (Predictor p : result.selected)
    selection["selected"].push_back(std::string(predictor_name(p)));
  selection["objective"] = objective(result.mask, result.similarity, sp);
  write_text(out / "selection.json", selection.dump(2) + "\n");

  write_text(out / "report.json", report_to_json(result.report).dump(2) + "\n");
  write_text(out / "report.csv", report_to_csv(result.report));

  nlohmann::json run;
  run["version"] = "1.0.0";
  run["video_id"] = manifest.video_id;
  run["sigma_d_frac"] = config.sigma_d_frac;
  run["sigma_t"] = config.sigma_t;
  run["lambda_d"] = config.lambda_d;
  run["omega"] = config.omega;
  run["epsilon"] = config.epsilon;
  run["working_resolution"] = {config.working_w, config.working_h};
  run["solver"] =
      config.solver == Solver::Exhaustive ? "exhaustive" : "greedy";
  run["predictors"] = nlohmann::json::array();
  for (Predictor p : config.predictors)
    run["predictors"].push_back(std::string(predictor_name(p)));
  run["lambda_per_frame"] = result.lambdas;
  write_text(out / "run_manifest.json", run.dump(2) + "\n");

  return result;
}

}  // namespace vsal

#endif  // VSAL_PIPELINE_HPP_
