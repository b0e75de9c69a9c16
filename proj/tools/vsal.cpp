// Command-line front end chaining the toolkit stages:
//   density  fixations -> ground-truth density maps
//   predict  frames -> predictor saliency maps
//   select   maps or similarity CSV -> predictor subset
//   fuse     spatial + temporal maps -> fused maps
//   eval     predictions vs ground truth -> metric report
//   pipeline all of the above

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vsal/vsal.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> list_pfm(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".pfm")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw vsal::IoError("no .pfm files in " + dir.string());
  return files;
}

std::string frame_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04zu.pfm", k);
  return buf;
}

std::vector<vsal::Predictor> parse_predictors(const std::string& csv) {
  std::vector<vsal::Predictor> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string name =
        csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!name.empty()) out.push_back(vsal::predictor_from_name(name));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw vsal::EmptyList("empty predictor list");
  return out;
}

std::pair<int, int> parse_resolution(const std::string& s) {
  const std::size_t x = s.find('x');
  if (x == std::string::npos)
    throw std::invalid_argument("resolution must be WxH, got " + s);
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

std::vector<vsal::FixationRecord> fixations_for(
    const fs::path& csv_path, const std::string& video_id) {
  auto by_video = vsal::parse_fixation_csv(csv_path);
  const auto it = by_video.find(video_id);
  if (it == by_video.end())
    throw vsal::IoError("no fixations for video '" + video_id + "' in " +
                        csv_path.string());
  return it->second;
}

struct CommonOpts {
  std::string manifest_path;
  std::string fixations_path;
  std::string out_path;
};

int cmd_density(const CommonOpts& opts, double sigma_d_frac, double sigma_t) {
  const auto fixations =
      vsal::parse_fixation_csv(opts.fixations_path);
  const vsal::VideoManifest manifest = vsal::load_manifest(opts.manifest_path);
  const auto it = fixations.find(manifest.video_id);
  const std::vector<vsal::FixationRecord> fix =
      it == fixations.end() ? std::vector<vsal::FixationRecord>{} : it->second;

  vsal::DensityParams dp;
  dp.sigma_d = sigma_d_frac * std::max(manifest.width, manifest.height);
  dp.sigma_t = sigma_t;
  fs::create_directories(opts.out_path);
  for (std::size_t k = 0; k < manifest.frame_paths.size(); ++k) {
    const vsal::SaliencyMap gt = vsal::density_map(
        fix, static_cast<double>(k) / manifest.fps, manifest.width,
        manifest.height, dp);
    vsal::write_map(gt, fs::path(opts.out_path) / frame_name(k),
                    vsal::MapFormat::Pfm);
  }
  std::cout << "wrote " << manifest.frame_paths.size() << " density maps to "
            << opts.out_path << "\n";
  return 0;
}

int cmd_predict(const CommonOpts& opts, const std::string& predictors_csv) {
  const vsal::VideoManifest manifest = vsal::load_manifest(opts.manifest_path);
  const std::vector<vsal::Predictor> which = parse_predictors(predictors_csv);
  std::vector<vsal::Frame> frames;
  for (const auto& p : manifest.frame_paths)
    frames.push_back(vsal::load_frame(p));
  const auto bank = vsal::run_bank(frames, which);
  for (std::size_t i = 0; i < which.size(); ++i) {
    const fs::path dir =
        fs::path(opts.out_path) / std::string(vsal::predictor_name(which[i]));
    fs::create_directories(dir);
    for (std::size_t k = 0; k < bank.size(); ++k)
      vsal::write_map(bank[k][i], dir / frame_name(k), vsal::MapFormat::Pfm);
  }
  std::cout << "wrote " << bank.size() * which.size() << " maps to "
            << opts.out_path << "\n";
  return 0;
}

int cmd_select(const std::string& similarity_path,
               const std::string& maps_dir, const std::string& resolution,
               double lambda_d, double epsilon, const std::string& solver,
               const std::string& out_path) {
  vsal::SimilarityMatrix sim;
  std::vector<std::string> names;
  if (!similarity_path.empty()) {
    sim = vsal::read_similarity_csv(similarity_path, &names);
  } else {
    const auto [w, h] = parse_resolution(resolution);
    std::vector<std::vector<fs::path>> per_pred;
    for (const auto& e : fs::directory_iterator(maps_dir))
      if (e.is_directory()) {
        names.push_back(e.path().filename().string());
        per_pred.push_back(list_pfm(e.path()));
      }
    std::sort(names.begin(), names.end());
    std::sort(per_pred.begin(), per_pred.end());
    if (per_pred.empty())
      throw vsal::IoError("no predictor directories in " + maps_dir);
    const std::size_t frames = per_pred[0].size();
    std::vector<std::vector<vsal::SaliencyMap>> maps(frames);
    for (std::size_t k = 0; k < frames; ++k)
      for (const auto& files : per_pred)
        maps[k].push_back(vsal::read_map_pfm(files.at(k)));
    sim = vsal::similarity_matrix(maps, w, h);
  }

  const vsal::SelectionParams params{lambda_d, epsilon};
  const vsal::SelectionMask mask = solver == "greedy"
                                       ? vsal::select_greedy(sim, params)
                                       : vsal::select_exhaustive(sim, params);
  std::cout << "objective " << vsal::objective(mask, sim, params)
            << ", selected:";
  for (int i : mask.selected())
    std::cout << " "
              << (i < static_cast<int>(names.size()) ? names[i]
                                                     : std::to_string(i));
  std::cout << "\n";
  if (!out_path.empty()) {
    nlohmann::json j;
    j["mask"] = std::vector<int>();
    for (bool b : mask.alpha) j["mask"].push_back(b ? 1 : 0);
    j["selected"] = nlohmann::json::array();
    for (int i : mask.selected())
      j["selected"].push_back(i < static_cast<int>(names.size())
                                  ? names[i]
                                  : std::to_string(i));
    j["objective"] = vsal::objective(mask, sim, params);
    vsal::write_text(out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_fuse(const std::string& spatial_dir, const std::string& temporal_dir,
             double omega, double epsilon, const std::string& out_path) {
  const auto spatial = list_pfm(spatial_dir);
  const auto temporal = list_pfm(temporal_dir);
  if (spatial.size() != temporal.size())
    throw vsal::DimensionMismatch("spatial/temporal frame counts differ");
  fs::create_directories(out_path);
  const vsal::FusionParams params{omega, epsilon};
  for (std::size_t k = 0; k < spatial.size(); ++k) {
    const vsal::SaliencyMap fused =
        vsal::fuse(vsal::read_map_pfm(spatial[k]),
                   vsal::read_map_pfm(temporal[k]), params);
    vsal::write_map(fused, fs::path(out_path) / frame_name(k),
                    vsal::MapFormat::Pfm);
  }
  std::cout << "wrote " << spatial.size() << " fused maps to " << out_path
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"video saliency ensemble toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  double sigma_d_frac = 0.03, sigma_t = 0.1;
  double lambda_d = 0.2, omega = 2.1, epsilon = 1e-8;
  std::string resolution = "320x320";
  std::string solver = "exhaustive";
  std::string predictors_csv =
      "spectral_residual,center_surround,global_contrast,frequency_tuned,"
      "temporal_diff";
  std::string report_format = "json";
  std::string similarity_path, maps_dir, spatial_dir, temporal_dir, pred_dir,
      gt_dir;

  auto* density = app.add_subcommand("density", "fixations -> density maps");
  density->add_option("--manifest", opts.manifest_path)->required();
  density->add_option("--fixations", opts.fixations_path)->required();
  density->add_option("--out", opts.out_path)->required();
  density->add_option("--sigma-d-frac", sigma_d_frac);
  density->add_option("--sigma-t", sigma_t);

  auto* predict = app.add_subcommand("predict", "frames -> predictor maps");
  predict->add_option("--manifest", opts.manifest_path)->required();
  predict->add_option("--out", opts.out_path)->required();
  predict->add_option("--predictors", predictors_csv);

  auto* select = app.add_subcommand("select", "maps/similarity -> subset");
  select->add_option("--similarity", similarity_path);
  select->add_option("--maps-dir", maps_dir);
  select->add_option("--resolution", resolution);
  select->add_option("--lambda-d", lambda_d);
  select->add_option("--epsilon", epsilon);
  select->add_option("--solver", solver)
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  select->add_option("--out", opts.out_path);

  auto* fusecmd = app.add_subcommand("fuse", "spatial+temporal -> fused maps");
  fusecmd->add_option("--spatial", spatial_dir)->required();
  fusecmd->add_option("--temporal", temporal_dir)->required();
  fusecmd->add_option("--out", opts.out_path)->required();
  fusecmd->add_option("--omega", omega);
  fusecmd->add_option("--epsilon", epsilon);

  auto* evalcmd = app.add_subcommand("eval", "pred vs gt -> metric report");
  evalcmd->add_option("--manifest", opts.manifest_path)->required();
  evalcmd->add_option("--fixations", opts.fixations_path)->required();
  evalcmd->add_option("--pred", pred_dir)->required();
  evalcmd->add_option("--gt", gt_dir);
  evalcmd->add_option("--out", opts.out_path)->required();
  evalcmd->add_option("--sigma-d-frac", sigma_d_frac);
  evalcmd->add_option("--sigma-t", sigma_t);
  evalcmd->add_option("--report", report_format)
      ->check(CLI::IsMember({"json", "csv"}));

  auto* pipeline = app.add_subcommand("pipeline", "all stages");
  pipeline->add_option("--manifest", opts.manifest_path)->required();
  pipeline->add_option("--fixations", opts.fixations_path)->required();
  pipeline->add_option("--out", opts.out_path)->required();
  pipeline->add_option("--sigma-d-frac", sigma_d_frac);
  pipeline->add_option("--sigma-t", sigma_t);
  pipeline->add_option("--lambda-d", lambda_d);
  pipeline->add_option("--omega", omega);
  pipeline->add_option("--epsilon", epsilon);
  pipeline->add_option("--resolution", resolution);
  pipeline->add_option("--solver", solver)
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  pipeline->add_option("--predictors", predictors_csv);
  pipeline->add_option("--report", report_format)
      ->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (density->parsed())
      return cmd_density(opts, sigma_d_frac, sigma_t);
    if (predict->parsed()) return cmd_predict(opts, predictors_csv);
    if (select->parsed()) {
      if (similarity_path.empty() == maps_dir.empty()) {
        std::cerr << "select: provide exactly one of --similarity or "
                     "--maps-dir\n";
        return 2;
      }
      return cmd_select(similarity_path, maps_dir, resolution, lambda_d,
                        epsilon, solver, opts.out_path);
    }
    if (fusecmd->parsed())
      return cmd_fuse(spatial_dir, temporal_dir, omega, epsilon,
                      opts.out_path);
    if (evalcmd->parsed()) {
      // Fail fast: parse fixations before decoding any frame.
      const vsal::VideoManifest manifest =
          vsal::load_manifest(opts.manifest_path);
      const std::vector<vsal::FixationRecord> fix =
          fixations_for(opts.fixations_path, manifest.video_id);

      const auto pred_files = list_pfm(pred_dir);
      std::vector<vsal::SaliencyMap> preds;
      for (const auto& p : pred_files) preds.push_back(vsal::read_map_pfm(p));

      std::vector<vsal::SaliencyMap> gts;
      if (!gt_dir.empty()) {
        for (const auto& p : list_pfm(gt_dir))
          gts.push_back(vsal::read_map_pfm(p));
      } else {
        vsal::DensityParams dp;
        dp.sigma_d = sigma_d_frac * std::max(manifest.width, manifest.height);
        dp.sigma_t = sigma_t;
        for (std::size_t k = 0; k < preds.size(); ++k)
          gts.push_back(vsal::density_map(
              fix, static_cast<double>(k) / manifest.fps, manifest.width,
              manifest.height, dp));
      }
      if (gts.size() != preds.size())
        throw vsal::DimensionMismatch("pred/gt frame counts differ");

      const auto per_frame =
          vsal::fixations_per_frame(fix, manifest.fps, preds.size());
      std::vector<vsal::PixelCoord> pool;
      for (const auto& fr : per_frame)
        pool.insert(pool.end(), fr.begin(), fr.end());
      const vsal::MetricReport report =
          vsal::evaluate_sequence(preds, gts, per_frame, pool);
      if (report_format == "json")
        vsal::write_text(opts.out_path,
                         vsal::report_to_json(report).dump(2) + "\n");
      else
        vsal::write_text(opts.out_path, vsal::report_to_csv(report));
      std::cout << "wrote report to " << opts.out_path << "\n";
      return 0;
    }
    if (pipeline->parsed()) {
      // Fail fast: validate both inputs before any predictor runs.
      auto by_video = vsal::parse_fixation_csv(opts.fixations_path);
      const vsal::VideoManifest manifest =
          vsal::load_manifest(opts.manifest_path);
      const auto it = by_video.find(manifest.video_id);
      if (it == by_video.end())
        throw vsal::IoError("no fixations for video '" + manifest.video_id +
                            "' in " + opts.fixations_path);

      vsal::RunConfig config;
      config.sigma_d_frac = sigma_d_frac;
      config.sigma_t = sigma_t;
      config.lambda_d = lambda_d;
      config.omega = omega;
      config.epsilon = epsilon;
      std::tie(config.working_w, config.working_h) =
          parse_resolution(resolution);
      config.predictors = parse_predictors(predictors_csv);
      config.solver = solver == "greedy" ? vsal::Solver::Greedy
                                         : vsal::Solver::Exhaustive;
      config.out_dir = opts.out_path;

      const vsal::PipelineResult result =
          vsal::run_pipeline(config, manifest, it->second);
      std::cout << "selected:";
      for (vsal::Predictor p : result.selected)
        std::cout << " " << vsal::predictor_name(p);
      std::cout << "\n";
      auto show = [](const char* name, const std::optional<double>& v) {
        std::cout << name << " = ";
        if (v)
          std::cout << *v;
        else
          std::cout << "n/a";
        std::cout << "\n";
      };
      show("AUC ", result.report.auc);
      show("sAUC", result.report.sauc);
      show("NSS ", result.report.nss);
      show("SIM ", result.report.sim);
      show("CC  ", result.report.cc);
      std::cout << "artifacts under " << opts.out_path << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
