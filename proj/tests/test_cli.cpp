// End-to-end checks of the command-line tool: the staged subcommands must
// reproduce what the one-shot pipeline writes.
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "support/synthetic.hpp"
#include "vsal/io.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(VSAL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  return slurp(a) == slurp(b);
}

// Shared fixture: one synthetic video on disk plus a full pipeline run.
struct CliWorkspace {
  fs::path dir;
  fs::path manifest;
  fs::path fixations;
  fs::path pipe_out;
  std::size_t n_frames = 8;

  CliWorkspace() {
    dir = fs::temp_directory_path() / "vsal_cli_test";
    fs::remove_all(dir);
    const synth::BlobVideo video =
        synth::make_blob_video(static_cast<int>(n_frames));
    manifest = synth::write_video_to_disk(video, dir / "video");
    fixations = dir / "video" / "fixations.csv";
    pipe_out = dir / "pipe";
    REQUIRE(run_cli("pipeline --manifest " + manifest.string() +
                    " --fixations " + fixations.string() + " --out " +
                    pipe_out.string()) == 0);
  }
};

CliWorkspace& workspace() {
  static CliWorkspace ws;
  return ws;
}

}  // namespace

TEST_CASE("pipeline writes the full artifact tree") {
  const CliWorkspace& ws = workspace();
  for (const char* sub : {"gt", "spatial", "fused"})
    for (std::size_t k = 0; k < ws.n_frames; ++k) {
      char name[32];
      std::snprintf(name, sizeof(name), "frame_%04zu.pfm", k);
      CHECK(fs::exists(ws.pipe_out / sub / name));
    }
  for (const char* p : {"spectral_residual", "center_surround",
                        "global_contrast", "frequency_tuned", "temporal_diff"})
    CHECK(fs::exists(ws.pipe_out / "predictors" / p / "frame_0000.pfm"));
  CHECK(fs::exists(ws.pipe_out / "similarity.csv"));
  CHECK(fs::exists(ws.pipe_out / "selection.json"));
  CHECK(fs::exists(ws.pipe_out / "report.json"));
  CHECK(fs::exists(ws.pipe_out / "report.csv"));
  CHECK(fs::exists(ws.pipe_out / "run_manifest.json"));
}

TEST_CASE("density subcommand reproduces the pipeline ground truth") {
  const CliWorkspace& ws = workspace();
  const fs::path out = ws.dir / "gt_stage";
  REQUIRE(run_cli("density --manifest " + ws.manifest.string() +
                  " --fixations " + ws.fixations.string() + " --out " +
                  out.string()) == 0);
  for (std::size_t k = 0; k < ws.n_frames; ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.pfm", k);
    CHECK(same_bytes(out / name, ws.pipe_out / "gt" / name));
  }
}

TEST_CASE("predict subcommand reproduces the pipeline predictor maps") {
  const CliWorkspace& ws = workspace();
  const fs::path out = ws.dir / "pred_stage";
  REQUIRE(run_cli("predict --manifest " + ws.manifest.string() + " --out " +
                  out.string()) == 0);
  for (const char* p : {"spectral_residual", "center_surround",
                        "global_contrast", "frequency_tuned", "temporal_diff"})
    for (std::size_t k = 0; k < ws.n_frames; ++k) {
      char name[32];
      std::snprintf(name, sizeof(name), "frame_%04zu.pfm", k);
      CHECK(same_bytes(out / p / name,
                       ws.pipe_out / "predictors" / p / name));
    }
}

TEST_CASE("select subcommand agrees with the pipeline selection") {
  const CliWorkspace& ws = workspace();
  // Spatial predictors only, matching what the pipeline selects over.
  const fs::path maps = ws.dir / "spatial_stage";
  REQUIRE(run_cli("predict --manifest " + ws.manifest.string() + " --out " +
                  maps.string() +
                  " --predictors spectral_residual,center_surround,"
                  "global_contrast,frequency_tuned") == 0);
  const fs::path out = ws.dir / "selection_stage.json";
  REQUIRE(run_cli("select --maps-dir " + maps.string() + " --out " +
                  out.string()) == 0);

  // The select subcommand orders predictors alphabetically while the
  // pipeline keeps declaration order, so compare the selected sets.
  auto selected_set = [](const nlohmann::json& j) {
    std::vector<std::string> names = j["selected"];
    std::sort(names.begin(), names.end());
    return names;
  };
  const nlohmann::json staged = nlohmann::json::parse(slurp(out));
  const nlohmann::json piped =
      nlohmann::json::parse(slurp(ws.pipe_out / "selection.json"));
  CHECK(selected_set(staged) == selected_set(piped));

  // Selection straight from the pipeline's similarity CSV matches too.
  const fs::path from_csv = ws.dir / "selection_csv.json";
  REQUIRE(run_cli("select --similarity " +
                  (ws.pipe_out / "similarity.csv").string() + " --out " +
                  from_csv.string()) == 0);
  CHECK(selected_set(nlohmann::json::parse(slurp(from_csv))) ==
        selected_set(piped));
}

TEST_CASE("fuse subcommand reproduces the pipeline fused maps") {
  const CliWorkspace& ws = workspace();
  const fs::path out = ws.dir / "fused_stage";
  REQUIRE(run_cli("fuse --spatial " + (ws.pipe_out / "spatial").string() +
                  " --temporal " +
                  (ws.pipe_out / "predictors" / "temporal_diff").string() +
                  " --out " + out.string()) == 0);
  for (std::size_t k = 0; k < ws.n_frames; ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.pfm", k);
    // Staged fusion starts from float32 map files, so allow float rounding.
    const vsal::SaliencyMap staged = vsal::read_map_pfm(out / name);
    const vsal::SaliencyMap piped =
        vsal::read_map_pfm(ws.pipe_out / "fused" / name);
    REQUIRE(staged.values.size() == piped.values.size());
    for (std::size_t i = 0; i < staged.values.size(); ++i)
      CHECK(staged.values[i] == Catch::Approx(piped.values[i]).margin(1e-5));
  }
}

TEST_CASE("eval subcommand agrees with the pipeline report") {
  const CliWorkspace& ws = workspace();
  const fs::path out = ws.dir / "report_stage.json";
  REQUIRE(run_cli("eval --manifest " + ws.manifest.string() +
                  " --fixations " + ws.fixations.string() + " --pred " +
                  (ws.pipe_out / "fused").string() + " --gt " +
                  (ws.pipe_out / "gt").string() + " --out " + out.string()) ==
          0);
  const nlohmann::json staged = nlohmann::json::parse(slurp(out));
  const nlohmann::json piped =
      nlohmann::json::parse(slurp(ws.pipe_out / "report.json"));
  for (const char* metric : {"auc", "sauc", "nss", "sim", "cc"}) {
    REQUIRE(!staged[metric].is_null());
    // eval reads float32 map files, so metrics match only approximately.
    CHECK(staged[metric].get<double>() ==
          Catch::Approx(piped[metric].get<double>()).margin(1e-3));
  }

  const fs::path csv_out = ws.dir / "report_stage.csv";
  REQUIRE(run_cli("eval --manifest " + ws.manifest.string() +
                  " --fixations " + ws.fixations.string() + " --pred " +
                  (ws.pipe_out / "fused").string() + " --gt " +
                  (ws.pipe_out / "gt").string() + " --report csv --out " +
                  csv_out.string()) == 0);
  CHECK(slurp(csv_out).starts_with("frame,auc,sauc,nss,sim,cc\n"));
}

TEST_CASE("pipeline artifacts are byte-identical across runs") {
  const CliWorkspace& ws = workspace();
  const fs::path rerun = ws.dir / "pipe2";
  REQUIRE(run_cli("pipeline --manifest " + ws.manifest.string() +
                  " --fixations " + ws.fixations.string() + " --out " +
                  rerun.string()) == 0);
  for (std::size_t k = 0; k < ws.n_frames; ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.pfm", k);
    CHECK(same_bytes(rerun / "gt" / name, ws.pipe_out / "gt" / name));
    CHECK(same_bytes(rerun / "fused" / name, ws.pipe_out / "fused" / name));
  }
  for (const char* f : {"similarity.csv", "selection.json", "report.json",
                        "report.csv", "run_manifest.json"})
    CHECK(same_bytes(rerun / f, ws.pipe_out / f));
}

TEST_CASE("cli fails cleanly on bad input") {
  const CliWorkspace& ws = workspace();
  CHECK(run_cli("density --manifest /nonexistent/m.json --fixations " +
                ws.fixations.string() + " --out " +
                (ws.dir / "x").string()) != 0);
  CHECK(run_cli("select --out " + (ws.dir / "y.json").string()) != 0);
  CHECK(run_cli("predict --manifest " + ws.manifest.string() +
                " --out " + (ws.dir / "z").string() +
                " --predictors not_a_predictor") != 0);
  CHECK(run_cli("") != 0);  // subcommand is required
}
