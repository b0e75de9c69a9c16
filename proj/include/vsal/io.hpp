#ifndef VSAL_IO_HPP_
#define VSAL_IO_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsal/errors.hpp"
#include "vsal/fixation_density.hpp"
#include "vsal/frame.hpp"
#include "vsal/metrics.hpp"
#include "vsal/path_selection.hpp"
#include "vsal/saliency_map.hpp"

namespace vsal {

/// Declares a frame sequence: resolution, fps, ordered frame paths.
struct VideoManifest {
  std::string video_id;
  int width = 0;
  int height = 0;
  double fps = 0.0;
  std::vector<std::filesystem::path> frame_paths;
};

enum class MapFormat { Pgm8, Pfm };

namespace detail {

inline std::string read_token(std::istream& in) {
  std::string tok;
  in >> tok;
  return tok;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frame images (PGM P5 grayscale, PPM P6 color)

inline Frame load_frame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FrameDecodeError(path.string(), "cannot open");
  std::string magic = detail::read_token(in);
  if (magic != "P5" && magic != "P6")
    throw FrameDecodeError(path.string(), "unsupported format " + magic);
  int w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  in.get();  // single whitespace after header
  if (!in || w <= 0 || h <= 0 || maxval != 255)
    throw FrameDecodeError(path.string(), "bad header");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (magic == "P5") {
    std::vector<std::uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<long>(n));
    if (!in) throw FrameDecodeError(path.string(), "truncated data");
    std::vector<double> lum(n);
    for (std::size_t i = 0; i < n; ++i) lum[i] = raw[i] / 255.0;
    return Frame(w, h, std::move(lum));
  }
  std::vector<std::uint8_t> raw(n * 3);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<long>(n * 3));
  if (!in) throw FrameDecodeError(path.string(), "truncated data");
  std::vector<double> r(n), g(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = raw[3 * i + 0] / 255.0;
    g[i] = raw[3 * i + 1] / 255.0;
    b[i] = raw[3 * i + 2] / 255.0;
  }
  return frame_from_rgb(w, h, r, g, b);
}

inline void write_pgm8_frame(const std::filesystem::path& path, int w, int h,
                             const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << "P5\n" << w << " " << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<long>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Saliency map persistence

/// pgm8: 8-bit view of the min-max-normalized map (lossy).
/// pfm: 32-bit float portable float map of the raw values (lossless
/// round-trip within single precision).
inline void write_map(const SaliencyMap& m, const std::filesystem::path& path,
                      MapFormat format) {
  if (format == MapFormat::Pgm8) {
    const SaliencyMap mm = normalize_minmax(m);
    std::vector<std::uint8_t> bytes(mm.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
      bytes[i] = static_cast<std::uint8_t>(std::lround(mm.values[i] * 255.0));
    write_pgm8_frame(path, m.width, m.height, bytes);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  static_assert(std::endian::native == std::endian::little,
                "pfm writer assumes a little-endian host");
  out << "Pf\n" << m.width << " " << m.height << "\n-1.0\n";
  // PFM stores rows bottom-to-top.
  for (int y = m.height - 1; y >= 0; --y) {
    for (int x = 0; x < m.width; ++x) {
      const float v = static_cast<float>(m.at(x, y));
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline SaliencyMap read_map_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string magic = detail::read_token(in);
  if (magic != "Pf") throw IoError(path.string() + ": not a grayscale pfm");
  int w = 0, h = 0;
  double scale = 0.0;
  in >> w >> h >> scale;
  in.get();
  if (!in || w <= 0 || h <= 0 || scale >= 0.0)
    throw IoError(path.string() + ": bad pfm header");
  SaliencyMap m(w, h);
  for (int y = h - 1; y >= 0; --y) {
    for (int x = 0; x < w; ++x) {
      float v = 0.0f;
      in.read(reinterpret_cast<char*>(&v), sizeof(v));
      m.at(x, y) = v;
    }
  }
  if (!in) throw IoError(path.string() + ": truncated pfm data");
  return m;
}

// ---------------------------------------------------------------------------
// Fixation CSV: video_id,subject_id,timestamp_s,x_px,y_px

inline std::map<std::string, std::vector<FixationRecord>> parse_fixation_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw MissingHeader(path.string() + ": empty file");
  // Tolerate a UTF-8 BOM and trailing CR.
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "video_id,subject_id,timestamp_s,x_px,y_px")
    throw MissingHeader(path.string() + ": bad header '" + line + "'");

  std::map<std::string, std::vector<FixationRecord>> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5)
      throw ParseError(lineno, "expected 5 fields, got " +
                                   std::to_string(fields.size()));
    FixationRecord rec;
    rec.subject_id = fields[1];
    try {
      rec.t_f = std::stod(fields[2]);
      rec.x_f = std::stod(fields[3]);
      rec.y_f = std::stod(fields[4]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "non-numeric field");
    }
    if (rec.t_f < 0.0) throw ParseError(lineno, "negative timestamp");
    if (rec.x_f < 0.0 || rec.y_f < 0.0)
      throw ParseError(lineno, "negative pixel coordinate");
    out[fields[0]].push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Video manifest (JSON)

inline VideoManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestInvalid("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ManifestInvalid(path.string() + ": " + e.what());
  }
  VideoManifest m;
  try {
    m.video_id = j.at("video_id").get<std::string>();
    m.width = j.at("width").get<int>();
    m.height = j.at("height").get<int>();
    m.fps = j.at("fps").get<double>();
    for (const auto& f : j.at("frames"))
      m.frame_paths.push_back(path.parent_path() /
                              f.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ManifestInvalid(path.string() + ": " + e.what());
  }
  if (m.width < 1 || m.height < 1)
    throw ManifestInvalid(path.string() + ": non-positive resolution");
  if (m.fps <= 0.0) throw ManifestInvalid(path.string() + ": fps must be > 0");
  if (m.frame_paths.empty())
    throw ManifestInvalid(path.string() + ": no frames");
  for (const auto& fp : m.frame_paths) {
    const Frame f = load_frame(fp);
    if (f.width != m.width || f.height != m.height)
      throw FrameDecodeError(fp.string(),
                             "frame is " + std::to_string(f.width) + "x" +
                                 std::to_string(f.height) + ", expected " +
                                 std::to_string(m.width) + "x" +
                                 std::to_string(m.height));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Similarity matrix CSV: header row of predictor names, then M rows of M reals.

inline void write_similarity_csv(const SimilarityMatrix& sim,
                                 const std::vector<std::string>& names,
                                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  for (int i = 0; i < sim.m; ++i) out << (i ? "," : "") << names[i];
  out << "\n";
  out.precision(17);
  for (int i = 0; i < sim.m; ++i) {
    for (int j = 0; j < sim.m; ++j) out << (j ? "," : "") << sim.at(i, j);
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline SimilarityMatrix read_similarity_csv(const std::filesystem::path& path,
                                            std::vector<std::string>* names) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw MissingHeader(path.string() + ": empty file");
  std::vector<std::string> hdr;
  std::stringstream hs(line);
  std::string field;
  while (std::getline(hs, field, ',')) hdr.push_back(field);
  const int m = static_cast<int>(hdr.size());
  SimilarityMatrix sim(m);
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw ParseError(i + 2, "missing similarity row");
    std::stringstream ss(line);
    for (int j = 0; j < m; ++j) {
      if (!std::getline(ss, field, ','))
        throw ParseError(i + 2, "short similarity row");
      sim.at(i, j) = std::stod(field);
    }
  }
  if (names) *names = hdr;
  return sim;
}

// ---------------------------------------------------------------------------
// Metric reports

inline nlohmann::json report_to_json(const MetricReport& report) {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["auc"] = opt(report.auc);
  j["sauc"] = opt(report.sauc);
  j["nss"] = opt(report.nss);
  j["sim"] = opt(report.sim);
  j["cc"] = opt(report.cc);
  j["frames"] = nlohmann::json::array();
  for (std::size_t k = 0; k < report.per_frame.size(); ++k) {
    const FrameMetrics& fm = report.per_frame[k];
    j["frames"].push_back({{"frame", k},
                           {"auc", opt(fm.auc)},
                           {"sauc", opt(fm.sauc)},
                           {"nss", opt(fm.nss)},
                           {"sim", opt(fm.sim)},
                           {"cc", opt(fm.cc)}});
  }
  return j;
}

inline std::string report_to_csv(const MetricReport& report) {
  std::ostringstream out;
  out.precision(17);
  auto opt = [&](const std::optional<double>& v) -> std::string {
    if (!v) return "";
    std::ostringstream s;
    s.precision(17);
    s << *v;
    return s.str();
  };
  out << "frame,auc,sauc,nss,sim,cc\n";
  for (std::size_t k = 0; k < report.per_frame.size(); ++k) {
    const FrameMetrics& fm = report.per_frame[k];
    out << k << "," << opt(fm.auc) << "," << opt(fm.sauc) << ","
        << opt(fm.nss) << "," << opt(fm.sim) << "," << opt(fm.cc) << "\n";
  }
  out << "mean," << opt(report.auc) << "," << opt(report.sauc) << ","
      << opt(report.nss) << "," << opt(report.sim) << "," << opt(report.cc)
      << "\n";
  return out.str();
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace vsal

#endif  // VSAL_IO_HPP_
