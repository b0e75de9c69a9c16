#ifndef VSAL_ERRORS_HPP_
#define VSAL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vsal {

struct AllZeroMap : std::runtime_error {
  AllZeroMap() : std::runtime_error("map has no strictly positive value") {}
  explicit AllZeroMap(const std::string& what) : std::runtime_error(what) {}
};

struct FrameTooSmall : std::runtime_error {
  FrameTooSmall(int w, int h)
      : std::runtime_error("frame " + std::to_string(w) + "x" +
                           std::to_string(h) + " is below the minimum size") {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what)
      : std::runtime_error(what) {}
};

struct TooManyPaths : std::runtime_error {
  explicit TooManyPaths(int m)
      : std::runtime_error("exhaustive selection limited to 20 paths, got " +
                           std::to_string(m)) {}
};

struct ZeroEntropyDenominator : std::runtime_error {
  ZeroEntropyDenominator()
      : std::runtime_error("entropy denominator is zero (single-pixel map)") {}
};

struct DegenerateScores : std::runtime_error {
  DegenerateScores()
      : std::runtime_error("both consistency scores are zero") {}
};

struct EmptyList : std::runtime_error {
  explicit EmptyList(const std::string& what) : std::runtime_error(what) {}
};

struct NoFixations : std::runtime_error {
  NoFixations() : std::runtime_error("no fixations inside map bounds") {}
};

struct EmptyPool : std::runtime_error {
  EmptyPool() : std::runtime_error("shuffle pool is empty") {}
};

struct ZeroVariance : std::runtime_error {
  ZeroVariance() : std::runtime_error("constant map has zero variance") {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

struct MissingHeader : std::runtime_error {
  explicit MissingHeader(const std::string& what) : std::runtime_error(what) {}
};

struct ManifestInvalid : std::runtime_error {
  explicit ManifestInvalid(const std::string& what)
      : std::runtime_error(what) {}
};

struct FrameDecodeError : std::runtime_error {
  std::string path;
  FrameDecodeError(const std::string& path_, const std::string& what)
      : std::runtime_error(path_ + ": " + what), path(path_) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vsal

#endif  // VSAL_ERRORS_HPP_
