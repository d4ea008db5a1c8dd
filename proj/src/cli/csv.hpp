#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "invlab/core/grid.hpp"

namespace invlab::cli {

inline constexpr const char* kVersion = "invlab 0.1.0";

/// CSV file with a '#'-prefixed provenance header. Numbers use %.17g so a rerun
/// with the same inputs reproduces the file byte for byte.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void comment(const std::string& line);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string fmt(double v);
std::string fmt(long long v);
inline std::string fmt(int v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(std::size_t v) { return fmt(static_cast<long long>(v)); }
std::string fmt(const Vec3& v);

}  // namespace invlab::cli
