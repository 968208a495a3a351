#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "nlqed/coupling.hpp"
#include "nlqed/greens.hpp"
#include "nlqed/pdc.hpp"

namespace nlqed::io {

/// Shortest locale-independent form with 17 significant digits ("%.17g").
std::string format_double(double value);

/// Comma-separated rows with LF endings and 17-digit numbers.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;
  ~CsvWriter();

  void header(const std::vector<std::string>& names);
  CsvWriter& cell(double value);
  CsvWriter& cell(std::size_t value);
  CsvWriter& cell(const std::string& value);
  void end_row();

 private:
  struct Impl;
  Impl* impl_;
  bool first_ = true;
};

/// x1, x2, x3, re, im for every entry; header only when alpha is identically zero.
void write_alpha_csv(const std::filesystem::path& path, const CouplingTensor& alpha);

/// Binary layout, little-endian:
///   char[8]  "NLQALPHA"
///   uint32   version (1)
///   uint32   reserved (0)
///   uint64   n1, n2, n3        (all zero for an identically zero tensor)
///   float64  W23, W2, W3, h
///   float64  re, im pairs in row-major [x1][x2][x3] order
void write_alpha_binary(const std::filesystem::path& path, const CouplingTensor& alpha);
CouplingTensor read_alpha_binary(const std::filesystem::path& path);

/// i, j, x_i, x_j, re g, im g.
void write_green_csv(const std::filesystem::path& path, const GreenField& green);

/// m2, m3, re psi, im psi with m the flattened (node, sub-bin) mode index.
void write_biphoton_csv(const std::filesystem::path& path, const BiphotonAmplitude& amplitude);

/// Pretty-printed JSON with a trailing LF.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace nlqed::io
