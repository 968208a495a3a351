#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nlqed/core.hpp"
#include "nlqed/geometry.hpp"

namespace nlqed::cli {

struct KkSettings {
  std::string material;
  double omega_max = 0.0;   // 0: 20x the largest resonance feature
  std::size_t points = 4001;
  double tol = 1e-2;
};

struct GreenSettings {
  std::vector<double> omegas;
  std::size_t intervals = 512;
  std::size_t levels = 1;  // ladder ..., N/2, N reported with observed orders
  double tol_helmholtz = 5e-2;
  double tol_identity = 1e-3;
  double tol_reciprocity = 1e-10;
};

struct AlphaSettings {
  std::size_t intervals = 64;
  std::size_t levels = 1;  // ladder ..., N/2, N
  double eps_min = 1e-6;
  double fredholm_tol = 5e-2;
  std::size_t oracle_intervals = 32;
  double oracle_tol = 5e-2;
  bool write_csv = true;
};

struct NoiseSettings {
  std::size_t intervals = 128;
  std::size_t bins_per_band = 3;
  double bin_spacing = 0.05;  // refined by halving on the ladder
  std::size_t levels = 3;
  double tol = 5e-2;
};

struct PdcSettings {
  std::size_t intervals = 32;
  double band_width = 0.2;
  std::size_t bins_per_band = 4;
  double time = 100.0;
  std::size_t subbins = 16;
  Complex pump_amplitude{1.0, 0.0};
  double purity_tol = 1e-12;
};

/// Everything a subcommand needs, resolved and validated at load time.
struct RunConfig {
  std::filesystem::path source;
  std::filesystem::path output = "out";
  std::uint64_t seed = 0;
  std::map<std::string, Material> materials;
  bool has_geometry = false;
  Geometry1D geometry;
  double omega2 = 0.0;
  double omega3 = 0.0;
  KkSettings kk;
  GreenSettings green;
  AlphaSettings alpha;
  NoiseSettings noise;
  PdcSettings pdc;
};

/// Throws Error(Config) for unreadable files, malformed JSON, unresolved
/// names and grids whose nodes miss the layer interfaces.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace nlqed::cli
