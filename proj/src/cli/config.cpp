#include "nlqed/cli/config.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

#include "nlqed/material_io.hpp"

namespace nlqed::cli {

namespace {

using nlohmann::json;

json section(const json& root, const char* key) {
  if (!root.contains(key)) return json::object();
  if (!root.at(key).is_object()) throw Error(ErrorKind::Config, std::string("'") + key + "' must be an object");
  return root.at(key);
}

double read_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw Error(ErrorKind::Config, std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::size_t read_count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned()) {
    throw Error(ErrorKind::Config, std::string("'") + key + "' must be a non-negative integer");
  }
  return j.at(key).get<std::size_t>();
}

bool read_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw Error(ErrorKind::Config, std::string("'") + key + "' must be true or false");
  return j.at(key).get<bool>();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Config, what);
}

void check_intervals(const RunConfig& cfg, std::size_t intervals, const char* where) {
  require(intervals >= 31, std::string(where) + ": need at least 31 intervals");
  if (!cfg.has_geometry) return;
  try {
    cfg.geometry.check_grid(SpatialGrid1D(cfg.geometry.domain(), intervals));
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, std::string(where) + ": " + e.what());
  }
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
  require(root.is_object(), "config root must be an object");

  RunConfig cfg;
  cfg.source = path;
  const auto base = path.parent_path();
  try {
    if (root.contains("seed")) {
      require(root.at("seed").is_number_unsigned(), "'seed' must be a non-negative integer");
      cfg.seed = root.at("seed").get<std::uint64_t>();
    }
    if (root.contains("output")) {
      require(root.at("output").is_string(), "'output' must be a path");
      cfg.output = root.at("output").get<std::string>();
    }

    const json materials = section(root, "materials");
    for (const auto& [name, spec] : materials.items()) {
      cfg.materials.emplace(name, material_from_json(name, spec, base));
    }
    if (root.contains("geometry")) {
      cfg.geometry = geometry_from_json(root.at("geometry"), cfg.materials);
      cfg.has_geometry = true;
    }

    const json carriers = section(root, "carriers");
    cfg.omega2 = read_number(carriers, "omega2", 0.0);
    cfg.omega3 = read_number(carriers, "omega3", cfg.omega2);
    require(cfg.omega2 >= 0.0 && cfg.omega3 >= 0.0, "carriers must be non-negative");

    const json kk = section(root, "material_kk");
    cfg.kk.material = kk.value("material", std::string());
    if (cfg.kk.material.empty() && cfg.materials.size() == 1) cfg.kk.material = cfg.materials.begin()->first;
    require(cfg.kk.material.empty() || cfg.materials.count(cfg.kk.material),
            "material_kk refers to unknown material '" + cfg.kk.material + "'");
    cfg.kk.omega_max = read_number(kk, "omega_max", 0.0);
    cfg.kk.points = read_count(kk, "points", cfg.kk.points);
    cfg.kk.tol = read_number(kk, "tol", cfg.kk.tol);
    require(cfg.kk.points >= 16, "material_kk: need at least 16 points");

    const json green = section(root, "green_verify");
    if (green.contains("omegas")) {
      require(green.at("omegas").is_array(), "green_verify.omegas must be a list");
      for (const auto& w : green.at("omegas")) {
        require(w.is_number() && w.get<double>() > 0.0, "green_verify.omegas must be positive numbers");
        cfg.green.omegas.push_back(w.get<double>());
      }
    }
    cfg.green.intervals = read_count(green, "intervals", cfg.green.intervals);
    cfg.green.levels = read_count(green, "levels", cfg.green.levels);
    cfg.green.tol_helmholtz = read_number(green, "tol_helmholtz", cfg.green.tol_helmholtz);
    cfg.green.tol_identity = read_number(green, "tol_identity", cfg.green.tol_identity);
    cfg.green.tol_reciprocity = read_number(green, "tol_reciprocity", cfg.green.tol_reciprocity);

    const json alpha = section(root, "alpha");
    cfg.alpha.intervals = read_count(alpha, "intervals", cfg.alpha.intervals);
    cfg.alpha.levels = read_count(alpha, "levels", cfg.alpha.levels);
    cfg.alpha.eps_min = read_number(alpha, "eps_min", cfg.alpha.eps_min);
    cfg.alpha.fredholm_tol = read_number(alpha, "fredholm_tol", cfg.alpha.fredholm_tol);
    cfg.alpha.oracle_intervals = read_count(alpha, "oracle_intervals", cfg.alpha.oracle_intervals);
    cfg.alpha.oracle_tol = read_number(alpha, "oracle_tol", cfg.alpha.oracle_tol);
    cfg.alpha.write_csv = read_bool(alpha, "write_csv", cfg.alpha.write_csv);
    require(cfg.alpha.eps_min > 0.0, "alpha.eps_min must be positive");

    const json noise = section(root, "noise");
    cfg.noise.intervals = read_count(noise, "intervals", cfg.noise.intervals);
    cfg.noise.bins_per_band = read_count(noise, "bins_per_band", cfg.noise.bins_per_band);
    cfg.noise.bin_spacing = read_number(noise, "bin_spacing", cfg.noise.bin_spacing);
    cfg.noise.levels = read_count(noise, "levels", cfg.noise.levels);
    cfg.noise.tol = read_number(noise, "tol", cfg.noise.tol);
    require(cfg.noise.bins_per_band >= 1 && cfg.noise.bin_spacing > 0.0, "noise: need bins and a positive spacing");

    const json pdc = section(root, "pdc");
    cfg.pdc.intervals = read_count(pdc, "intervals", cfg.pdc.intervals);
    cfg.pdc.band_width = read_number(pdc, "band_width", cfg.pdc.band_width);
    cfg.pdc.bins_per_band = read_count(pdc, "bins_per_band", cfg.pdc.bins_per_band);
    cfg.pdc.time = read_number(pdc, "time", cfg.pdc.time);
    cfg.pdc.subbins = read_count(pdc, "subbins", cfg.pdc.subbins);
    cfg.pdc.purity_tol = read_number(pdc, "purity_tol", cfg.pdc.purity_tol);
    const json pump = section(pdc, "pump");
    cfg.pdc.pump_amplitude = {read_number(pump, "re", 1.0), read_number(pump, "im", 0.0)};
    require(cfg.pdc.band_width > 0.0 && cfg.pdc.bins_per_band >= 1, "pdc: need a positive band width");
    require(cfg.pdc.time > 0.0 && cfg.pdc.subbins >= 2, "pdc: need time > 0 and at least two sub-bins");

    require(cfg.green.levels >= 1 && cfg.alpha.levels >= 1 && cfg.noise.levels >= 1, "ladder depths must be >= 1");
    check_intervals(cfg, cfg.green.intervals, "green_verify");
    check_intervals(cfg, cfg.alpha.intervals, "alpha");
    check_intervals(cfg, cfg.alpha.oracle_intervals, "alpha.oracle");
    check_intervals(cfg, 2 * cfg.alpha.oracle_intervals, "alpha.oracle");
    check_intervals(cfg, cfg.noise.intervals, "noise");
    check_intervals(cfg, cfg.pdc.intervals, "pdc");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
  return cfg;
}

}  // namespace nlqed::cli
