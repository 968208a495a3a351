#include "nlqed/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlqed/cli/config.hpp"
#include "nlqed/coupling.hpp"
#include "nlqed/fredholm_oracle.hpp"
#include "nlqed/greens.hpp"
#include "nlqed/io.hpp"
#include "nlqed/kernels.hpp"
#include "nlqed/pdc.hpp"
#include "nlqed/quantization.hpp"

namespace nlqed::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Context {
  RunConfig cfg;
  fs::path out;
};

Context prepare(const CommandOptions& options) {
  Context ctx{load_config(options.config), {}};
  if (options.out) {
    ctx.out = *options.out;
  } else {
    ctx.out = ctx.cfg.output.is_absolute() ? ctx.cfg.output : options.config.parent_path() / ctx.cfg.output;
  }
  fs::create_directories(ctx.out);
  return ctx;
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
    case ErrorKind::GridTooNarrow:
    case ErrorKind::OverlappingBands:
    case ErrorKind::BandOutsideGrid:
    case ErrorKind::BandMismatch:
      return true;
    default:
      return false;
  }
}

int guarded(const char* name, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kUsage : kScienceFailed;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return kUsage;
  }
}

const Geometry1D& require_geometry(const RunConfig& cfg) {
  if (!cfg.has_geometry) throw Error(ErrorKind::Config, "config has no geometry");
  return cfg.geometry;
}

void require_carriers(const RunConfig& cfg) {
  if (!(cfg.omega2 > 0.0) || !(cfg.omega3 > 0.0)) {
    throw Error(ErrorKind::Config, "carriers.omega2 and carriers.omega3 must be positive");
  }
}

/// Grids N >> (levels-1), ..., N; each must put the interfaces on nodes.
std::vector<SpatialGrid1D> ladder(const Geometry1D& geom, std::size_t intervals, std::size_t levels) {
  std::vector<SpatialGrid1D> grids;
  for (std::size_t l = levels; l-- > 0;) {
    const std::size_t n = intervals >> l;
    if (n < 31 || (n << l) != intervals) {
      throw Error(ErrorKind::Config, "ladder of depth " + std::to_string(levels) + " below " +
                                         std::to_string(intervals) + " intervals is not a halving sequence");
    }
    SpatialGrid1D grid(geom.domain(), n);
    geom.check_grid(grid);
    grids.push_back(grid);
  }
  return grids;
}

json orders(const std::vector<double>& values) {
  json out = json::array();
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] > 0.0 && values[i + 1] > 0.0) {
      out.push_back(std::log2(values[i] / values[i + 1]));
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

/// Standard-normal complex samples from the configured seed.
Eigen::VectorXcd seeded_amplitudes(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex{re, im} / std::sqrt(2.0);
  }
  return v;
}

}  // namespace

int cmd_material_kk(const CommandOptions& options) {
  return guarded("material-kk", [&] {
    const Context ctx = prepare(options);
    const auto& cfg = ctx.cfg;
    if (cfg.kk.material.empty()) throw Error(ErrorKind::Config, "material_kk.material is not set");
    const PermittivityModel& model = cfg.materials.at(cfg.kk.material).permittivity;
    double omega_max = cfg.kk.omega_max;
    if (omega_max <= 0.0) {
      const double feature = model.max_feature_frequency();
      if (feature > 0.0) {
        omega_max = 40.0 * feature;
      } else if (model.is_tabulated()) {
        omega_max = model.table_omega().back();
      } else {
        omega_max = 10.0;
      }
    }
    const double tol = options.tol.value_or(cfg.kk.tol);
    const double start = omega_max / static_cast<double>(cfg.kk.points);
    const auto grid = FrequencyGrid::spanning(start, omega_max, cfg.kk.points);
    const KramersKronigReport report = check_kramers_kronig(model, grid, tol);

    io::CsvWriter csv(ctx.out / "kk_curve.csv");
    csv.header({"omega", "expected", "reconstructed"});
    for (std::size_t i = 0; i < report.omega.size(); ++i) {
      csv.cell(report.omega[i]).cell(report.expected[i]).cell(report.reconstructed[i]);
      csv.end_row();
    }
    io::write_json(ctx.out / "kk_report.json", {{"material", cfg.kk.material},
                                                 {"omega_max", omega_max},
                                                 {"points", cfg.kk.points},
                                                 {"evaluated_points", report.evaluated_points},
                                                 {"max_rel_error", report.max_rel_error},
                                                 {"tol", tol},
                                                 {"pass", report.pass}});
    std::cout << "material-kk " << cfg.kk.material << ": max relative error " << report.max_rel_error
              << (report.pass ? " PASS" : " FAIL") << '\n';
    return report.pass ? kPass : kScienceFailed;
  });
}

int cmd_green_verify(const CommandOptions& options) {
  return guarded("green-verify", [&] {
    const Context ctx = prepare(options);
    const auto& cfg = ctx.cfg;
    const Geometry1D& geom = require_geometry(cfg);
    std::vector<double> omegas = cfg.green.omegas;
    if (omegas.empty()) {
      require_carriers(cfg);
      omegas = {cfg.omega2, cfg.omega3, cfg.omega2 + cfg.omega3};
      std::sort(omegas.begin(), omegas.end());
      omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());
    }
    const double tol_h = options.tol.value_or(cfg.green.tol_helmholtz);
    const double tol_i = options.tol.value_or(cfg.green.tol_identity);
    const auto grids = ladder(geom, cfg.green.intervals, options.refine.value_or(cfg.green.levels));

    io::CsvWriter csv(ctx.out / "green_verify.csv");
    csv.header({"intervals", "omega", "test", "residual", "tol", "status"});
    bool all_pass = true;
    json per_omega = json::array();
    for (double omega : omegas) {
      std::vector<double> helm, ident;
      for (std::size_t l = 0; l < grids.size(); ++l) {
        const SpatialGrid1D& grid = grids[l];
        const bool finest = (l + 1 == grids.size());
        auto row = [&](const char* test, const std::string& residual, double tol, const std::string& status) {
          csv.cell(grid.intervals()).cell(omega).cell(std::string(test)).cell(residual).cell(tol).cell(status);
          csv.end_row();
        };
        auto checked = [&](const char* test, double value, double tol) {
          const bool ok = !finest || value < tol;
          all_pass = all_pass && ok;
          row(test, io::format_double(value), tol, ok ? "PASS" : "FAIL");
        };
        GreenField green;
        try {
          green = green_1d(geom, omega, grid);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateWronskian) throw;
          all_pass = false;
          row("green", "", 0.0, std::string(to_string(e.kind())));
          continue;
        }
        try {
          const double r = helmholtz_residual(geom, green);
          helm.push_back(r);
          checked("helmholtz", r, tol_h);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::GridTooCoarse) throw;
          all_pass = false;
          row("helmholtz", "", tol_h, std::string(to_string(e.kind())));
        }
        checked("reciprocity", reciprocity_error(green), cfg.green.tol_reciprocity);
        const GreenIdentityReport id = verify_green_identity(geom, green);
        if (id.non_absorbing) {
          row("green_identity", "", tol_i, "NonAbsorbing");
        } else {
          ident.push_back(id.residual);
          checked("green_identity", id.residual, tol_i);
        }
      }
      per_omega.push_back({{"omega", omega},
                           {"helmholtz", helm},
                           {"helmholtz_order", orders(helm)},
                           {"green_identity", ident},
                           {"green_identity_order", orders(ident)}});
    }
    json intervals = json::array();
    for (const auto& g : grids) intervals.push_back(g.intervals());
    io::write_json(ctx.out / "green_verify.json",
                   {{"intervals", intervals}, {"omegas", per_omega}, {"pass", all_pass}});
    std::cout << "green-verify: " << (all_pass ? "PASS" : "FAIL") << '\n';
    return all_pass ? kPass : kScienceFailed;
  });
}

int cmd_alpha(const CommandOptions& options) {
  return guarded("alpha", [&] {
    const Context ctx = prepare(options);
    const auto& cfg = ctx.cfg;
    const Geometry1D& geom = require_geometry(cfg);
    require_carriers(cfg);
    const double omega23 = cfg.omega2 + cfg.omega3;
    const double fredholm_tol = options.tol.value_or(cfg.alpha.fredholm_tol);
    const double oracle_tol = options.tol.value_or(cfg.alpha.oracle_tol);
    const auto grids = ladder(geom, cfg.alpha.intervals, options.refine.value_or(cfg.alpha.levels));
    const AlphaOptions alpha_options{cfg.alpha.eps_min, false};
    const bool degenerate = cfg.omega2 == cfg.omega3;

    struct Level {
      GreenField g2, g3, g23;
      CouplingTensor alpha;
    };
    auto build = [&](const SpatialGrid1D& grid) {
      Level level;
      level.g2 = green_1d(geom, cfg.omega2, grid);
      if (!degenerate) level.g3 = green_1d(geom, cfg.omega3, grid);
      const GreenField& g3 = degenerate ? level.g2 : level.g3;
      level.alpha = compute_alpha(geom, level.g2, g3, alpha_options);
      if (!level.alpha.chi_zero) level.g23 = green_1d(geom, omega23, grid);
      return level;
    };

    std::vector<double> residuals;
    Level finest;
    for (std::size_t l = 0; l < grids.size(); ++l) {
      Level level = build(grids[l]);
      if (!level.alpha.chi_zero) {
        const GreenField& g3 = degenerate ? level.g2 : level.g3;
        residuals.push_back(fredholm_residual(level.alpha, geom, level.g2, g3, level.g23));
      } else {
        residuals.push_back(0.0);
      }
      if (l + 1 == grids.size()) finest = std::move(level);
    }

    io::write_alpha_binary(ctx.out / "alpha.bin", finest.alpha);
    if (cfg.alpha.write_csv) io::write_alpha_csv(ctx.out / "alpha.csv", finest.alpha);

    json report = {{"omega2", cfg.omega2},
                   {"omega3", cfg.omega3},
                   {"omega23", omega23},
                   {"intervals", finest.alpha.grid.intervals()},
                   {"chi2_zero", finest.alpha.chi_zero}};
    bool pass = true;
    if (finest.alpha.chi_zero) {
      std::cerr << "alpha: warning: chi2 vanishes everywhere, alpha is identically zero\n";
      report["warning"] = "chi2 vanishes everywhere; alpha is identically zero";
      report["fredholm_residual"] = 0.0;
    } else {
      const double fredholm = residuals.back();
      pass = pass && fredholm < fredholm_tol;
      json ladder_json = json::array();
      for (std::size_t l = 0; l < grids.size(); ++l) {
        ladder_json.push_back({{"intervals", grids[l].intervals()}, {"fredholm_residual", residuals[l]}});
      }
      report["fredholm_residual"] = fredholm;
      report["fredholm_tol"] = fredholm_tol;
      report["fredholm_ladder"] = ladder_json;
      report["fredholm_order"] = orders(residuals);

      std::vector<double> deviations;
      json oracle = json::array();
      for (std::size_t m : {cfg.alpha.oracle_intervals, 2 * cfg.alpha.oracle_intervals}) {
        const SpatialGrid1D grid(geom.domain(), m);
        Level level = build(grid);
        level.g23 = green_1d(geom, omega23, grid);
        const GreenField& g3 = degenerate ? level.g2 : level.g3;
        const CouplingTensor dense = solve_fredholm_dense(geom, level.g2, g3, level.g23, cfg.alpha.eps_min);
        deviations.push_back(tensor_deviation(level.alpha, dense));
        oracle.push_back({{"intervals", m}, {"deviation", deviations.back()}});
      }
      const bool converging = deviations[1] < deviations[0];
      pass = pass && deviations[0] < oracle_tol && converging;
      report["oracle"] = oracle;
      report["oracle_tol"] = oracle_tol;
      report["oracle_converging"] = converging;
      std::cout << "alpha: fredholm residual " << fredholm << ", oracle deviation " << deviations[0] << '\n';
    }
    report["pass"] = pass;
    io::write_json(ctx.out / "alpha_report.json", report);
    std::cout << "alpha: " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kPass : kScienceFailed;
  });
}

int cmd_noise(const CommandOptions& options) {
  return guarded("noise", [&] {
    const Context ctx = prepare(options);
    const auto& cfg = ctx.cfg;
    const Geometry1D& geom = require_geometry(cfg);
    require_carriers(cfg);
    const double tol = options.tol.value_or(cfg.noise.tol);
    const std::size_t levels = options.refine.value_or(cfg.noise.levels);
    if (levels == 0) throw Error(ErrorKind::Config, "--refine must be at least 1");
    const SpatialGrid1D grid(geom.domain(), cfg.noise.intervals);
    const auto n = static_cast<Eigen::Index>(grid.size());
    const bool degenerate = cfg.omega2 == cfg.omega3;
    const std::size_t bins = cfg.noise.bins_per_band;

    std::mt19937_64 rng(cfg.seed);
    const Eigen::VectorXcd a2 = seeded_amplitudes(rng, n);
    const Eigen::VectorXcd a3 = degenerate ? a2 : seeded_amplitudes(rng, n);

    const GreenField g2 = green_1d(geom, cfg.omega2, grid);
    const GreenField g3 = degenerate ? g2 : green_1d(geom, cfg.omega3, grid);
    const CouplingTensor alpha = compute_alpha(geom, g2, g3, AlphaOptions{cfg.alpha.eps_min, false});

    // Band-resolved lattice around one carrier: `bins` points centred on it.
    struct BandData {
      Eigen::VectorXcd field;
      Eigen::VectorXcd slow;
      double width;
    };
    auto band_data = [&](double carrier, const Eigen::VectorXcd& a, double spacing) {
      const double start = carrier - 0.5 * static_cast<double>(bins - 1) * spacing;
      const Band band{"band", carrier, static_cast<double>(bins) * spacing};
      const ModeLattice lattice{grid, FrequencyGrid(start, spacing, bins)};
      std::vector<GreenField> greens;
      for (double w : lattice.frequency.points()) greens.push_back(green_1d(geom, w, grid));
      const FieldAssembly e_field = assemble_E(lattice, greens);
      const SlowVariableSet slow = reduce_to_bands(lattice, {band});
      LatticeAmplitudes amplitudes(n, static_cast<Eigen::Index>(bins));
      for (Eigen::Index k = 0; k < amplitudes.cols(); ++k) amplitudes.col(k) = a;
      return BandData{band_field(e_field, amplitudes, slow.band(0), spacing), slow.reduce(0, amplitudes),
                      slow.band(0).width};
    };

    std::vector<double> deviations;
    json ladder_json = json::array();
    PolarizationField base_alpha, base_field;
    for (std::size_t l = 0; l < levels; ++l) {
      const double spacing = cfg.noise.bin_spacing / static_cast<double>(1u << l);
      const BandData b2 = band_data(cfg.omega2, a2, spacing);
      const BandData b3 = degenerate ? b2 : band_data(cfg.omega3, a3, spacing);
      const PolarizationField via_field =
          nonlinear_noise_polarization_via_field(b2.field, b3.field, geom, grid, cfg.omega2, cfg.omega3);
      const PolarizationField via_alpha =
          nonlinear_noise_polarization_via_alpha(alpha, b2.slow, b3.slow, b2.width, b3.width);
      deviations.push_back(max_relative_deviation(via_alpha.values, via_field.values));
      ladder_json.push_back({{"bin_spacing", spacing}, {"band_width", b2.width}, {"deviation", deviations.back()}});
      if (l == 0) {
        base_alpha = via_alpha;
        base_field = via_field;
      }
    }

    io::CsvWriter csv(ctx.out / "noise_compare.csv");
    csv.header({"x", "re_via_alpha", "im_via_alpha", "re_via_field", "im_via_field", "abs_deviation"});
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex pa = base_alpha.values(i);
      const Complex pf = base_field.values(i);
      csv.cell(grid.x(static_cast<std::size_t>(i))).cell(pa.real()).cell(pa.imag()).cell(pf.real()).cell(pf.imag());
      csv.cell(std::abs(pa - pf));
      csv.end_row();
    }
    io::CsvWriter ladder_csv(ctx.out / "noise_ladder.csv");
    ladder_csv.header({"level", "bin_spacing", "deviation"});
    for (std::size_t l = 0; l < levels; ++l) {
      ladder_csv.cell(l).cell(cfg.noise.bin_spacing / static_cast<double>(1u << l)).cell(deviations[l]);
      ladder_csv.end_row();
    }

    bool monotone = true;
    const bool all_zero = alpha.chi_zero;
    for (std::size_t l = 0; l + 1 < deviations.size(); ++l) {
      monotone = monotone && (all_zero || deviations[l + 1] < deviations[l]);
    }
    const bool pass = deviations.front() < tol && monotone;
    io::write_json(ctx.out / "noise_report.json", {{"seed", cfg.seed},
                                                    {"intervals", grid.intervals()},
                                                    {"bins_per_band", bins},
                                                    {"chi2_zero", all_zero},
                                                    {"max_rel_deviation", deviations.front()},
                                                    {"tol", tol},
                                                    {"ladder", ladder_json},
                                                    {"order", orders(deviations)},
                                                    {"monotone", monotone},
                                                    {"pass", pass}});
    std::cout << "noise: max relative deviation " << deviations.front() << (pass ? " PASS" : " FAIL") << '\n';
    return pass ? kPass : kScienceFailed;
  });
}

int cmd_pdc(const CommandOptions& options) {
  return guarded("pdc", [&] {
    const Context ctx = prepare(options);
    const auto& cfg = ctx.cfg;
    const Geometry1D& geom = require_geometry(cfg);
    require_carriers(cfg);
    const auto& p = cfg.pdc;
    const double omega23 = cfg.omega2 + cfg.omega3;
    const bool degenerate = cfg.omega2 == cfg.omega3;
    const SpatialGrid1D grid(geom.domain(), p.intervals);

    const GreenField g2 = green_1d(geom, cfg.omega2, grid);
    const GreenField g3 = degenerate ? g2 : green_1d(geom, cfg.omega3, grid);
    const CouplingTensor alpha = compute_alpha(geom, g2, g3, AlphaOptions{cfg.alpha.eps_min, false});

    // One uniform frequency grid holding the pump, signal and idler bins.
    const double spacing = p.band_width / static_cast<double>(p.bins_per_band);
    const double half = 0.5 * static_cast<double>(p.bins_per_band - 1) * spacing;
    const double lo = std::min(cfg.omega2, cfg.omega3) - half;
    const double hi = omega23 + half;
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / spacing)) + 1;
    std::vector<Band> bands{{"pump", omega23, p.band_width}, {"signal", cfg.omega2, p.band_width}};
    if (!degenerate) bands.push_back({"idler", cfg.omega3, p.band_width});
    const ModeLattice lattice{grid, FrequencyGrid(lo, spacing, count)};
    const SlowVariableSet slow = reduce_to_bands(lattice, bands);
    const EffectiveHamiltonian h = assemble_H_NL(alpha, slow, {0, 1, degenerate ? std::size_t{1} : std::size_t{2}});

    const PumpSpec pump = PumpSpec::uniform(omega23, p.pump_amplitude, grid);
    const BiphotonAmplitude psi = biphoton_first_order(h, pump, p.time, p.subbins);
    if (!psi.weak) std::cerr << "pdc: warning: pair amplitude norm " << psi.norm << " exceeds 0.1\n";

    io::write_biphoton_csv(ctx.out / "psi.csv", psi);
    const double purity = heralded_purity(psi);
    const double oracle = purity_dense_oracle(psi.psi);
    const Eigen::VectorXd lambda = schmidt_values(psi.psi);
    const DetuningSpectrum spectrum = detuning_spectrum(psi);

    io::CsvWriter csv(ctx.out / "detuning.csv");
    csv.header({"detuning", "weight"});
    for (std::size_t q = 0; q < spectrum.detuning.size(); ++q) {
      csv.cell(spectrum.detuning[q]).cell(spectrum.weight[q]);
      csv.end_row();
    }

    const double tol = options.tol.value_or(p.purity_tol);
    const double dim = static_cast<double>(std::min(psi.psi.rows(), psi.psi.cols()));
    const bool bounded = purity >= 1.0 / dim - 1e-12 && purity <= 1.0 + 1e-12;
    const bool agrees = std::abs(purity - oracle) < tol;
    const bool pass = bounded && agrees;
    json schmidt = json::array();
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(8, lambda.size()); ++k) schmidt.push_back(lambda(k));
    io::write_json(ctx.out / "pdc_summary.json", {{"norm", psi.norm},
                                                   {"purity", purity},
                                                   {"purity_oracle", oracle},
                                                   {"schmidt_values", schmidt},
                                                   {"peak_detuning", spectrum.peak_detuning},
                                                   {"fwhm", spectrum.fwhm},
                                                   {"time", p.time},
                                                   {"modes", psi.psi.rows()},
                                                   {"weak", psi.weak},
                                                   {"pass", pass}});
    std::cout << "pdc: purity " << purity << ", norm " << psi.norm << (pass ? " PASS" : " FAIL") << '\n';
    return pass ? kPass : kScienceFailed;
  });
}

int run(int argc, char** argv) {
  if (const char* env = std::getenv("NLQED_THREADS")) {
    char* end = nullptr;
    const long threads = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && threads > 0) {
      kernels::omp::set_thread_limit(static_cast<int>(threads));
    } else {
      std::cerr << "nlqed: ignoring NLQED_THREADS='" << env << "'\n";
    }
  }

  CLI::App app{"Nonlinear macroscopic QED toolkit"};
  app.require_subcommand(1);
  CommandOptions options;
  std::string config, out;
  double tol = 0.0;
  std::size_t refine = 0;

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const CommandOptions&);
  };
  const Entry entries[] = {
      {"material-kk", "Kramers-Kronig check of a permittivity model", cmd_material_kk},
      {"green-verify", "Helmholtz, reciprocity and fluctuation checks of the Green function", cmd_green_verify},
      {"alpha", "Coupling tensor, Fredholm residual and dense-inversion oracle", cmd_alpha},
      {"noise", "Two-route comparison of the nonlinear noise polarization", cmd_noise},
      {"pdc", "First-order parametric down-conversion and heralded purity", cmd_pdc},
  };
  std::vector<CLI::App*> subs;
  std::vector<CLI::Option*> tol_opts, out_opts, refine_opts;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", config, "JSON run configuration")->required();
    out_opts.push_back(sub->add_option("--out", out, "Output directory"));
    tol_opts.push_back(sub->add_option("--tol", tol, "Override the pass tolerance")->check(CLI::PositiveNumber));
    refine_opts.push_back(sub->add_option("--refine", refine, "Convergence ladder depth")->check(CLI::PositiveNumber));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    options.config = config;
    if (out_opts[i]->count() > 0) options.out = out;
    if (tol_opts[i]->count() > 0) options.tol = tol;
    if (refine_opts[i]->count() > 0) options.refine = refine;
    return entries[i].fn(options);
  }
  return kUsage;
}

}  // namespace nlqed::cli
