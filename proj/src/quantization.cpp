#include "nlqed/quantization.hpp"

#include <algorithm>
#include <cmath>

namespace nlqed {

namespace {

const GreenField& green_for(std::span<const GreenField> greens, double omega) {
  for (const auto& g : greens) {
    if (std::abs(g.omega - omega) <= 1e-12 * omega) return g;
  }
  throw Error(ErrorKind::MissingGreen, "no Green field at omega = " + std::to_string(omega));
}

const double kFieldPrefactor = std::sqrt(units::hbar / (kPi * units::eps0));
const double kNoisePrefactor = std::sqrt(units::hbar * units::eps0 / kPi);

}  // namespace

FieldAssembly assemble_E(const ModeLattice& lattice, std::span<const GreenField> greens) {
  FieldAssembly out;
  const std::size_t m = lattice.frequencies();
  out.omega = lattice.frequency.points();
  out.blocks.resize(m);
  const auto n = static_cast<Eigen::Index>(lattice.nodes());
  std::vector<const GreenField*> lookup(m);
  for (std::size_t k = 0; k < m; ++k) lookup[k] = &green_for(greens, lattice.frequency[k]);

#pragma omp parallel for schedule(dynamic)
  for (long kk = 0; kk < static_cast<long>(m); ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const GreenField& g = *lookup[k];
    if (g.size() != lattice.nodes()) continue;
    const double w = lattice.frequency[k] / units::c;
    Eigen::VectorXcd column_factor(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const double loss = std::max(0.0, g.eps[jj].imag());
      column_factor(j) = kI * kFieldPrefactor * (w * w) * std::sqrt(loss) * lattice.space.weight(jj);
    }
    out.blocks[k] = g.values * column_factor.asDiagonal();
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (lookup[k]->size() != lattice.nodes()) {
      throw Error(ErrorKind::InvalidArgument, "Green field grid does not match the lattice");
    }
  }
  return out;
}

FieldAssembly linear_noise_polarization(const ModeLattice& lattice, const Geometry1D& geom) {
  FieldAssembly out;
  out.omega = lattice.frequency.points();
  const auto n = static_cast<Eigen::Index>(lattice.nodes());
  for (double omega : out.omega) {
    const auto eps = geom.node_permittivity(lattice.space, omega);
    Eigen::VectorXcd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      diag(i) = kI * kNoisePrefactor * std::sqrt(std::max(0.0, eps[static_cast<std::size_t>(i)].imag()));
    }
    out.blocks.emplace_back(diag.asDiagonal());
  }
  return out;
}

FieldAssembly assemble_D_linear(const FieldAssembly& e_field, const FieldAssembly& noise,
                                const ModeLattice& lattice, const Geometry1D& geom) {
  if (e_field.blocks.size() != noise.blocks.size()) {
    throw Error(ErrorKind::InvalidArgument, "E and P_N assemblies have different frequency sets");
  }
  FieldAssembly out;
  out.omega = e_field.omega;
  for (std::size_t k = 0; k < e_field.blocks.size(); ++k) {
    const auto eps = geom.node_permittivity(lattice.space, e_field.omega[k]);
    const Eigen::Map<const Eigen::VectorXcd> eps_vec(eps.data(), static_cast<Eigen::Index>(eps.size()));
    out.blocks.emplace_back(units::eps0 * eps_vec.asDiagonal() * e_field.blocks[k] + noise.blocks[k]);
  }
  return out;
}

double displacement_route_deviation(const FieldAssembly& e_field, const FieldAssembly& displacement,
                                    const ModeLattice& lattice) {
  double worst = 0.0;
  const double inv_h2 = 1.0 / (lattice.space.spacing() * lattice.space.spacing());
  for (std::size_t k = 0; k < e_field.blocks.size(); ++k) {
    const auto& e = e_field.blocks[k];
    const auto& d = displacement.blocks[k];
    const Eigen::Index n = e.rows();
    const Eigen::MatrixXcd curl =
        -(e.middleRows(0, n - 2) - 2.0 * e.middleRows(1, n - 2) + e.middleRows(2, n - 2)) * inv_h2 /
        (units::mu0 * e_field.omega[k] * e_field.omega[k]);
    const auto reference = d.middleRows(1, n - 2);
    const double ref = reference.norm();
    if (ref == 0.0) continue;
    worst = std::max(worst, (curl - reference).norm() / ref);
  }
  return worst;
}

CommutatorReport check_E_commutator(const FieldAssembly& e_field, std::span<const GreenField> greens,
                                    const ModeLattice& lattice, double tol) {
  CommutatorReport report;
  const auto n = static_cast<Eigen::Index>(lattice.nodes());
  Eigen::VectorXd inv_weight(n);
  for (Eigen::Index j = 0; j < n; ++j) inv_weight(j) = 1.0 / lattice.space.weight(static_cast<std::size_t>(j));
  bool any_absorbing = false;
  for (std::size_t k = 0; k < e_field.blocks.size(); ++k) {
    const double omega = e_field.omega[k];
    const GreenField& g = green_for(greens, omega);
    const double w2 = (omega / units::c) * (omega / units::c);
    const double pref = units::hbar / (kPi * units::eps0);
    const bool absorbing = std::any_of(g.eps.begin(), g.eps.end(), [](Complex e) { return e.imag() > 0.0; }) ||
                           g.k_left.imag() > 0.0 || g.k_right.imag() > 0.0;
    if (!absorbing) continue;
    any_absorbing = true;

    const auto& c = e_field.blocks[k];
    const auto left = g.values.col(0);
    const auto right = g.values.col(n - 1);
    const Eigen::MatrixXcd terminal =
        g.k_left.real() * (left * left.adjoint()) + g.k_right.real() * (right * right.adjoint());
    // Lattice commutator per unit dw, plus the terminal-layer continuum.
    const Eigen::MatrixXcd commutator = c * inv_weight.asDiagonal() * c.adjoint() + pref * w2 * terminal;

    Eigen::VectorXd quad_weight(n);
    for (Eigen::Index s = 0; s < n; ++s) {
      quad_weight(s) = lattice.space.weight(static_cast<std::size_t>(s)) *
                       std::max(0.0, g.eps[static_cast<std::size_t>(s)].imag());
    }
    const Eigen::MatrixXcd quadrature =
        pref * w2 * w2 * (g.values * quad_weight.asDiagonal() * g.values.adjoint()) + pref * w2 * terminal;
    const Eigen::MatrixXd target = pref * w2 * g.values.imag();
    const double scale = target.cwiseAbs().maxCoeff();
    report.construction_deviation =
        std::max(report.construction_deviation, (commutator - quadrature).cwiseAbs().maxCoeff() / scale);
    report.residual =
        std::max(report.residual, (commutator - target.cast<Complex>()).cwiseAbs().maxCoeff() / scale);
  }
  report.non_absorbing = !any_absorbing;
  report.pass = report.residual < tol;
  return report;
}

const BandModes& SlowVariableSet::band(const std::string& name) const {
  for (const auto& b : bands_) {
    if (b.band.name == name) return b;
  }
  throw Error(ErrorKind::InvalidArgument, "no band named '" + name + "'");
}

Eigen::VectorXcd SlowVariableSet::reduce(std::size_t band, const LatticeAmplitudes& amplitudes) const {
  const BandModes& b = bands_.at(band);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amplitudes.rows());
  const double factor = spacing_ / std::sqrt(b.width);
  for (std::size_t k : b.indices) out += factor * amplitudes.col(static_cast<Eigen::Index>(k));
  return out;
}

SlowVariableSet reduce_to_bands(const ModeLattice& lattice, const std::vector<Band>& bands) {
  const auto& grid = lattice.frequency;
  const double dw = grid.spacing();
  std::vector<BandModes> out;
  for (std::size_t a = 0; a < bands.size(); ++a) {
    for (std::size_t b = a + 1; b < bands.size(); ++b) {
      const double gap = std::abs(bands[a].carrier - bands[b].carrier);
      if (gap < 0.5 * (bands[a].width + bands[b].width)) {
        throw Error(ErrorKind::OverlappingBands,
                    "bands '" + bands[a].name + "' and '" + bands[b].name + "' overlap");
      }
    }
  }
  for (const auto& band : bands) {
    const double lo = band.carrier - 0.5 * band.width;
    const double hi = band.carrier + 0.5 * band.width;
    if (lo < grid.front() - 0.5 * dw - 1e-12 || hi > grid.back() + 0.5 * dw + 1e-12) {
      throw Error(ErrorKind::BandOutsideGrid, "band '" + band.name + "' is not inside the frequency grid");
    }
    BandModes modes;
    modes.band = band;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (std::abs(grid[k] - band.carrier) <= 0.5 * band.width + 1e-9 * dw) modes.indices.push_back(k);
    }
    if (modes.indices.empty()) {
      throw Error(ErrorKind::BandOutsideGrid, "band '" + band.name + "' contains no grid point");
    }
    modes.width = static_cast<double>(modes.indices.size()) * dw;
    double sum = 0.0;
    for (std::size_t k : modes.indices) sum += grid[k];
    modes.center = sum / static_cast<double>(modes.indices.size());
    modes.weights.assign(modes.indices.size(), std::sqrt(dw / modes.width));
    out.push_back(std::move(modes));
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      for (std::size_t k : out[a].indices) {
        if (std::find(out[b].indices.begin(), out[b].indices.end(), k) != out[b].indices.end()) {
          throw Error(ErrorKind::OverlappingBands, "bands share a frequency bin");
        }
      }
    }
  }
  return SlowVariableSet(std::move(out), dw);
}

Eigen::VectorXcd band_field(const FieldAssembly& field, const LatticeAmplitudes& amplitudes,
                            const BandModes& band, double spacing) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amplitudes.rows());
  for (std::size_t k : band.indices) {
    out += spacing * (field.blocks.at(k) * amplitudes.col(static_cast<Eigen::Index>(k)));
  }
  return out;
}

Eigen::VectorXcd carrier_field(const GreenField& green, const Eigen::VectorXcd& slow, double width) {
  const auto n = static_cast<Eigen::Index>(green.size());
  if (slow.size() != n) throw Error(ErrorKind::InvalidArgument, "slow variables do not match the grid");
  const double w = green.omega / units::c;
  Eigen::VectorXcd source(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    source(j) = std::sqrt(std::max(0.0, green.eps[jj].imag())) * green.grid.weight(jj) * slow(j);
  }
  return (kI * kFieldPrefactor * w * w * std::sqrt(width)) * (green.values * source);
}

}  // namespace nlqed
