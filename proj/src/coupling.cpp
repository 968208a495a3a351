#include "nlqed/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlqed/kernels.hpp"

namespace nlqed {

namespace {

bool all_zero(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](Complex c) { return c == Complex{0.0, 0.0}; });
}

std::vector<double> clamped_loss(const std::vector<Complex>& eps) {
  std::vector<double> out(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) out[i] = std::max(0.0, eps[i].imag());
  return out;
}

void require_same_grid(const SpatialGrid1D& a, const SpatialGrid1D& b) {
  if (a.size() != b.size() || a.domain() != b.domain()) {
    throw Error(ErrorKind::InvalidArgument, "inputs live on different spatial grids");
  }
}

}  // namespace

Complex alpha_prefactor(double omega2, double omega3) {
  const double c2 = units::c * units::c;
  const double legs = (omega2 * omega2 / c2) * (omega3 * omega3 / c2) * c2;
  return units::hbar * units::hbar / (kI * kPi * c2) * std::sqrt(kPi / (units::hbar * units::eps0)) * legs /
         (omega2 + omega3);
}

CouplingTensor compute_alpha(const Geometry1D& geom, const GreenField& g2, const GreenField& g3,
                             const AlphaOptions& options) {
  require_same_grid(g2.grid, g3.grid);
  const SpatialGrid1D& grid = g2.grid;
  const std::size_t n = grid.size();

  CouplingTensor alpha;
  alpha.omega2 = g2.omega;
  alpha.omega3 = g3.omega;
  alpha.omega23 = g2.omega + g3.omega;
  alpha.grid = grid;
  alpha.eps23 = geom.node_permittivity(grid, alpha.omega23);

  const auto chi = geom.node_chi2(grid, g2.omega, g3.omega);
  if (all_zero(chi)) {
    alpha.chi_zero = true;
    alpha.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
    return alpha;
  }

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(alpha.eps23[i].imag() >= options.eps_min)) bad.push_back(i);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "eps''(x, " << alpha.omega23 << ") < " << options.eps_min << " at " << bad.size() << " node(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 8); ++i) msg << " x=" << grid.x(bad[i]);
    if (bad.size() > 8) msg << " ...";
    throw Error(ErrorKind::VanishingAbsorption, msg.str());
  }

  const HelmholtzOperator helmholtz(geom, alpha.omega23, grid, Closure::Outgoing);
  const Complex k = alpha_prefactor(g2.omega, g3.omega);
  std::vector<Complex> row(n);
  for (std::size_t i = 0; i < n; ++i) row[i] = k / (std::sqrt(alpha.eps23[i].imag()) * alpha.eps23[i]);
  const auto col2 = clamped_loss(g2.eps);
  const auto col3 = clamped_loss(g3.eps);

  kernels::AlphaAssembly in;
  in.g2 = &g2.values;
  in.g3 = &g3.values;
  in.chi = chi;
  in.row_factor = row;
  in.col2 = col2;
  in.col3 = col3;
  in.helmholtz = &helmholtz;
  in.mirror = (&g2 == &g3) || (g2.omega == g3.omega && g2.eps == g3.eps && g2.values == g3.values);
  if (options.serial) {
    kernels::serial::assemble_alpha(in, alpha.values);
  } else {
    kernels::omp::assemble_alpha(in, alpha.values);
  }
  return alpha;
}

double fredholm_residual(const CouplingTensor& alpha, const Geometry1D& geom, const GreenField& g2,
                         const GreenField& g3, const GreenField& g23) {
  require_same_grid(alpha.grid, g2.grid);
  require_same_grid(alpha.grid, g3.grid);
  require_same_grid(alpha.grid, g23.grid);
  const auto n = static_cast<Eigen::Index>(alpha.size());
  const auto chi = geom.node_chi2(alpha.grid, alpha.omega2, alpha.omega3);
  const Complex k = alpha_prefactor(alpha.omega2, alpha.omega3);
  const auto loss2 = clamped_loss(g2.eps);
  const auto loss3 = clamped_loss(g3.eps);

  // Kernel matrix M(r, s) = g23(r, s) w_s eps(s) sqrt(eps''(s)).
  Eigen::VectorXcd kernel_weight(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto ss = static_cast<std::size_t>(s);
    kernel_weight(s) = alpha.grid.weight(ss) * alpha.eps23[ss] * std::sqrt(std::max(0.0, alpha.eps23[ss].imag()));
  }
  const Eigen::MatrixXcd kernel = g23.values * kernel_weight.asDiagonal();

  auto rhs_at = [&](Eigen::Index r, Eigen::Index x2, Eigen::Index x3) {
    return k * std::sqrt(loss2[static_cast<std::size_t>(x2)] * loss3[static_cast<std::size_t>(x3)]) *
           chi[static_cast<std::size_t>(r)] * (g2.values(r, x2) * g3.values(r, x3));
  };

  double rhs_max = 0.0;
  for (Eigen::Index x3 = 0; x3 < n; ++x3) {
    for (Eigen::Index x2 = 0; x2 < n; ++x2) {
      for (Eigen::Index r = 0; r < n; ++r) rhs_max = std::max(rhs_max, std::abs(rhs_at(r, x2, x3)));
    }
  }
  if (rhs_max == 0.0) return 0.0;
  const double mask = 1e-8 * rhs_max;

  const Eigen::Index cols = alpha.values.cols();
  constexpr Eigen::Index kBlock = 1024;
  double worst = 0.0;
  for (Eigen::Index p0 = 0; p0 < cols; p0 += kBlock) {
    const Eigen::Index width = std::min(kBlock, cols - p0);
    const Eigen::MatrixXcd lhs = kernel * alpha.values.middleCols(p0, width);
    double block_worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : block_worst)
    for (Eigen::Index c = 0; c < width; ++c) {
      const Eigen::Index p = p0 + c;
      const Eigen::Index x2 = p % n;
      const Eigen::Index x3 = p / n;
      for (Eigen::Index r = 0; r < n; ++r) {
        const Complex rhs = rhs_at(r, x2, x3);
        const double mag = std::abs(rhs);
        if (mag <= mask) continue;
        block_worst = std::max(block_worst, std::abs(lhs(r, c) - rhs) / mag);
      }
    }
    worst = std::max(worst, block_worst);
  }
  return worst;
}

double EffectiveHamiltonian::hermiticity_error() const {
  if (annihilation.size() == 0) return 0.0;
  return (creation - annihilation.conjugate()).cwiseAbs().maxCoeff();
}

EffectiveHamiltonian assemble_H_NL(const CouplingTensor& alpha, const SlowVariableSet& slow,
                                   std::array<std::size_t, 3> bands) {
  for (std::size_t b : bands) {
    if (b >= slow.size()) throw Error(ErrorKind::InvalidArgument, "band index out of range");
  }
  const BandModes& b1 = slow.band(bands[0]);
  const BandModes& b2 = slow.band(bands[1]);
  const BandModes& b3 = slow.band(bands[2]);
  if (bands[0] == bands[1] || bands[0] == bands[2]) {
    throw Error(ErrorKind::BandMismatch, "the sum-frequency band must differ from the field bands");
  }
  const double sum = b2.center + b3.center;
  if (std::abs(b1.center - sum) > 0.5 * b1.width) {
    throw Error(ErrorKind::BandMismatch, "band '" + b1.band.name + "' centred at " + std::to_string(b1.center) +
                                             " is off W2 + W3 = " + std::to_string(sum));
  }
  auto inside = [](const BandModes& b, double omega) { return std::abs(omega - b.center) <= 0.5 * b.width; };
  if (!inside(b2, alpha.omega2) || !inside(b3, alpha.omega3) || !inside(b1, alpha.omega23)) {
    throw Error(ErrorKind::BandMismatch, "carriers of the coupling tensor lie outside the selected bands");
  }

  EffectiveHamiltonian h;
  h.centers = {b1.center, b2.center, b3.center};
  h.widths = {b1.width, b2.width, b3.width};
  h.grid = alpha.grid;
  const auto n = static_cast<Eigen::Index>(alpha.size());
  const double band_factor = std::sqrt(b1.width * b2.width * b3.width);
  const auto w = alpha.grid.weights();
  Eigen::VectorXd row(n);
  for (Eigen::Index i = 0; i < n; ++i) row(i) = band_factor * w[static_cast<std::size_t>(i)];
  Eigen::VectorXd col(n * n);
  for (Eigen::Index x3 = 0; x3 < n; ++x3) {
    for (Eigen::Index x2 = 0; x2 < n; ++x2) {
      col(x2 + n * x3) = w[static_cast<std::size_t>(x2)] * w[static_cast<std::size_t>(x3)];
    }
  }
  h.annihilation = row.asDiagonal() * alpha.values * col.asDiagonal();
  h.creation = h.annihilation.conjugate();
  return h;
}

std::string_view to_string(PolarizationPart part) {
  switch (part) {
    case PolarizationPart::Reactive: return "reactive";
    case PolarizationPart::Noise: return "noise";
    case PolarizationPart::Total: return "total";
  }
  return "unknown";
}

std::string_view to_string(PolarizationRoute route) {
  switch (route) {
    case PolarizationRoute::ViaAlpha: return "via-alpha";
    case PolarizationRoute::ViaField: return "via-field";
    case PolarizationRoute::Response: return "response";
    case PolarizationRoute::Commutator: return "commutator";
  }
  return "unknown";
}

PolarizationField reactive_polarization(const Eigen::VectorXcd& e2, const Eigen::VectorXcd& e3,
                                        const Geometry1D& geom, const SpatialGrid1D& grid, double omega2,
                                        double omega3) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (e2.size() != n || e3.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "fields must be sampled on the spatial grid");
  }
  const auto chi = geom.node_chi2(grid, omega2, omega3);
  PolarizationField p;
  p.omega = omega2 + omega3;
  p.part = PolarizationPart::Reactive;
  p.route = PolarizationRoute::Response;
  p.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) p.values(i) = units::eps0 * chi[static_cast<std::size_t>(i)] * e2(i) * e3(i);
  return p;
}

PolarizationField nonlinear_noise_polarization_via_field(const Eigen::VectorXcd& e2, const Eigen::VectorXcd& e3,
                                                         const Geometry1D& geom, const SpatialGrid1D& grid,
                                                         double omega2, double omega3) {
  const double omega23 = omega2 + omega3;
  const PolarizationField product = reactive_polarization(e2, e3, geom, grid, omega2, omega3);
  const HelmholtzOperator helmholtz(geom, omega23, grid, Closure::Outgoing);
  const auto eps = helmholtz.node_permittivity();
  const auto n = product.values.size();
  std::vector<Complex> source(product.values.data(), product.values.data() + n);
  std::vector<Complex> applied(static_cast<std::size_t>(n));
  helmholtz.apply(source, applied);

  PolarizationField p;
  p.omega = omega23;
  p.part = PolarizationPart::Noise;
  p.route = PolarizationRoute::ViaField;
  p.values.resize(n);
  const double w23 = omega23 / units::c;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    p.values(i) = applied[ii] / (w23 * w23 * eps[ii]);
  }
  return p;
}

Eigen::VectorXcd pair_source(const CouplingTensor& alpha, const Eigen::VectorXcd& slow2,
                             const Eigen::VectorXcd& slow3, double width2, double width3) {
  const auto n = static_cast<Eigen::Index>(alpha.size());
  if (slow2.size() != n || slow3.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "slow variables do not match the coupling grid");
  }
  const auto w = alpha.grid.weights();
  const double band = std::sqrt(width2 * width3);
  std::vector<Complex> coefficient(static_cast<std::size_t>(n * n));
  for (Eigen::Index x3 = 0; x3 < n; ++x3) {
    const Complex a3 = w[static_cast<std::size_t>(x3)] * slow3(x3) * band;
    for (Eigen::Index x2 = 0; x2 < n; ++x2) {
      coefficient[static_cast<std::size_t>(x2 + n * x3)] = (w[static_cast<std::size_t>(x2)] * slow2(x2)) * a3;
    }
  }
  Eigen::VectorXcd out(n);
  kernels::omp::contract(alpha.values, coefficient, std::span<Complex>(out.data(), static_cast<std::size_t>(n)));
  return out;
}

PolarizationField nonlinear_noise_polarization_via_alpha(const CouplingTensor& alpha,
                                                         const Eigen::VectorXcd& slow2,
                                                         const Eigen::VectorXcd& slow3, double width2,
                                                         double width3) {
  const Eigen::VectorXcd source = pair_source(alpha, slow2, slow3, width2, width3);
  PolarizationField p;
  p.omega = alpha.omega23;
  p.part = PolarizationPart::Noise;
  p.route = PolarizationRoute::ViaAlpha;
  p.values.resize(source.size());
  const Complex pref = std::sqrt(units::hbar * units::eps0 / kPi) / (kI * units::hbar * alpha.omega23);
  for (Eigen::Index i = 0; i < source.size(); ++i) {
    p.values(i) = pref * std::sqrt(std::max(0.0, alpha.eps23[static_cast<std::size_t>(i)].imag())) * source(i);
  }
  return p;
}

PolarizationDecomposition decompose_polarization(const CouplingTensor& alpha, const Geometry1D& geom,
                                                 const GreenField& g23, const Eigen::VectorXcd& slow2,
                                                 const Eigen::VectorXcd& slow3, double width2, double width3) {
  require_same_grid(alpha.grid, g23.grid);
  const Eigen::VectorXcd source = pair_source(alpha, slow2, slow3, width2, width3);

  const ModeLattice lattice{alpha.grid, FrequencyGrid(alpha.omega23, 1.0, 1)};
  const std::vector<GreenField> greens{g23};
  const FieldAssembly e_field = assemble_E(lattice, greens);
  const FieldAssembly noise = linear_noise_polarization(lattice, geom);
  const FieldAssembly displacement = assemble_D_linear(e_field, noise, lattice, geom);
  const auto eps = geom.node_permittivity(alpha.grid, alpha.omega23);
  const Eigen::Map<const Eigen::VectorXcd> eps_vec(eps.data(), static_cast<Eigen::Index>(eps.size()));

  const double scale = -1.0 / (units::hbar * alpha.omega23);
  PolarizationDecomposition out;
  out.reactive = {alpha.omega23, PolarizationPart::Reactive, PolarizationRoute::ViaAlpha,
                  scale * (units::eps0 * eps_vec.asDiagonal() * (e_field.blocks[0] * source))};
  out.noise = {alpha.omega23, PolarizationPart::Noise, PolarizationRoute::ViaAlpha,
               scale * (noise.blocks[0] * source)};
  out.total = {alpha.omega23, PolarizationPart::Total, PolarizationRoute::Commutator,
               scale * (displacement.blocks[0] * source)};
  return out;
}

double max_relative_deviation(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double ref = b.cwiseAbs().maxCoeff();
  if (ref == 0.0) return (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0) ? 0.0 : 1.0;
  return (a - b).cwiseAbs().maxCoeff() / ref;
}

}  // namespace nlqed
