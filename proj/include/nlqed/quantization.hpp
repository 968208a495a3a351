#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nlqed/core.hpp"
#include "nlqed/geometry.hpp"
#include "nlqed/greens.hpp"
#include "nlqed/materials.hpp"

namespace nlqed {

/// Discretized dynamical variables f(x, w). The discrete commutator is
/// [f(x_i, w_k), f^dagger(x_j, w_l)] = delta_ij delta_kl / (w_i dw), with w_i
/// the trapezoid weight of node i.
struct ModeLattice {
  SpatialGrid1D space;
  FrequencyGrid frequency;

  std::size_t nodes() const { return space.size(); }
  std::size_t frequencies() const { return frequency.size(); }
};

/// Amplitudes f(x_i, w_k) standing in for the dynamical variables; column k
/// holds frequency w_k.
using LatticeAmplitudes = Eigen::MatrixXcd;

/// A field written as a linear form in the f amplitudes, one block per lattice
/// frequency: field(x_i, w_k) = sum_j blocks[k](i, j) f(x_j, w_k).
struct FieldAssembly {
  std::vector<double> omega;
  std::vector<Eigen::MatrixXcd> blocks;

  Eigen::VectorXcd apply(std::size_t k, const Eigen::VectorXcd& amplitudes) const {
    return blocks.at(k) * amplitudes;
  }
};

/// E coefficient of f(x', w): i sqrt(hbar/(pi eps0)) (w/c)^2 sqrt(eps''(x', w)) g(x, x', w) w_{x'}.
/// Throws MissingGreen when a lattice frequency has no Green field.
FieldAssembly assemble_E(const ModeLattice& lattice, std::span<const GreenField> greens);

/// Local coefficient i sqrt(hbar eps0 / pi) sqrt(eps''(x, w)).
FieldAssembly linear_noise_polarization(const ModeLattice& lattice, const Geometry1D& geom);

/// D_L = eps0 eps(x, w) E + P_L^(N).
FieldAssembly assemble_D_linear(const FieldAssembly& e_field, const FieldAssembly& noise,
                                const ModeLattice& lattice, const Geometry1D& geom);

/// Relative Frobenius deviation, interior rows, between -(mu0 w^2)^-1 d^2/dx^2 E
/// (three-point stencil) and the D_L assembly; the maximum over frequencies.
double displacement_route_deviation(const FieldAssembly& e_field, const FieldAssembly& displacement,
                                    const ModeLattice& lattice);

struct CommutatorReport {
  double residual = 0.0;                // vs (hbar/(pi eps0)) (w/c)^2 Im g
  double construction_deviation = 0.0;  // vs the eps''-weighted g g* quadrature
  bool pass = false;
  bool non_absorbing = false;
};

/// Builds the discrete [E(x, w), E^dagger(x', w)] per unit dw from the
/// coefficients (plus the terminal-layer channel) and compares it with
/// (hbar/(pi eps0)) (w/c)^2 Im g(x, x', w).
CommutatorReport check_E_commutator(const FieldAssembly& e_field, std::span<const GreenField> greens,
                                    const ModeLattice& lattice, double tol);

/// One band of slow variables: f~(x) = dOmega^{-1/2} sum_{k in band} dw f(x, w_k).
struct BandModes {
  Band band;
  std::vector<std::size_t> indices;
  double width = 0.0;   // dOmega = indices.size() * dw
  double center = 0.0;  // mean bin frequency
  /// Unit-norm weights sqrt(dw/dOmega) acting on bin-normalized amplitudes sqrt(dw) f.
  std::vector<double> weights;
};

class SlowVariableSet {
 public:
  SlowVariableSet() = default;
  SlowVariableSet(std::vector<BandModes> bands, double spacing)
      : bands_(std::move(bands)), spacing_(spacing) {}

  const std::vector<BandModes>& bands() const { return bands_; }
  const BandModes& band(std::size_t i) const { return bands_.at(i); }
  const BandModes& band(const std::string& name) const;
  std::size_t size() const { return bands_.size(); }
  double spacing() const { return spacing_; }

  /// f~(x) for every node from lattice amplitudes.
  Eigen::VectorXcd reduce(std::size_t band, const LatticeAmplitudes& amplitudes) const;

 private:
  std::vector<BandModes> bands_;
  double spacing_ = 0.0;
};

/// Throws OverlappingBands or BandOutsideGrid.
SlowVariableSet reduce_to_bands(const ModeLattice& lattice, const std::vector<Band>& bands);

/// Band-integrated field sum_{k in band} dw field(x, w_k) from lattice amplitudes.
Eigen::VectorXcd band_field(const FieldAssembly& field, const LatticeAmplitudes& amplitudes,
                            const BandModes& band, double spacing);

/// E(x) at a band carrier from slow variables:
/// sqrt(dOmega) i sqrt(hbar/(pi eps0)) (W/c)^2 sum_j sqrt(eps''_j) g(x, x_j, W) w_j f~(x_j).
Eigen::VectorXcd carrier_field(const GreenField& green, const Eigen::VectorXcd& slow, double width);

}  // namespace nlqed
