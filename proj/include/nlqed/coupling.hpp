#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nlqed/core.hpp"
#include "nlqed/geometry.hpp"
#include "nlqed/greens.hpp"
#include "nlqed/quantization.hpp"

namespace nlqed {

/// Scalar coupling tensor alpha(x1, W23; x2, W2; x3, W3) on the node grid.
/// Stored as an n x n^2 matrix, column p = x2 + n * x3.
struct CouplingTensor {
  double omega2 = 0.0;
  double omega3 = 0.0;
  double omega23 = 0.0;
  SpatialGrid1D grid;
  Eigen::MatrixXcd values;
  std::vector<Complex> eps23;  // node permittivity at W23
  bool chi_zero = false;       // chi2 vanishes everywhere, alpha is identically zero

  std::size_t size() const { return grid.size(); }
  Complex operator()(std::size_t x1, std::size_t x2, std::size_t x3) const {
    return values(static_cast<Eigen::Index>(x1), static_cast<Eigen::Index>(x2 + size() * x3));
  }
  std::vector<double> weights() const { return grid.weights(); }
};

/// -i hbar^2 / (pi c^2) sqrt(pi / (hbar eps0)) W2^2 W3^2 / W23, with (W/c)^2 per leg.
Complex alpha_prefactor(double omega2, double omega3);

struct AlphaOptions {
  double eps_min = 1e-6;  // floor for eps''(x, W23)
  bool serial = false;    // use the serial reference kernel
};

/// alpha = K sqrt(eps''(x2,W2) eps''(x3,W3) / eps''(x1,W23)) / eps(x1,W23)
///         * H_W23[chi2(., W2, W3) g(., x2, W2) g(., x3, W3)](x1)
/// with the outgoing closure on the end rows of H. The loss at the field
/// frequencies is read from the Green fields, so g2 and g3 may come from a
/// geometry with rescaled loss. Symmetric under (x2, W2) <-> (x3, W3) by
/// construction.
///
/// Throws VanishingAbsorption (offending nodes listed) and GridTooCoarse.
CouplingTensor compute_alpha(const Geometry1D& geom, const GreenField& g2, const GreenField& g3,
                             const AlphaOptions& options = {});

/// Max pointwise relative deviation between
///   lhs(xr; x2, x3) = sum_s w_s eps(s) sqrt(eps''(s)) g23(xr, s) alpha(s; x2, x3)
///   rhs(xr; x2, x3) = K sqrt(eps''(x2) eps''(x3)) chi2(xr) g2(xr, x2) g3(xr, x3)
/// over entries with |rhs| > 1e-8 max |rhs|. Zero when rhs vanishes.
double fredholm_residual(const CouplingTensor& alpha, const Geometry1D& geom, const GreenField& g2,
                         const GreenField& g3, const GreenField& g23);

/// Coefficients of the band-reduced interaction
///   H = sum c(x1; x2, x3) f~^dagger_1(x1) f~_2(x2) f~_3(x3) + h.c.
/// with c = alpha sqrt(dOmega1 dOmega2 dOmega3) w1 w2 w3.
struct EffectiveHamiltonian {
  std::array<double, 3> centers{};  // band centres (W23, W2, W3)
  std::array<double, 3> widths{};   // dOmega_nu
  SpatialGrid1D grid;
  Eigen::MatrixXcd annihilation;  // coefficient of f~1^dagger f~2 f~3, column x2 + n x3
  Eigen::MatrixXcd creation;      // coefficient of f~3^dagger f~2^dagger f~1

  std::size_t size() const { return grid.size(); }
  /// max |creation - conj(annihilation)|, zero for a Hermitian operator.
  double hermiticity_error() const;
};

/// bands selects (sum-frequency band, band of W2, band of W3); the last two may
/// coincide. Throws BandMismatch when the sum band is off W2 + W3 by more than
/// half its width or a carrier of alpha lies outside its band.
EffectiveHamiltonian assemble_H_NL(const CouplingTensor& alpha, const SlowVariableSet& slow,
                                   std::array<std::size_t, 3> bands = {0, 1, 2});

enum class PolarizationPart { Reactive, Noise, Total };
enum class PolarizationRoute { ViaAlpha, ViaField, Response, Commutator };

struct PolarizationField {
  double omega = 0.0;
  PolarizationPart part = PolarizationPart::Total;
  PolarizationRoute route = PolarizationRoute::Response;
  Eigen::VectorXcd values;
};

std::string_view to_string(PolarizationPart part);
std::string_view to_string(PolarizationRoute route);

/// P(x) = eps0 chi2(x, W2, W3) E2(x) E3(x).
PolarizationField reactive_polarization(const Eigen::VectorXcd& e2, const Eigen::VectorXcd& e3,
                                        const Geometry1D& geom, const SpatialGrid1D& grid, double omega2,
                                        double omega3);

/// P(x) = eps0 c^2 / (W23^2 eps(x, W23)) H_W23[chi2 E2 E3](x), outgoing closure.
PolarizationField nonlinear_noise_polarization_via_field(const Eigen::VectorXcd& e2, const Eigen::VectorXcd& e3,
                                                         const Geometry1D& geom, const SpatialGrid1D& grid,
                                                         double omega2, double omega3);

/// A(s) = sum_{x2,x3} alpha(s; x2, x3) w2 w3 sqrt(dOmega2 dOmega3) f~2(x2) f~3(x3).
Eigen::VectorXcd pair_source(const CouplingTensor& alpha, const Eigen::VectorXcd& slow2,
                             const Eigen::VectorXcd& slow3, double width2, double width3);

/// P(x) = (1/(i hbar)) sqrt(hbar eps0 / pi) sqrt(eps''(x, W23)) A(x) / W23.
PolarizationField nonlinear_noise_polarization_via_alpha(const CouplingTensor& alpha,
                                                         const Eigen::VectorXcd& slow2,
                                                         const Eigen::VectorXcd& slow3, double width2,
                                                         double width3);

struct PolarizationDecomposition {
  PolarizationField reactive;
  PolarizationField noise;
  PolarizationField total;  // from the D_L coefficient map, evaluated directly
};

/// Splits P^(++)(x) = -(hbar W23)^-1 sum_s D_L(x; s, W23) A(s), where D_L(x; s, w) is
/// the coefficient of f(s, w) in D_L(x, w), into the eps0 eps E part and the
/// P_L^(N) part. g23 is the Green field at W23.
PolarizationDecomposition decompose_polarization(const CouplingTensor& alpha, const Geometry1D& geom,
                                                 const GreenField& g23,
                                                 const Eigen::VectorXcd& slow2, const Eigen::VectorXcd& slow3,
                                                 double width2, double width3);

/// max |a - b| / max |b|; 0 when b vanishes.
double max_relative_deviation(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace nlqed
