#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nlqed/core.hpp"
#include "nlqed/geometry.hpp"

namespace nlqed {

/// Scalar Green function g(x, x') of [-d^2/dx^2 - (w/c)^2 eps(x, w)] sampled
/// on every node pair, together with the node permittivity it was built with.
struct GreenField {
  double omega = 0.0;
  SpatialGrid1D grid;
  Eigen::MatrixXcd values;   // values(i, j) = g(x_i, x_j)
  std::vector<Complex> eps;  // node permittivity at omega
  Complex k_left;            // terminal-layer wavenumbers
  Complex k_right;

  Complex operator()(std::size_t i, std::size_t j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  std::size_t size() const { return grid.size(); }
};

/// Transfer-matrix Green function with outgoing conditions at both ends.
///
/// The left solution starts as exp(-i k_L x) in the left terminal layer and
/// the right solution as exp(i k_R (x - X)) in the right one; both are carried
/// across interfaces in (u, u') form. g = -u_L(x<) u_R(x>) / W.
GreenField green_1d(const Geometry1D& geom, double omega, const SpatialGrid1D& grid);

/// Free-space dyadic (I + k^-2 grad grad) exp(ikR)/(4 pi R) for a homogeneous
/// medium. Throws CoincidentPoints for R < 1e-9.
Eigen::Matrix3cd green_homogeneous_3d(Complex eps, double omega, const Eigen::Vector3d& r,
                                      const Eigen::Vector3d& s);

enum class Closure {
  Interior,  // end rows are left at zero
  Outgoing,  // end rows carry the outgoing-wave closure of the terminal layers
};

/// Three-point discretization of -d^2/dx^2 - (w/c)^2 eps(x, w).
class HelmholtzOperator {
 public:
  /// Throws GridTooCoarse when h |k| > 0.3 in any layer.
  HelmholtzOperator(const Geometry1D& geom, double omega, const SpatialGrid1D& grid,
                    Closure closure = Closure::Interior);

  void apply(std::span<const Complex> field, std::span<Complex> out) const;
  std::vector<Complex> apply(std::span<const Complex> field) const;

  std::size_t size() const { return k2_.size(); }
  double omega() const { return omega_; }
  Closure closure() const { return closure_; }
  const std::vector<Complex>& node_permittivity() const { return eps_; }

  static constexpr double kMaxStepTimesWavenumber = 0.3;

 private:
  double omega_ = 0.0;
  double inv_h2_ = 0.0;
  Closure closure_ = Closure::Interior;
  std::vector<Complex> eps_;
  std::vector<Complex> k2_;  // (w/c)^2 eps at each node
  // Outgoing closure rows: a * F_end - b * F_neighbour.
  Complex left_a_, left_b_, right_a_, right_b_;
};

/// Applies the discrete Helmholtz operator to a sampled field. With the
/// default closure the two boundary entries of the result are zero.
std::vector<Complex> apply_helmholtz(std::span<const Complex> field, const Geometry1D& geom,
                                     double omega, const SpatialGrid1D& grid,
                                     Closure closure = Closure::Interior);

/// Relative Frobenius norm of (H G - I/h) over interior rows: the discrete
/// statement that H inverts g.
double helmholtz_residual(const Geometry1D& geom, const GreenField& green);

/// Integral (w/c)^2 int eps''(s) g(x, s) g*(x', s) ds over the whole line:
/// trapezoid over [0, X] plus the closed-form terminal-layer tails
/// Re(k_t) g(x, end) g*(x', end).
Eigen::MatrixXcd fluctuation_integral(const GreenField& green);

struct GreenIdentityReport {
  double residual = 0.0;  // max |lhs - Im g| / max |Im g|
  bool non_absorbing = false;
};

/// Checks int (w/c)^2 eps'' g g* ds = Im g on every node pair.
GreenIdentityReport verify_green_identity(const Geometry1D& geom, double omega,
                                          const SpatialGrid1D& grid);
GreenIdentityReport verify_green_identity(const Geometry1D& geom, const GreenField& green);

/// max |g(x,x') - g(x',x)| / max |g|.
double reciprocity_error(const GreenField& green);

}  // namespace nlqed
