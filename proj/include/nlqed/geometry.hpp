#pragma once

#include <string>
#include <vector>

#include "nlqed/core.hpp"
#include "nlqed/materials.hpp"

namespace nlqed {

/// Uniform grid over [0, X] with `intervals` cells (intervals + 1 nodes).
class SpatialGrid1D {
 public:
  SpatialGrid1D() = default;
  SpatialGrid1D(double domain, std::size_t intervals);

  std::size_t size() const { return intervals_ + 1; }
  std::size_t intervals() const { return intervals_; }
  double spacing() const { return spacing_; }
  double domain() const { return domain_; }
  double x(std::size_t i) const { return spacing_ * static_cast<double>(i); }

  /// Trapezoid quadrature weight of node i.
  double weight(std::size_t i) const {
    return (i == 0 || i == intervals_) ? 0.5 * spacing_ : spacing_;
  }
  std::vector<double> weights() const;

  /// Node index of a position that must coincide with a node.
  std::size_t node_at(double position) const;

 private:
  double domain_ = 0.0;
  std::size_t intervals_ = 0;
  double spacing_ = 0.0;
};

struct Material {
  std::string name;
  PermittivityModel permittivity;
  Chi2Model chi2;
};

struct Layer {
  double from = 0.0;
  double to = 0.0;
  Material material;
};

/// Stratified medium on [0, X]. The first layer extends to -infinity and the
/// last to +infinity, which realizes outgoing conditions at both ends.
class Geometry1D {
 public:
  Geometry1D() = default;
  Geometry1D(double domain, std::vector<Layer> layers);

  static Geometry1D homogeneous(double domain, Material material);

  double domain() const { return domain_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t layer_count() const { return layers_.size(); }

  /// Layer owning x; layers are half-open [from, to) except the last.
  std::size_t layer_index(double x) const;

  /// Interior layer boundaries, ascending.
  std::vector<double> interfaces() const;

  /// Permittivity at every node; nodes on an interface get the mean of the
  /// two adjacent layers.
  std::vector<Complex> node_permittivity(const SpatialGrid1D& grid, double omega) const;
  std::vector<Complex> node_chi2(const SpatialGrid1D& grid, double omega1, double omega2) const;

  /// k = (w/c) sqrt(eps) with Im k >= 0 in the given layer.
  Complex wavenumber(std::size_t layer, double omega) const;
  Complex left_wavenumber(double omega) const { return wavenumber(0, omega); }
  Complex right_wavenumber(double omega) const { return wavenumber(layers_.size() - 1, omega); }

  /// Throws InvalidArgument unless every interface sits on a node.
  void check_grid(const SpatialGrid1D& grid) const;

  bool any_absorbing(double omega) const;
  bool all_chi2_zero() const;

  /// Same layout with every permittivity's loss multiplied by lambda.
  Geometry1D with_loss_scale(double lambda) const;
  Geometry1D with_chi2_scale(double factor) const;

 private:
  double domain_ = 0.0;
  std::vector<Layer> layers_;
};

/// Principal-branch wavenumber, Im k >= 0 for Im eps >= 0.
inline Complex wavenumber(Complex eps, double omega) {
  return (omega / units::c) * std::sqrt(eps);
}

}  // namespace nlqed
