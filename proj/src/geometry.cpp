#include "nlqed/geometry.hpp"

#include <cmath>

namespace nlqed {

SpatialGrid1D::SpatialGrid1D(double domain, std::size_t intervals)
    : domain_(domain), intervals_(intervals) {
  if (!(domain > 0.0)) throw Error(ErrorKind::InvalidArgument, "domain must be positive");
  if (intervals + 1 < 32) throw Error(ErrorKind::InvalidArgument, "spatial grid needs >= 32 points");
  spacing_ = domain / static_cast<double>(intervals);
}

std::vector<double> SpatialGrid1D::weights() const {
  std::vector<double> w(size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(i);
  return w;
}

std::size_t SpatialGrid1D::node_at(double position) const {
  const double t = position / spacing_;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t)) || r < 0.0 ||
      r > static_cast<double>(intervals_)) {
    throw Error(ErrorKind::InvalidArgument,
                "position " + std::to_string(position) + " is not a grid node");
  }
  return static_cast<std::size_t>(r);
}

Geometry1D::Geometry1D(double domain, std::vector<Layer> layers)
    : domain_(domain), layers_(std::move(layers)) {
  if (!(domain > 0.0)) throw Error(ErrorKind::InvalidArgument, "domain must be positive");
  if (layers_.empty()) throw Error(ErrorKind::InvalidArgument, "geometry needs at least one layer");
  const double eps = 1e-12 * domain;
  if (std::abs(layers_.front().from) > eps || std::abs(layers_.back().to - domain) > eps) {
    throw Error(ErrorKind::InvalidArgument, "layers must cover [0, domain]");
  }
  for (std::size_t j = 0; j < layers_.size(); ++j) {
    if (!(layers_[j].to > layers_[j].from)) {
      throw Error(ErrorKind::InvalidArgument, "layer boundaries must be strictly increasing");
    }
    if (j > 0 && std::abs(layers_[j].from - layers_[j - 1].to) > eps) {
      throw Error(ErrorKind::InvalidArgument, "layers must be contiguous");
    }
  }
}

Geometry1D Geometry1D::homogeneous(double domain, Material material) {
  return Geometry1D(domain, {Layer{0.0, domain, std::move(material)}});
}

std::size_t Geometry1D::layer_index(double x) const {
  for (std::size_t j = 0; j + 1 < layers_.size(); ++j) {
    if (x < layers_[j].to) return j;
  }
  return layers_.size() - 1;
}

std::vector<double> Geometry1D::interfaces() const {
  std::vector<double> out;
  for (std::size_t j = 0; j + 1 < layers_.size(); ++j) out.push_back(layers_[j].to);
  return out;
}

void Geometry1D::check_grid(const SpatialGrid1D& grid) const {
  if (std::abs(grid.domain() - domain_) > 1e-12 * domain_) {
    throw Error(ErrorKind::InvalidArgument, "grid domain differs from geometry domain");
  }
  for (double b : interfaces()) (void)grid.node_at(b);
}

namespace {

// Index of the interface located on node i, or -1.
long interface_at_node(const std::vector<double>& interfaces, const SpatialGrid1D& grid,
                       std::size_t i) {
  const double x = grid.x(i);
  for (std::size_t b = 0; b < interfaces.size(); ++b) {
    if (std::abs(interfaces[b] - x) <= 1e-9 * grid.spacing()) return static_cast<long>(b);
  }
  return -1;
}

}  // namespace

std::vector<Complex> Geometry1D::node_permittivity(const SpatialGrid1D& grid, double omega) const {
  check_grid(grid);
  const auto bounds = interfaces();
  std::vector<Complex> layer_eps(layers_.size());
  for (std::size_t j = 0; j < layers_.size(); ++j) layer_eps[j] = layers_[j].material.permittivity(omega);
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long b = interface_at_node(bounds, grid, i);
    if (b >= 0) {
      const auto j = static_cast<std::size_t>(b);
      out[i] = 0.5 * (layer_eps[j] + layer_eps[j + 1]);
    } else {
      out[i] = layer_eps[layer_index(grid.x(i))];
    }
  }
  return out;
}

std::vector<Complex> Geometry1D::node_chi2(const SpatialGrid1D& grid, double omega1,
                                           double omega2) const {
  check_grid(grid);
  const auto bounds = interfaces();
  std::vector<Complex> layer_chi(layers_.size());
  for (std::size_t j = 0; j < layers_.size(); ++j) layer_chi[j] = layers_[j].material.chi2(omega1, omega2);
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long b = interface_at_node(bounds, grid, i);
    if (b >= 0) {
      const auto j = static_cast<std::size_t>(b);
      out[i] = 0.5 * (layer_chi[j] + layer_chi[j + 1]);
    } else {
      out[i] = layer_chi[layer_index(grid.x(i))];
    }
  }
  return out;
}

Complex Geometry1D::wavenumber(std::size_t layer, double omega) const {
  return nlqed::wavenumber(layers_.at(layer).material.permittivity(omega), omega);
}

bool Geometry1D::any_absorbing(double omega) const {
  for (const auto& layer : layers_) {
    if (layer.material.permittivity(omega).imag() > 0.0) return true;
  }
  return false;
}

bool Geometry1D::all_chi2_zero() const {
  for (const auto& layer : layers_) {
    if (!layer.material.chi2.is_zero()) return false;
  }
  return true;
}

Geometry1D Geometry1D::with_loss_scale(double lambda) const {
  Geometry1D g = *this;
  for (auto& layer : g.layers_) layer.material.permittivity = layer.material.permittivity.with_loss_scale(lambda);
  return g;
}

Geometry1D Geometry1D::with_chi2_scale(double factor) const {
  Geometry1D g = *this;
  for (auto& layer : g.layers_) layer.material.chi2 = layer.material.chi2.scaled(factor);
  return g;
}

}  // namespace nlqed
