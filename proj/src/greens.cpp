#include "nlqed/greens.hpp"

#include <algorithm>
#include <cmath>

#include "nlqed/kernels.hpp"

namespace nlqed {

namespace {

struct WaveState {
  Complex u;
  Complex du;
};

// Solution of u'' + k^2 u = 0 carried from `origin` (state s) by `d`.
WaveState propagate(const WaveState& s, Complex k, double d) {
  if (std::abs(k) * std::abs(d) < 1e-300) return {s.u + s.du * d, s.du};
  const Complex c = std::cos(k * d);
  const Complex sn = std::sin(k * d);
  return {s.u * c + s.du * sn / k, -s.u * k * sn + s.du * c};
}

}  // namespace

GreenField green_1d(const Geometry1D& geom, double omega, const SpatialGrid1D& grid) {
  if (!(omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "green_1d needs omega > 0");
  geom.check_grid(grid);
  const std::size_t layers = geom.layer_count();
  std::vector<Complex> k(layers);
  for (std::size_t j = 0; j < layers; ++j) {
    if (geom.layers()[j].material.permittivity(omega).imag() < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "green_1d needs eps'' >= 0 in every layer");
    }
    k[j] = geom.wavenumber(j, omega);
  }
  const auto& ls = geom.layers();

  // Left solution: exp(-i k_0 x) in the left terminal layer.
  std::vector<WaveState> left_at_from(layers);
  left_at_from[0] = {Complex{1.0, 0.0}, -kI * k[0]};
  for (std::size_t j = 1; j < layers; ++j) {
    left_at_from[j] = propagate(left_at_from[j - 1], k[j - 1], ls[j - 1].to - ls[j - 1].from);
  }
  // Right solution: exp(i k_N (x - X)) in the right terminal layer.
  std::vector<WaveState> right_at_to(layers);
  right_at_to[layers - 1] = {Complex{1.0, 0.0}, kI * k[layers - 1]};
  for (std::size_t j = layers - 1; j-- > 0;) {
    right_at_to[j] = propagate(right_at_to[j + 1], k[j + 1], ls[j + 1].from - ls[j + 1].to);
  }

  const std::size_t n = grid.size();
  std::vector<Complex> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    const std::size_t j = geom.layer_index(x);
    left[i] = propagate(left_at_from[j], k[j], x - ls[j].from).u;
    right[i] = propagate(right_at_to[j], k[j], x - ls[j].to).u;
  }

  const WaveState r0 = propagate(right_at_to[0], k[0], -ls[0].to);
  const Complex wronskian = r0.du + kI * k[0] * r0.u;  // u_L u_R' - u_L' u_R at x = 0
  const double scale = std::abs(r0.du) + std::abs(k[0]) * std::abs(r0.u);
  if (!(std::abs(wronskian) > 1e-12 * scale)) {
    throw Error(ErrorKind::DegenerateWronskian,
                "left and right solutions are linearly dependent at omega = " + std::to_string(omega) +
                    "; add loss to the resonant layer");
  }

  GreenField g;
  g.omega = omega;
  g.grid = grid;
  g.eps = geom.node_permittivity(grid, omega);
  g.k_left = k.front();
  g.k_right = k.back();
  kernels::omp::fill_green(left, right, 1.0 / wronskian, g.values);
  return g;
}

Eigen::Matrix3cd green_homogeneous_3d(Complex eps, double omega, const Eigen::Vector3d& r,
                                      const Eigen::Vector3d& s) {
  const Eigen::Vector3d d = r - s;
  const double dist = d.norm();
  if (dist < 1e-9) throw Error(ErrorKind::CoincidentPoints, "the dyadic is singular at r = s");
  if (eps.imag() < 0.0) throw Error(ErrorKind::InvalidArgument, "eps'' must be >= 0");
  const Complex k = wavenumber(eps, omega);
  const Complex kr = k * dist;
  const Complex scalar = std::exp(kI * kr) / (4.0 * kPi * dist);
  const Complex a = 1.0 + kI / kr - 1.0 / (kr * kr);
  const Complex b = -1.0 - 3.0 * kI / kr + 3.0 / (kr * kr);
  const Eigen::Vector3d u = d / dist;
  Eigen::Matrix3cd out = a * Eigen::Matrix3cd::Identity();
  out += b * (u * u.transpose()).cast<Complex>();
  return scalar * out;
}

HelmholtzOperator::HelmholtzOperator(const Geometry1D& geom, double omega, const SpatialGrid1D& grid,
                                     Closure closure)
    : omega_(omega), closure_(closure) {
  const double h = grid.spacing();
  for (std::size_t j = 0; j < geom.layer_count(); ++j) {
    const double hk = h * std::abs(geom.wavenumber(j, omega));
    if (hk > kMaxStepTimesWavenumber) {
      throw Error(ErrorKind::GridTooCoarse, "h|k| = " + std::to_string(hk) + " in layer " +
                                                std::to_string(j) + " at omega = " + std::to_string(omega));
    }
  }
  inv_h2_ = 1.0 / (h * h);
  eps_ = geom.node_permittivity(grid, omega);
  const double w2 = (omega / units::c) * (omega / units::c);
  k2_.resize(eps_.size());
  for (std::size_t i = 0; i < eps_.size(); ++i) k2_[i] = w2 * eps_[i];

  auto closure_row = [h](Complex k, Complex& a, Complex& b) {
    const Complex z = std::exp(kI * k * h);
    b = 2.0 * k / (h * std::sin(k * h));
    a = b / z;
  };
  closure_row(geom.left_wavenumber(omega), left_a_, left_b_);
  closure_row(geom.right_wavenumber(omega), right_a_, right_b_);
}

void HelmholtzOperator::apply(std::span<const Complex> field, std::span<Complex> out) const {
  const std::size_t n = k2_.size();
  if (field.size() != n || out.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "field size does not match the grid");
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (2.0 * field[i] - field[i - 1] - field[i + 1]) * inv_h2_ - k2_[i] * field[i];
  }
  if (closure_ == Closure::Outgoing) {
    out[0] = left_a_ * field[0] - left_b_ * field[1];
    out[n - 1] = right_a_ * field[n - 1] - right_b_ * field[n - 2];
  } else {
    out[0] = Complex{0.0, 0.0};
    out[n - 1] = Complex{0.0, 0.0};
  }
}

std::vector<Complex> HelmholtzOperator::apply(std::span<const Complex> field) const {
  std::vector<Complex> out(field.size());
  apply(field, out);
  return out;
}

std::vector<Complex> apply_helmholtz(std::span<const Complex> field, const Geometry1D& geom,
                                     double omega, const SpatialGrid1D& grid, Closure closure) {
  return HelmholtzOperator(geom, omega, grid, closure).apply(field);
}

double helmholtz_residual(const Geometry1D& geom, const GreenField& green) {
  const HelmholtzOperator op(geom, green.omega, green.grid);
  const std::size_t n = green.size();
  const double inv_h = 1.0 / green.grid.spacing();
  std::vector<Complex> column(n), applied(n);
  double err2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = green(i, j);
    op.apply(column, applied);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Complex target = (i == j) ? Complex{inv_h, 0.0} : Complex{0.0, 0.0};
      err2 += std::norm(applied[i] - target);
    }
  }
  const double ref2 = static_cast<double>(n - 2) * inv_h * inv_h;
  return std::sqrt(err2 / ref2);
}

Eigen::MatrixXcd fluctuation_integral(const GreenField& green) {
  const auto n = static_cast<Eigen::Index>(green.size());
  const double w2 = (green.omega / units::c) * (green.omega / units::c);
  Eigen::VectorXd weight(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    weight(s) = w2 * green.grid.weight(static_cast<std::size_t>(s)) * green.eps[static_cast<std::size_t>(s)].imag();
  }
  Eigen::MatrixXcd out = green.values * weight.asDiagonal() * green.values.adjoint();
  const auto left = green.values.col(0);
  const auto right = green.values.col(n - 1);
  out += green.k_left.real() * (left * left.adjoint());
  out += green.k_right.real() * (right * right.adjoint());
  return out;
}

GreenIdentityReport verify_green_identity(const Geometry1D& geom, const GreenField& green) {
  GreenIdentityReport report;
  if (!geom.any_absorbing(green.omega)) {
    report.non_absorbing = true;
    return report;
  }
  const Eigen::MatrixXcd lhs = fluctuation_integral(green);
  const Eigen::MatrixXd im = green.values.imag();
  const double scale = im.cwiseAbs().maxCoeff();
  report.residual = (lhs - im.cast<Complex>()).cwiseAbs().maxCoeff() / scale;
  return report;
}

GreenIdentityReport verify_green_identity(const Geometry1D& geom, double omega,
                                          const SpatialGrid1D& grid) {
  return verify_green_identity(geom, green_1d(geom, omega, grid));
}

double reciprocity_error(const GreenField& green) {
  const double scale = green.values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (green.values - green.values.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace nlqed
