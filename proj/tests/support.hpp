#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "nlqed/geometry.hpp"
#include "nlqed/materials.hpp"

namespace testing {

using nlqed::Complex;

// Baseline medium: eps(1) ~ 2.25 + 0.006i, eps(2) ~ 2.40 + 0.032i.
inline nlqed::Material baseline_material(Complex chi = {0.5, 0.0}) {
  return {"medium", nlqed::PermittivityModel::lorentz(2.0, {{2.0, 3.0, 0.2}}), nlqed::Chi2Model::constant(chi)};
}

inline nlqed::Geometry1D baseline_geometry(Complex chi = {0.5, 0.0}) {
  return nlqed::Geometry1D::homogeneous(2.0, baseline_material(chi));
}

// Two lossy Lorentz layers with different chi2, interface at x = 1.
inline nlqed::Geometry1D layered_geometry() {
  nlqed::Material a{"a", nlqed::PermittivityModel::lorentz(2.0, {{2.0, 3.0, 0.2}}),
                    nlqed::Chi2Model::constant({0.5, 0.0})};
  nlqed::Material b{"b", nlqed::PermittivityModel::lorentz(3.0, {{1.5, 2.6, 0.3}}),
                    nlqed::Chi2Model::constant({0.3, 0.1})};
  return nlqed::Geometry1D(2.0, {{0.0, 1.0, a}, {1.0, 2.0, b}});
}

// Strongly absorbing two-layer slab used for the Green-function checks.
inline nlqed::Geometry1D absorbing_slab() {
  nlqed::Material a{"a", nlqed::PermittivityModel::tabulated({0.1, 10.0}, {{2.0, 0.2}, {2.0, 0.2}}),
                    nlqed::Chi2Model::zero()};
  nlqed::Material b{"b", nlqed::PermittivityModel::tabulated({0.1, 10.0}, {{3.0, 0.3}, {3.0, 0.3}}),
                    nlqed::Chi2Model::zero()};
  return nlqed::Geometry1D(4.0, {{0.0, 2.0, a}, {2.0, 4.0, b}});
}

inline Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    v(i) = Complex{re, normal(rng)};
  }
  return v;
}

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) m.col(c) = random_vector(rng, rows);
  return m;
}

}  // namespace testing
