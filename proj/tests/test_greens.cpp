#include <cmath>

#include "doctest.h"
#include "nlqed/greens.hpp"
#include "support.hpp"

using namespace nlqed;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Two semi-infinite media meeting at x = a, source at s < a, solved as a 4x4
// amplitude system: u = A e^{-ik1 x} (x < s), B e^{ik1 x} + C e^{-ik1 x}
// (s < x < a), D e^{ik2 (x - a)} (x > a).
Complex two_media_green(Complex k1, Complex k2, double a, double s, double x) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
  const Complex em = std::exp(-kI * k1 * s);
  const Complex ep = std::exp(kI * k1 * s);
  // continuity at s
  m(0, 0) = em;
  m(0, 1) = -ep;
  m(0, 2) = -em;
  // derivative jump u'(s+) - u'(s-) = -1
  m(1, 0) = kI * k1 * em;
  m(1, 1) = kI * k1 * ep;
  m(1, 2) = -kI * k1 * em;
  rhs(1) = -1.0;
  const Complex fa = std::exp(kI * k1 * a);
  const Complex ga = std::exp(-kI * k1 * a);
  // continuity of u and u' at a
  m(2, 1) = fa;
  m(2, 2) = ga;
  m(2, 3) = -1.0;
  m(3, 1) = kI * k1 * fa;
  m(3, 2) = -kI * k1 * ga;
  m(3, 3) = -kI * k2;
  const Eigen::Vector4cd c = m.partialPivLu().solve(rhs);
  if (x <= s) return c(0) * std::exp(-kI * k1 * x);
  if (x <= a) return c(1) * std::exp(kI * k1 * x) + c(2) * std::exp(-kI * k1 * x);
  return c(3) * std::exp(kI * k2 * (x - a));
}

}  // namespace

TEST_CASE("homogeneous medium reproduces i exp(ik|x-x'|)/(2k)") {
  const auto geom = testing::baseline_geometry();
  const SpatialGrid1D grid(2.0, 64);
  const double omega = 1.3;
  const GreenField g = green_1d(geom, omega, grid);
  const Complex k = geom.wavenumber(0, omega);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Complex exact = kI * std::exp(kI * k * std::abs(grid.x(i) - grid.x(j))) / (2.0 * k);
      err = std::max(err, std::abs(g(i, j) - exact) / std::abs(exact));
    }
  }
  CHECK(err < 1e-12);
  CHECK(g.k_left == k);
  CHECK(g.eps.size() == grid.size());
}

TEST_CASE("two-layer Green function matches the amplitude-matching solution") {
  const auto geom = testing::absorbing_slab();
  const SpatialGrid1D grid(4.0, 64);
  const double omega = 1.5;
  const GreenField g = green_1d(geom, omega, grid);
  const Complex k1 = geom.wavenumber(0, omega);
  const Complex k2 = geom.wavenumber(1, omega);
  double err = 0.0;
  for (std::size_t j = 0; j <= 32; j += 4) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex exact = two_media_green(k1, k2, 2.0, grid.x(j), grid.x(i));
      err = std::max(err, std::abs(g(i, j) - exact) / std::abs(exact));
    }
  }
  CHECK(err < 1e-11);
}

TEST_CASE("reciprocity g(x, x') = g(x', x)") {
  const auto geom = testing::layered_geometry();
  const GreenField g = green_1d(geom, 1.7, SpatialGrid1D(2.0, 96));
  CHECK(reciprocity_error(g) < 1e-13);
}

TEST_CASE("discrete Helmholtz inverts g with second-order residual") {
  const auto geom = testing::absorbing_slab();
  std::vector<double> res;
  for (std::size_t n : {128, 256, 512}) res.push_back(helmholtz_residual(geom, green_1d(geom, 1.5, SpatialGrid1D(4.0, n))));
  CHECK(res[1] < 5e-2);
  for (std::size_t i = 0; i + 1 < res.size(); ++i) {
    const double order = std::log2(res[i] / res[i + 1]);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
  }
}

TEST_CASE("interior closure leaves end rows at zero, outgoing closure inverts homogeneous g exactly") {
  const auto geom = testing::baseline_geometry();
  const SpatialGrid1D grid(2.0, 64);
  const GreenField g = green_1d(geom, 1.0, grid);
  std::vector<Complex> col(grid.size());
  const std::size_t n = grid.size();
  for (std::size_t j = 0; j < n; j += 7) {
    for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
    const auto interior = apply_helmholtz(col, geom, 1.0, grid);
    CHECK(interior.front() == Complex{0.0, 0.0});
    CHECK(interior.back() == Complex{0.0, 0.0});
    const auto outgoing = apply_helmholtz(col, geom, 1.0, grid, Closure::Outgoing);
    const double target0 = j == 0 ? 1.0 / grid.weight(0) : 0.0;
    const double targetn = j == n - 1 ? 1.0 / grid.weight(n - 1) : 0.0;
    CHECK(std::abs(outgoing.front() - target0) < 1e-9 / grid.spacing());
    CHECK(std::abs(outgoing.back() - targetn) < 1e-9 / grid.spacing());
  }
}

TEST_CASE("fluctuation identity holds to quadrature accuracy") {
  const auto geom = testing::absorbing_slab();
  std::vector<double> res;
  for (std::size_t n : {128, 256, 512}) {
    const auto report = verify_green_identity(geom, 1.5, SpatialGrid1D(4.0, n));
    CHECK_FALSE(report.non_absorbing);
    res.push_back(report.residual);
  }
  CHECK(res[2] < 1e-3);
  CHECK(std::log2(res[1] / res[2]) == doctest::Approx(2.0).epsilon(0.15));

  const auto layered = verify_green_identity(testing::layered_geometry(), 2.0, SpatialGrid1D(2.0, 256));
  CHECK(layered.residual < 1e-3);
}

TEST_CASE("lossless geometry is flagged non-absorbing") {
  const Geometry1D vacuum = Geometry1D::homogeneous(1.0, {"vac", PermittivityModel::vacuum(), Chi2Model::zero()});
  const auto report = verify_green_identity(vacuum, 2.0, SpatialGrid1D(1.0, 64));
  CHECK(report.non_absorbing);
  // Radiation through the ends still balances Im g exactly.
  const GreenField g = green_1d(vacuum, 2.0, SpatialGrid1D(1.0, 64));
  const Eigen::MatrixXcd lhs = fluctuation_integral(g);
  CHECK(max_abs(lhs - g.values.imag().cast<Complex>()) < 1e-12);
}

TEST_CASE("guided mode of a lossless slab makes the Wronskian vanish") {
  // eps = 4 core of width 1 between eps = -1 claddings: the even mode obeys
  // 2w tan(w) = w, i.e. w = atan(1/2).
  const Material metal{"m", PermittivityModel::tabulated({0.0, 10.0}, {{-1.0, 0.0}, {-1.0, 0.0}}), Chi2Model::zero()};
  const Material core{"c", PermittivityModel::tabulated({0.0, 10.0}, {{4.0, 0.0}, {4.0, 0.0}}), Chi2Model::zero()};
  const Geometry1D slab(2.0, {{0.0, 0.5, metal}, {0.5, 1.5, core}, {1.5, 2.0, metal}});
  const SpatialGrid1D grid(2.0, 64);
  try {
    green_1d(slab, std::atan(0.5), grid);
    FAIL("expected DegenerateWronskian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateWronskian);
  }
  CHECK_NOTHROW(green_1d(slab, 0.9, grid));
}

TEST_CASE("coarse grids are refused by the Helmholtz operator") {
  const auto geom = testing::baseline_geometry();
  try {
    HelmholtzOperator op(geom, 10.0, SpatialGrid1D(2.0, 32), Closure::Interior);
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooCoarse);
  }
}

TEST_CASE("green_1d rejects gain media and non-positive frequencies") {
  const Material gain{"g", PermittivityModel::tabulated({0.0, 10.0}, {{2.0, -0.1}, {2.0, -0.1}}), Chi2Model::zero()};
  CHECK_THROWS_AS(green_1d(Geometry1D::homogeneous(1.0, gain), 1.0, SpatialGrid1D(1.0, 64)), Error);
  CHECK_THROWS_AS(green_1d(testing::baseline_geometry(), 0.0, SpatialGrid1D(2.0, 64)), Error);
}

TEST_CASE("3D homogeneous dyadic equals (I + grad grad / k^2) exp(ikR)/(4 pi R)") {
  const Complex eps{2.25, 0.1};
  const double omega = 1.2;
  const Complex k = wavenumber(eps, omega);
  const Eigen::Vector3d s(0.1, -0.2, 0.3);
  const Eigen::Vector3d r(0.9, 0.4, -0.5);
  auto scalar = [&](const Eigen::Vector3d& p) {
    const double d = (p - s).norm();
    return std::exp(kI * k * d) / (4.0 * kPi * d);
  };
  // Hessian of the scalar Green function by central differences.
  const double h = 1e-3;
  Eigen::Matrix3cd hess;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Eigen::Vector3d ea = Eigen::Vector3d::Zero(), eb = Eigen::Vector3d::Zero();
      ea(a) = h;
      eb(b) = h;
      hess(a, b) = (scalar(r + ea + eb) - scalar(r + ea - eb) - scalar(r - ea + eb) + scalar(r - ea - eb)) / (4 * h * h);
    }
  }
  const Eigen::Matrix3cd oracle = scalar(r) * Eigen::Matrix3cd::Identity() + hess / (k * k);
  const Eigen::Matrix3cd g = green_homogeneous_3d(eps, omega, r, s);
  CHECK((g - oracle).cwiseAbs().maxCoeff() / oracle.cwiseAbs().maxCoeff() < 1e-5);
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((g - green_homogeneous_3d(eps, omega, s, r)).cwiseAbs().maxCoeff() < 1e-15);
  try {
    green_homogeneous_3d(eps, omega, r, r);
    FAIL("expected CoincidentPoints");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoincidentPoints);
  }
}
