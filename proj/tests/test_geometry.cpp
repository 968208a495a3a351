#include "doctest.h"
#include "nlqed/geometry.hpp"
#include "support.hpp"

using namespace nlqed;

TEST_CASE("spatial grid nodes and trapezoid weights") {
  const SpatialGrid1D g(2.0, 64);
  CHECK(g.size() == 65);
  CHECK(g.spacing() == doctest::Approx(2.0 / 64));
  CHECK(g.x(64) == doctest::Approx(2.0));
  double sum = 0.0;
  for (double w : g.weights()) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.weight(0) == doctest::Approx(0.5 * g.spacing()));
  CHECK(g.weight(10) == doctest::Approx(g.spacing()));
  CHECK(g.node_at(1.0) == 32);
  CHECK_THROWS_AS(g.node_at(1.01), Error);
  CHECK_THROWS_AS(SpatialGrid1D(2.0, 16), Error);
  CHECK_THROWS_AS(SpatialGrid1D(-1.0, 64), Error);
}

TEST_CASE("layers must tile the domain") {
  const auto m = testing::baseline_material();
  CHECK_THROWS_AS(Geometry1D(2.0, {}), Error);
  CHECK_THROWS_AS(Geometry1D(2.0, {{0.0, 1.0, m}}), Error);
  CHECK_THROWS_AS(Geometry1D(2.0, {{0.0, 1.0, m}, {1.2, 2.0, m}}), Error);
  CHECK_THROWS_AS(Geometry1D(2.0, {{0.0, 1.0, m}, {1.0, 1.0, m}, {1.0, 2.0, m}}), Error);
  const Geometry1D geom(2.0, {{0.0, 0.5, m}, {0.5, 2.0, m}});
  CHECK(geom.layer_count() == 2);
  CHECK(geom.layer_index(0.0) == 0);
  CHECK(geom.layer_index(0.5) == 1);
  CHECK(geom.layer_index(2.0) == 1);
  CHECK(geom.interfaces() == std::vector<double>{0.5});
}

TEST_CASE("interface nodes carry the mean of both layers") {
  const auto geom = testing::layered_geometry();
  const SpatialGrid1D grid(2.0, 64);
  const auto eps = geom.node_permittivity(grid, 1.0);
  const Complex a = geom.layers()[0].material.permittivity(1.0);
  const Complex b = geom.layers()[1].material.permittivity(1.0);
  CHECK(eps[10] == a);
  CHECK(eps[50] == b);
  CHECK(std::abs(eps[32] - 0.5 * (a + b)) < 1e-15);
  const auto chi = geom.node_chi2(grid, 1.0, 1.0);
  CHECK(chi[0] == Complex{0.5, 0.0});
  CHECK(chi[64] == Complex{0.3, 0.1});
  CHECK(std::abs(chi[32] - Complex{0.4, 0.05}) < 1e-15);
  CHECK_THROWS_AS(geom.node_permittivity(SpatialGrid1D(2.0, 63), 1.0), Error);
}

TEST_CASE("wavenumbers are on the decaying branch") {
  const auto geom = testing::layered_geometry();
  for (double w : {0.5, 1.0, 2.0, 4.0}) {
    for (std::size_t j = 0; j < geom.layer_count(); ++j) {
      const Complex k = geom.wavenumber(j, w);
      CHECK(k.imag() >= 0.0);
      CHECK(k.real() > 0.0);
      CHECK(std::abs(k * k - w * w * geom.layers()[j].material.permittivity(w)) < 1e-12);
    }
  }
  CHECK(wavenumber(Complex{-1.0, 0.0}, 2.0).imag() == doctest::Approx(2.0));
}

TEST_CASE("loss and chi2 rescaling") {
  const auto geom = testing::layered_geometry();
  const auto lossless = geom.with_loss_scale(0.0);
  CHECK(geom.any_absorbing(1.0));
  CHECK_FALSE(lossless.any_absorbing(1.0));
  CHECK_FALSE(geom.all_chi2_zero());
  CHECK(geom.with_chi2_scale(0.0).all_chi2_zero());
  const Geometry1D vacuum = Geometry1D::homogeneous(1.0, {"vac", PermittivityModel::vacuum(), Chi2Model::zero()});
  CHECK_FALSE(vacuum.any_absorbing(1.0));
  CHECK(vacuum.all_chi2_zero());
}
