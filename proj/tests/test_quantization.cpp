#include <cmath>
#include <random>

#include "doctest.h"
#include "nlqed/quantization.hpp"
#include "support.hpp"

using namespace nlqed;

namespace {

std::vector<GreenField> greens_on(const Geometry1D& geom, const ModeLattice& lattice) {
  std::vector<GreenField> out;
  for (double w : lattice.frequency.points()) out.push_back(green_1d(geom, w, lattice.space));
  return out;
}

}  // namespace

TEST_CASE("E coefficient map is i sqrt(1/pi) w^2 sqrt(eps'') g w_j") {
  const auto geom = testing::layered_geometry();
  const ModeLattice lattice{SpatialGrid1D(2.0, 32), FrequencyGrid(0.9, 0.1, 3)};
  const auto greens = greens_on(geom, lattice);
  const FieldAssembly e = assemble_E(lattice, greens);
  REQUIRE(e.blocks.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const double w = lattice.frequency[k];
    const auto eps = geom.node_permittivity(lattice.space, w);
    for (std::size_t i : {0u, 7u, 16u, 32u}) {
      for (std::size_t j : {0u, 5u, 16u, 31u}) {
        const Complex expected = kI * std::sqrt(1.0 / kPi) * w * w * std::sqrt(eps[j].imag()) *
                                 greens[k](i, j) * lattice.space.weight(j);
        CHECK(std::abs(e.blocks[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected) <=
              1e-14 * std::abs(expected));
      }
    }
  }
  std::mt19937_64 rng(1);
  const Eigen::VectorXcd a = testing::random_vector(rng, 33);
  CHECK((e.apply(1, a) - e.blocks[1] * a).norm() == 0.0);
}

TEST_CASE("a lattice frequency without a Green field is an error") {
  const auto geom = testing::baseline_geometry();
  const ModeLattice lattice{SpatialGrid1D(2.0, 32), FrequencyGrid(1.0, 0.1, 2)};
  const std::vector<GreenField> only_first{green_1d(geom, 1.0, lattice.space)};
  try {
    assemble_E(lattice, only_first);
    FAIL("expected MissingGreen");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingGreen);
  }
}

TEST_CASE("E commutator reproduces the Green identity residual") {
  const auto geom = testing::absorbing_slab();
  const ModeLattice lattice{SpatialGrid1D(4.0, 256), FrequencyGrid(1.5, 0.1, 1)};
  const auto greens = greens_on(geom, lattice);
  const FieldAssembly e = assemble_E(lattice, greens);
  const CommutatorReport report = check_E_commutator(e, greens, lattice, 1e-3);
  const GreenIdentityReport identity = verify_green_identity(geom, greens[0]);
  CHECK(report.residual == doctest::Approx(identity.residual).epsilon(1e-6));
  CHECK(report.construction_deviation < 1e-12);
  CHECK(report.pass);
  CHECK_FALSE(report.non_absorbing);

  const Geometry1D vacuum = Geometry1D::homogeneous(1.0, {"vac", PermittivityModel::vacuum(), Chi2Model::zero()});
  const ModeLattice vl{SpatialGrid1D(1.0, 32), FrequencyGrid(1.0, 0.1, 1)};
  const auto vg = greens_on(vacuum, vl);
  const CommutatorReport vr = check_E_commutator(assemble_E(vl, vg), vg, vl, 1e-3);
  CHECK(vr.non_absorbing);
}

TEST_CASE("D_L = eps E + P_N agrees with the curl-curl route") {
  const auto geom = testing::layered_geometry();
  std::vector<double> dev;
  for (std::size_t n : {64, 128, 256}) {
    const ModeLattice lattice{SpatialGrid1D(2.0, n), FrequencyGrid(1.0, 0.2, 2)};
    const auto greens = greens_on(geom, lattice);
    const FieldAssembly e = assemble_E(lattice, greens);
    const FieldAssembly pn = linear_noise_polarization(lattice, geom);
    const FieldAssembly d = assemble_D_linear(e, pn, lattice, geom);
    dev.push_back(displacement_route_deviation(e, d, lattice));
  }
  CHECK(dev[2] < 1e-2);
  CHECK(dev[1] < dev[0]);
  CHECK(dev[2] < dev[1]);
}

TEST_CASE("band reduction: unit-norm weights, widths quantized to the grid") {
  const ModeLattice lattice{SpatialGrid1D(2.0, 32), FrequencyGrid(0.8, 0.05, 30)};
  const SlowVariableSet slow = reduce_to_bands(lattice, {{"signal", 1.0, 0.2}, {"pump", 2.0, 0.2}});
  REQUIRE(slow.size() == 2);
  const BandModes& s = slow.band("signal");
  CHECK(s.indices.size() == 5);
  CHECK(s.width == doctest::Approx(0.25));
  CHECK(s.center == doctest::Approx(1.0));
  double norm2 = 0.0;
  for (double w : s.weights) norm2 += w * w;
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(slow.band("idler"), Error);

  // flat band: f~ = sqrt(dOmega) f, so |f~|^2 = sum_k dw |f|^2 (Parseval)
  std::mt19937_64 rng(2);
  const Eigen::VectorXcd a = testing::random_vector(rng, 33);
  LatticeAmplitudes amps(33, 30);
  for (Eigen::Index k = 0; k < 30; ++k) amps.col(k) = a;
  const Eigen::VectorXcd f = slow.reduce(0, amps);
  CHECK((f - std::sqrt(s.width) * a).norm() < 1e-13 * a.norm());
  CHECK(f.squaredNorm() == doctest::Approx(s.width * a.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("band reduction rejects overlapping and out-of-grid bands") {
  const ModeLattice lattice{SpatialGrid1D(2.0, 32), FrequencyGrid(0.8, 0.05, 30)};
  auto kind_of = [&](const std::vector<Band>& bands) {
    try {
      reduce_to_bands(lattice, bands);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind_of({{"a", 1.0, 0.2}, {"b", 1.15, 0.2}}) == ErrorKind::OverlappingBands);
  CHECK(kind_of({{"a", 0.8, 0.3}}) == ErrorKind::BandOutsideGrid);
  CHECK(kind_of({{"a", 2.3, 0.2}}) == ErrorKind::BandOutsideGrid);
}

TEST_CASE("band field converges to the carrier field as bins shrink") {
  const auto geom = testing::baseline_geometry();
  const SpatialGrid1D grid(2.0, 64);
  std::mt19937_64 rng(9);
  const Eigen::VectorXcd a = testing::random_vector(rng, 65);
  const GreenField carrier = green_1d(geom, 1.0, grid);
  std::vector<double> dev;
  for (double dw : {0.1, 0.05, 0.025}) {
    const ModeLattice lattice{grid, FrequencyGrid(1.0 - dw, dw, 3)};
    const auto greens = greens_on(geom, lattice);
    const FieldAssembly e = assemble_E(lattice, greens);
    const SlowVariableSet slow = reduce_to_bands(lattice, {{"s", 1.0, 3 * dw}});
    LatticeAmplitudes amps(65, 3);
    for (Eigen::Index k = 0; k < 3; ++k) amps.col(k) = a;
    const Eigen::VectorXcd banded = band_field(e, amps, slow.band(0), dw);
    const Eigen::VectorXcd approx = carrier_field(carrier, slow.reduce(0, amps), slow.band(0).width);
    dev.push_back((banded - approx).norm() / banded.norm());
  }
  CHECK(dev[0] < 5e-2);
  CHECK(std::log2(dev[0] / dev[1]) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(dev[1] / dev[2]) == doctest::Approx(2.0).epsilon(0.15));
}
