#include <cmath>
#include <random>

#include "doctest.h"
#include "nlqed/coupling.hpp"
#include "nlqed/pdc.hpp"
#include "support.hpp"

using namespace nlqed;

namespace {

struct Setup {
  SpatialGrid1D grid{2.0, 32};
  EffectiveHamiltonian h;
};

const Setup& degenerate_setup() {
  static const Setup s = [] {
    Setup out;
    const auto geom = testing::baseline_geometry();
    const GreenField g = green_1d(geom, 1.0, out.grid);
    const CouplingTensor alpha = compute_alpha(geom, g, g);
    const ModeLattice lattice{out.grid, FrequencyGrid(0.825, 0.05, 26)};
    const auto slow = reduce_to_bands(lattice, {{"pump", 2.0, 0.2}, {"signal", 1.0, 0.2}});
    out.h = assemble_H_NL(alpha, slow, {0, 1, 1});
    return out;
  }();
  return s;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

TEST_CASE("pump profiles are normalized on the trapezoid grid") {
  const SpatialGrid1D grid(2.0, 32);
  const PumpSpec p = PumpSpec::uniform(2.0, {0.5, 0.5}, grid);
  double norm = 0.0;
  for (Eigen::Index i = 0; i < p.profile.size(); ++i) norm += grid.weight(static_cast<std::size_t>(i)) * std::norm(p.profile(i));
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.amplitude == Complex{0.5, 0.5});
  CHECK_THROWS_AS(PumpSpec::normalized(2.0, 1.0, Eigen::VectorXcd::Zero(33), grid), Error);
  CHECK_THROWS_AS(PumpSpec::normalized(2.0, 1.0, Eigen::VectorXcd::Ones(5), grid), Error);
}

TEST_CASE("pair amplitude is linear in the pump amplitude") {
  const auto& s = degenerate_setup();
  const double t = 20.0 / s.h.widths[1];
  const auto base = biphoton_first_order(s.h, PumpSpec::uniform(2.0, 1.0, s.grid), t, 8);
  CHECK(base.psi.rows() == 33 * 8);
  CHECK(base.weak);
  for (Complex beta : {Complex{0.5, 0.0}, Complex{2.0, -1.0}, Complex{0.0, 3.0}}) {
    const auto scaled = biphoton_first_order(s.h, PumpSpec::uniform(2.0, beta, s.grid), t, 8);
    CHECK((scaled.psi - beta * base.psi).norm() / (std::abs(beta) * base.norm) < 1e-12);
  }
}

TEST_CASE("pair amplitude entries follow the first-order formula") {
  const auto& s = degenerate_setup();
  const double t = 100.0;
  const std::size_t sb = 6;
  const PumpSpec pump = PumpSpec::uniform(2.0, {0.3, 0.4}, s.grid);
  const auto amp = biphoton_first_order(s.h, pump, t, sb);
  const auto w = s.grid.weights();
  const std::size_t n = 33;
  for (std::size_t x2 : {0u, 11u}) {
    for (std::size_t x3 : {4u, 32u}) {
      Complex spatial{0.0, 0.0};
      for (std::size_t x1 = 0; x1 < n; ++x1)
        spatial += s.h.creation(static_cast<Eigen::Index>(x1), static_cast<Eigen::Index>(x2 + n * x3)) * pump.profile(static_cast<Eigen::Index>(x1));
      spatial /= static_cast<double>(sb) * std::sqrt(w[x2] * w[x3]);
      for (std::size_t m2 : {0u, 5u}) {
        for (std::size_t m3 : {2u, 3u}) {
          const double d2 = 1.0 - 0.1 + (static_cast<double>(m2) + 0.5) * 0.2 / sb;
          const double d3 = 1.0 - 0.1 + (static_cast<double>(m3) + 0.5) * 0.2 / sb;
          const double delta = 2.0 - d2 - d3;
          const Complex expected = -kI * t * sinc(0.5 * delta * t) * pump.amplitude * spatial;
          const Complex got = amp.psi(static_cast<Eigen::Index>(x2 * sb + m2), static_cast<Eigen::Index>(x3 * sb + m3));
          CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected));
        }
      }
    }
  }
}

TEST_CASE("detuning spectrum is the multiplicity-weighted sinc envelope") {
  const auto& s = degenerate_setup();
  const double t = 20.0 / s.h.widths[1];
  const std::size_t sb = 16;
  const auto amp = biphoton_first_order(s.h, PumpSpec::uniform(2.0, 1.0, s.grid), t, sb);
  const DetuningSpectrum spec = detuning_spectrum(amp);
  REQUIRE(spec.weight.size() == 2 * sb - 1);
  CHECK(spec.peak_detuning == doctest::Approx(0.0).epsilon(1e-12));
  const double delta = 0.2 / sb;
  const double peak = spec.weight[sb - 1];
  for (std::size_t q = 0; q + 1 < 2 * sb; ++q) {
    const double count = static_cast<double>(std::min(q + 1, 2 * sb - 1 - q));
    const double d = delta * (static_cast<double>(sb) - static_cast<double>(q) - 1.0);
    CHECK(spec.detuning[q] == doctest::Approx(d).epsilon(1e-12));
    const double expected = count * std::abs(sinc(0.5 * d * t)) / static_cast<double>(sb);
    CHECK(spec.weight[q] / peak == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(spec.fwhm * t / (2.0 * kPi) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("heralded purity: bounds, dense oracle, limiting cases") {
  const auto& s = degenerate_setup();
  const auto amp = biphoton_first_order(s.h, PumpSpec::uniform(2.0, 1.0, s.grid), 100.0, 8);
  const double purity = heralded_purity(amp);
  const double dim = static_cast<double>(amp.psi.rows());
  CHECK(purity >= 1.0 / dim);
  CHECK(purity <= 1.0);
  CHECK(std::abs(purity - purity_dense_oracle(amp.psi)) < 1e-12);
  const Eigen::VectorXd lambda = schmidt_values(amp.psi);
  CHECK(lambda.squaredNorm() == doctest::Approx(amp.norm * amp.norm).epsilon(1e-12));

  std::mt19937_64 rng(12);
  const Eigen::VectorXcd u = testing::random_vector(rng, 10);
  const Eigen::VectorXcd v = testing::random_vector(rng, 7);
  const Eigen::MatrixXcd product = u * v.transpose();
  CHECK(heralded_purity(product) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(heralded_purity(Eigen::MatrixXcd::Identity(6, 6)) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  const Eigen::MatrixXcd random = testing::random_matrix(rng, 9, 9);
  CHECK(std::abs(heralded_purity(random) - purity_dense_oracle(random)) < 1e-12);
  try {
    heralded_purity(Eigen::MatrixXcd::Zero(4, 4));
    FAIL("expected ZeroAmplitude");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroAmplitude);
  }
}

TEST_CASE("strong pumps and off-band pumps are refused") {
  const auto& s = degenerate_setup();
  auto kind_of = [&](const PumpSpec& pump) {
    try {
      biphoton_first_order(s.h, pump, 100.0, 4);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind_of(PumpSpec::uniform(2.0, 1e6, s.grid)) == ErrorKind::PerturbationInvalid);
  CHECK(kind_of(PumpSpec::uniform(2.5, 1.0, s.grid)) == ErrorKind::BandMismatch);
  CHECK_THROWS_AS(biphoton_first_order(s.h, PumpSpec::uniform(2.0, 1.0, s.grid), -1.0, 4), Error);
}
