#include <cmath>
#include <random>

#include "doctest.h"
#include "nlqed/materials.hpp"
#include "support.hpp"

using namespace nlqed;

TEST_CASE("lorentz permittivity matches the oscillator sum") {
  const auto eps = PermittivityModel::lorentz(2.0, {{2.0, 3.0, 0.2}, {0.5, 7.0, 1.0}});
  for (double w : {0.0, 0.3, 1.0, 2.9, 3.0, 5.5, 40.0}) {
    // Written out in real arithmetic as an independent check.
    double re = 2.0, im = 0.0;
    for (auto [wp2, w0, g] : {std::tuple{2.0, 3.0, 0.2}, std::tuple{0.5, 7.0, 1.0}}) {
      const double a = w0 * w0 - w * w;
      const double b = g * w;
      re += wp2 * a / (a * a + b * b);
      im += wp2 * b / (a * a + b * b);
    }
    CHECK(eps(w).real() == doctest::Approx(re).epsilon(1e-14));
    CHECK(eps(w).imag() == doctest::Approx(im).epsilon(1e-14));
    CHECK(eval_permittivity(eps, w) == eps(w));
  }
  CHECK(eps.max_feature_frequency() == 7.0);
  CHECK(eps.has_damping());
}

TEST_CASE("lorentz permittivity is causal in sign: eps'' >= 0 for w > 0 and odd in w") {
  const auto eps = testing::baseline_material().permittivity;
  for (double w = 0.05; w < 20.0; w += 0.37) {
    CHECK(eps(w).imag() >= 0.0);
    CHECK(eps(-w).imag() == doctest::Approx(-eps(w).imag()));
    CHECK(eps(-w).real() == doctest::Approx(eps(w).real()));
  }
}

TEST_CASE("vacuum and invalid lorentz parameters") {
  const auto vac = PermittivityModel::vacuum();
  CHECK(vac(1.3) == Complex{1.0, 0.0});
  CHECK_FALSE(vac.has_damping());
  CHECK_THROWS_AS(PermittivityModel::lorentz(0.5, {}), Error);
  CHECK_THROWS_AS(PermittivityModel::lorentz(1.0, {{-1.0, 1.0, 0.1}}), Error);
}

TEST_CASE("tabulated permittivity interpolates, clamps and conjugates") {
  const auto eps = PermittivityModel::tabulated({1.0, 2.0, 4.0}, {{2.0, 0.1}, {3.0, 0.3}, {5.0, 0.1}});
  CHECK(eps(1.5).real() == doctest::Approx(2.5));
  CHECK(eps(1.5).imag() == doctest::Approx(0.2));
  CHECK(eps(3.0).real() == doctest::Approx(4.0));
  CHECK(eps(0.2) == Complex{2.0, 0.1});
  CHECK(eps(9.0) == Complex{5.0, 0.1});
  CHECK(eps(-1.5) == std::conj(eps(1.5)));
  CHECK(eps.background() == 5.0);
  CHECK_THROWS_AS(PermittivityModel::tabulated({1.0, 1.0}, {{1.0, 0.0}, {1.0, 0.0}}), Error);
  CHECK_THROWS_AS(PermittivityModel::tabulated({1.0}, {{1.0, 0.0}}), Error);
}

TEST_CASE("loss scale multiplies eps'' only") {
  const auto eps = testing::baseline_material().permittivity;
  const auto scaled = eps.with_loss_scale(0.25);
  for (double w : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(scaled(w).real() == eps(w).real());
    CHECK(scaled(w).imag() == doctest::Approx(0.25 * eps(w).imag()).epsilon(1e-15));
  }
  CHECK(scaled.with_loss_scale(0.5)(1.0).imag() == doctest::Approx(0.125 * eps(1.0).imag()));
  CHECK_THROWS_AS(eps.with_loss_scale(-1.0), Error);
}

TEST_CASE("chi2 models") {
  CHECK(Chi2Model::zero()(1.0, 2.0) == Complex{0.0, 0.0});
  CHECK(Chi2Model::zero().is_zero());
  const auto c = Chi2Model::constant({0.3, -0.1});
  CHECK(c(0.7, 1.9) == Complex{0.3, -0.1});
  CHECK(c.scaled(2.0)(1.0, 1.0) == Complex{0.6, -0.2});
  CHECK(Chi2Model::constant({0.0, 0.0}).is_zero());

  const auto ref = testing::baseline_material().permittivity;
  const auto miller = Chi2Model::miller(0.2, ref);
  const Complex expect = 0.2 * (ref(3.0) - 1.0) * (ref(1.0) - 1.0) * (ref(2.0) - 1.0);
  CHECK(std::abs(miller(1.0, 2.0) - expect) < 1e-14 * std::abs(expect));
  CHECK(eval_chi2(miller, 1.0, 2.0) == miller(1.0, 2.0));
  CHECK(miller.scaled(0.0).is_zero());
}

TEST_CASE("chi2 is bitwise symmetric in its two frequencies") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> freq(0.05, 6.0);
  const auto ref = testing::baseline_material().permittivity;
  const Chi2Model models[] = {Chi2Model::constant({0.2, 0.4}), Chi2Model::miller(0.7, ref),
                              Chi2Model::miller(0.1, PermittivityModel::tabulated({0.0, 10.0}, {{2.0, 0.1}, {4.0, 0.3}}))};
  for (const auto& m : models) {
    for (int i = 0; i < 200; ++i) {
      const double a = freq(rng);
      const double b = freq(rng);
      CHECK(m(a, b) == m(b, a));
    }
  }
}

TEST_CASE("frequency grid and bands") {
  const FrequencyGrid g(0.5, 0.25, 9);
  CHECK(g.size() == 9);
  CHECK(g.front() == 0.5);
  CHECK(g.back() == doctest::Approx(2.5));
  CHECK(g.index_of(1.24) == 3);
  CHECK(g.index_of(0.1) == FrequencyGrid::npos);
  CHECK(g.index_of(9.0) == FrequencyGrid::npos);
  const auto s = FrequencyGrid::spanning(1.0, 3.0, 5);
  CHECK(s.spacing() == doctest::Approx(0.5));
  CHECK(s.back() == doctest::Approx(3.0));
  CHECK_THROWS_AS(FrequencyGrid(0.0, 0.1, 4), Error);
  CHECK_THROWS_AS(FrequencyGrid(1.0, 0.1, 10, {{"a", 1.2, 0.4}, {"b", 1.4, 0.2}}), Error);
  try {
    FrequencyGrid(1.0, 0.1, 10, {{"a", 1.2, 0.4}, {"b", 1.4, 0.2}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OverlappingBands);
  }
  CHECK_NOTHROW(FrequencyGrid(1.0, 0.1, 10, {{"a", 1.1, 0.2}, {"b", 1.4, 0.2}}));
}

TEST_CASE("Kramers-Kronig: lorentz passes, constant loss fails") {
  const auto lorentz = PermittivityModel::lorentz(1.5, {{1.0, 1.0, 0.1}});
  const auto grid = FrequencyGrid::spanning(0.01, 20.0, 2000);
  const auto good = check_kramers_kronig(lorentz, grid, 1e-2);
  CHECK(good.pass);
  CHECK(good.max_rel_error < 1e-2);
  CHECK(good.evaluated_points > 1000);
  CHECK(good.omega.size() == good.expected.size());

  const auto flat = PermittivityModel::tabulated({0.0, 25.0}, {{2.0, 0.5}, {2.0, 0.5}});
  const auto bad = check_kramers_kronig(flat, grid, 1e-2);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_rel_error > 0.5);
}

TEST_CASE("Kramers-Kronig error decreases under grid refinement") {
  const auto lorentz = PermittivityModel::lorentz(1.0, {{1.0, 1.0, 0.1}});
  double previous = 1.0;
  for (std::size_t m : {250, 500, 1000, 2000}) {
    const double err = check_kramers_kronig(lorentz, FrequencyGrid::spanning(20.0 / m, 20.0, m), 1.0).max_rel_error;
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("Kramers-Kronig refuses narrow grids") {
  const auto lorentz = PermittivityModel::lorentz(1.0, {{1.0, 2.0, 0.1}});
  try {
    check_kramers_kronig(lorentz, FrequencyGrid::spanning(0.01, 10.0, 500), 1e-2);
    FAIL("expected GridTooNarrow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooNarrow);
  }
  const auto table = PermittivityModel::tabulated({0.0, 5.0}, {{2.0, 0.5}, {2.0, 0.5}});
  CHECK_THROWS_AS(check_kramers_kronig(table, FrequencyGrid::spanning(0.01, 10.0, 500), 1e-2), Error);
}
