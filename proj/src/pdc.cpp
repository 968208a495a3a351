#include "nlqed/pdc.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace nlqed {

namespace {

double sinc(double x) { return std::abs(x) < 1e-12 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

std::vector<double> subbin_centres(double center, double width, std::size_t subbins) {
  std::vector<double> out(subbins);
  const double delta = width / static_cast<double>(subbins);
  for (std::size_t m = 0; m < subbins; ++m) {
    out[m] = center - 0.5 * width + (static_cast<double>(m) + 0.5) * delta;
  }
  return out;
}

}  // namespace

PumpSpec PumpSpec::normalized(double carrier, Complex amplitude, Eigen::VectorXcd profile,
                              const SpatialGrid1D& grid) {
  if (profile.size() != static_cast<Eigen::Index>(grid.size())) {
    throw Error(ErrorKind::InvalidArgument, "pump profile does not match the grid");
  }
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < profile.size(); ++i) norm2 += grid.weight(static_cast<std::size_t>(i)) * std::norm(profile(i));
  if (!(norm2 > 0.0)) throw Error(ErrorKind::InvalidArgument, "pump profile vanishes");
  PumpSpec pump;
  pump.carrier = carrier;
  pump.amplitude = amplitude;
  pump.profile = profile / std::sqrt(norm2);
  return pump;
}

PumpSpec PumpSpec::uniform(double carrier, Complex amplitude, const SpatialGrid1D& grid) {
  return normalized(carrier, amplitude, Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(grid.size())), grid);
}

BiphotonAmplitude biphoton_first_order(const EffectiveHamiltonian& h, const PumpSpec& pump, double time,
                                       std::size_t subbins) {
  const auto n = static_cast<Eigen::Index>(h.size());
  if (pump.profile.size() != n) throw Error(ErrorKind::InvalidArgument, "pump profile does not match the grid");
  if (subbins == 0 || !(time > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "need at least one sub-bin and a positive interaction time");
  }
  if (std::abs(pump.carrier - h.centers[0]) > 0.5 * h.widths[0]) {
    throw Error(ErrorKind::BandMismatch, "pump carrier lies outside the sum-frequency band");
  }

  BiphotonAmplitude out;
  out.time = time;
  out.nodes = h.size();
  out.subbins = subbins;
  out.pump_frequency = pump.carrier;
  out.signal_frequencies = subbin_centres(h.centers[1], h.widths[1], subbins);
  out.idler_frequencies = subbin_centres(h.centers[2], h.widths[2], subbins);

  // Spatial factor A(x2, x3) = sum_x1 c(x1; x2, x3) phi(x1) / (S sqrt(w2 w3)).
  const Eigen::VectorXcd projected = h.creation.transpose() * pump.profile;
  const auto w = h.grid.weights();
  const double s = static_cast<double>(subbins);
  Eigen::MatrixXcd spatial(n, n);
  for (Eigen::Index x3 = 0; x3 < n; ++x3) {
    for (Eigen::Index x2 = 0; x2 < n; ++x2) {
      spatial(x2, x3) = projected(x2 + n * x3) /
                        (s * std::sqrt(w[static_cast<std::size_t>(x2)] * w[static_cast<std::size_t>(x3)]));
    }
  }

  const auto modes = static_cast<Eigen::Index>(subbins) * n;
  const auto sb = static_cast<Eigen::Index>(subbins);
  Eigen::MatrixXcd spectral(sb, sb);
  const Complex pref = (-kI / units::hbar) * time * pump.amplitude;
  for (Eigen::Index m3 = 0; m3 < sb; ++m3) {
    for (Eigen::Index m2 = 0; m2 < sb; ++m2) {
      const double delta = out.detuning(static_cast<std::size_t>(m2), static_cast<std::size_t>(m3));
      spectral(m2, m3) = pref * sinc(0.5 * delta * time);
    }
  }
  out.psi.resize(modes, modes);
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < modes; ++c) {
    const Eigen::Index x3 = c / sb;
    const Eigen::Index m3 = c % sb;
    for (Eigen::Index r = 0; r < modes; ++r) {
      out.psi(r, c) = spectral(r % sb, m3) * spatial(r / sb, x3);
    }
  }
  out.norm = out.psi.norm();
  out.weak = out.norm <= 0.1;
  if (out.norm > 1.0) {
    throw Error(ErrorKind::PerturbationInvalid,
                "first-order pair amplitude norm " + std::to_string(out.norm) + " exceeds 1");
  }
  return out;
}

Eigen::VectorXd schmidt_values(const Eigen::MatrixXcd& psi) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(psi);
  return svd.singularValues();
}

double heralded_purity(const Eigen::MatrixXcd& psi) {
  if (psi.size() == 0 || psi.norm() == 0.0) throw Error(ErrorKind::ZeroAmplitude, "pair amplitude vanishes");
  const Eigen::VectorXd lambda = schmidt_values(psi);
  const Eigen::VectorXd l2 = lambda.array().square();
  const double sum2 = l2.sum();
  return l2.squaredNorm() / (sum2 * sum2);
}

double heralded_purity(const BiphotonAmplitude& amplitude) { return heralded_purity(amplitude.psi); }

double purity_dense_oracle(const Eigen::MatrixXcd& psi) {
  if (psi.size() == 0 || psi.norm() == 0.0) throw Error(ErrorKind::ZeroAmplitude, "pair amplitude vanishes");
  const Eigen::MatrixXcd rho_unnormalized = psi * psi.adjoint();
  const Eigen::MatrixXcd rho = rho_unnormalized / rho_unnormalized.trace().real();
  return (rho * rho).trace().real();
}

DetuningSpectrum detuning_spectrum(const BiphotonAmplitude& amplitude) {
  const std::size_t s = amplitude.subbins;
  const std::size_t n = amplitude.nodes;
  if (s < 2) throw Error(ErrorKind::InvalidArgument, "detuning spectrum needs at least two sub-bins");
  const double d2 = amplitude.signal_frequencies[1] - amplitude.signal_frequencies[0];
  const double d3 = amplitude.idler_frequencies[1] - amplitude.idler_frequencies[0];
  if (std::abs(d2 - d3) > 1e-12 * std::max(d2, d3)) {
    throw Error(ErrorKind::InvalidArgument, "signal and idler sub-bins differ in width");
  }
  DetuningSpectrum out;
  out.weight.assign(2 * s - 1, 0.0);
  out.detuning.resize(2 * s - 1);
  for (std::size_t q = 0; q + 1 < 2 * s; ++q) {
    const std::size_t m2 = std::min(q, s - 1);
    out.detuning[q] = amplitude.detuning(m2, q - m2);
  }
  const auto sb = static_cast<Eigen::Index>(s);
  for (std::size_t x3 = 0; x3 < n; ++x3) {
    for (std::size_t m3 = 0; m3 < s; ++m3) {
      const auto c = static_cast<Eigen::Index>(x3 * s + m3);
      for (Eigen::Index r = 0; r < amplitude.psi.rows(); ++r) {
        out.weight[static_cast<std::size_t>(r % sb) + m3] += std::abs(amplitude.psi(r, c));
      }
    }
  }
  const auto peak = static_cast<std::size_t>(
      std::distance(out.weight.begin(), std::max_element(out.weight.begin(), out.weight.end())));
  out.peak_detuning = out.detuning[peak];
  const double half = 0.5 * out.weight[peak];
  auto crossing = [&](std::size_t inner, std::size_t outer) {
    const double t = (out.weight[inner] - half) / (out.weight[inner] - out.weight[outer]);
    return out.detuning[inner] + t * (out.detuning[outer] - out.detuning[inner]);
  };
  std::size_t lo = peak;
  while (lo > 0 && out.weight[lo - 1] >= half) --lo;
  std::size_t hi = peak;
  while (hi + 1 < out.weight.size() && out.weight[hi + 1] >= half) ++hi;
  const double left = lo > 0 ? crossing(lo, lo - 1) : out.detuning.front();
  const double right = hi + 1 < out.weight.size() ? crossing(hi, hi + 1) : out.detuning.back();
  out.fwhm = std::abs(left - right);
  return out;
}

}  // namespace nlqed
