#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nlqed/coupling.hpp"

namespace nlqed {

/// Undepleted classical pump in the sum-frequency band.
struct PumpSpec {
  double carrier = 0.0;
  Complex amplitude{1.0, 0.0};
  Eigen::VectorXcd profile;  // sum_i w_i |profile_i|^2 = 1

  /// Scales `profile` to unit weighted norm. Throws InvalidArgument for a zero profile.
  static PumpSpec normalized(double carrier, Complex amplitude, Eigen::VectorXcd profile,
                             const SpatialGrid1D& grid);
  /// Uniform profile 1/sqrt(X).
  static PumpSpec uniform(double carrier, Complex amplitude, const SpatialGrid1D& grid);
};

/// First-order pair amplitude. Rows index signal modes (x2, m2), columns idler
/// modes (x3, m3), flattened as x * subbins + m.
struct BiphotonAmplitude {
  Eigen::MatrixXcd psi;
  double time = 0.0;
  double norm = 0.0;  // Frobenius norm, the dimensionless strength of the first-order state
  std::size_t nodes = 0;
  std::size_t subbins = 0;
  std::vector<double> signal_frequencies;  // sub-bin centres
  std::vector<double> idler_frequencies;
  double pump_frequency = 0.0;
  bool weak = true;  // norm <= 0.1

  double detuning(std::size_t m2, std::size_t m3) const {
    return pump_frequency - signal_frequencies[m2] - idler_frequencies[m3];
  }
};

/// psi(x2 m2, x3 m3) = (-i/hbar) T sinc(Delta T / 2) beta
///                     sum_x1 c(x1; x2, x3) phi(x1) / (S sqrt(w2 w3))
/// with c the creation-side coefficient of H, S sub-bins per field band and
/// Delta = W_p - W2(m2) - W3(m3). Signal and idler modes are unit normalized
/// (node weight and sub-bin width absorbed), so psi is the two-photon
/// component of the first-order state.
///
/// Throws PerturbationInvalid when ||psi|| > 1 and BandMismatch when the pump
/// carrier lies outside the sum-frequency band.
BiphotonAmplitude biphoton_first_order(const EffectiveHamiltonian& h, const PumpSpec& pump, double time,
                                       std::size_t subbins);

/// Schmidt purity sum lambda^4 / (sum lambda^2)^2 from the singular values of psi.
/// Throws ZeroAmplitude when psi vanishes.
double heralded_purity(const Eigen::MatrixXcd& psi);
double heralded_purity(const BiphotonAmplitude& amplitude);

/// Singular values of psi, descending.
Eigen::VectorXd schmidt_values(const Eigen::MatrixXcd& psi);

/// tr(rho^2) with rho = psi psi^dagger / tr(psi psi^dagger), built densely.
double purity_dense_oracle(const Eigen::MatrixXcd& psi);

struct DetuningSpectrum {
  std::vector<double> detuning;  // W_p - W2 - W3 per anti-diagonal, descending
  std::vector<double> weight;    // sum of |psi| over the anti-diagonal and all nodes
  double peak_detuning = 0.0;
  double fwhm = 0.0;  // linear interpolation at half maximum
};

/// Sums |psi| along sub-bin anti-diagonals (constant W2 + W3). Requires equal
/// sub-bin widths in both field bands.
DetuningSpectrum detuning_spectrum(const BiphotonAmplitude& amplitude);

}  // namespace nlqed
