#pragma once

#include <string>
#include <vector>

#include "nlqed/core.hpp"

namespace nlqed {

struct LorentzOscillator {
  double plasma_strength = 0.0;  // wp^2
  double resonance = 0.0;        // w0
  double damping = 0.0;          // gamma
};

/// Causal linear permittivity eps(w) = eps' + i eps''.
///
/// Two families are supported: a Lorentz-oscillator sum
///   eps(w) = background + sum_j wp_j^2 / (w0_j^2 - w^2 - i gamma_j w)
/// and a tabulated eps(w) read from file (linear interpolation, clamped at
/// the table ends). Tabulated data is not causal by construction and has to
/// pass check_kramers_kronig before use.
///
/// `loss_scale` multiplies eps'' and is used to take the lossless limit on
/// outputs while keeping the dynamical amplitudes fixed.
class PermittivityModel {
 public:
  PermittivityModel() = default;

  static PermittivityModel vacuum();
  static PermittivityModel lorentz(double background, std::vector<LorentzOscillator> oscillators);
  static PermittivityModel tabulated(std::vector<double> omega, std::vector<Complex> eps);

  Complex operator()(double omega) const;

  bool is_tabulated() const { return !table_omega_.empty(); }
  double background() const;
  const std::vector<LorentzOscillator>& oscillators() const { return oscillators_; }
  double loss_scale() const { return loss_scale_; }

  /// Largest resonance frequency or width; zero for tabulated data.
  double max_feature_frequency() const;
  bool has_damping() const;

  PermittivityModel with_loss_scale(double lambda) const;

  const std::vector<double>& table_omega() const { return table_omega_; }

 private:
  Complex eval_unscaled(double omega) const;

  double background_ = 1.0;
  std::vector<LorentzOscillator> oscillators_;
  std::vector<double> table_omega_;
  std::vector<Complex> table_eps_;
  double loss_scale_ = 1.0;
};

Complex eval_permittivity(const PermittivityModel& model, double omega);

enum class Chi2Kind { Zero, Constant, Miller };

/// Scalar chi2(w1, w2). Miller's rule ties the dispersion to a reference
/// permittivity: chi2 = delta (eps(w1+w2)-1)(eps(w1)-1)(eps(w2)-1).
/// Evaluation is symmetric in (w1, w2) bit for bit.
class Chi2Model {
 public:
  Chi2Model() = default;

  static Chi2Model zero();
  static Chi2Model constant(Complex amplitude);
  static Chi2Model miller(double delta, PermittivityModel reference);

  Complex operator()(double omega1, double omega2) const;

  Chi2Kind kind() const { return kind_; }
  Complex amplitude() const { return amplitude_; }
  double miller_delta() const { return miller_delta_; }
  bool is_zero() const;

  /// Same model with its overall strength multiplied by `factor`.
  Chi2Model scaled(double factor) const;

 private:
  Chi2Kind kind_ = Chi2Kind::Zero;
  Complex amplitude_{0.0, 0.0};
  double miller_delta_ = 0.0;
  PermittivityModel reference_;
};

Complex eval_chi2(const Chi2Model& model, double omega1, double omega2);

/// A named window of width `width` around `carrier`.
struct Band {
  std::string name;
  double carrier = 0.0;
  double width = 0.0;
};

/// Uniform grid of positive angular frequencies plus optional named bands.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;
  FrequencyGrid(double start, double spacing, std::size_t count, std::vector<Band> bands = {});

  /// Grid with `count` points spaced so that the last point is `stop`.
  static FrequencyGrid spanning(double start, double stop, std::size_t count);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }
  double spacing() const { return spacing_; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  const std::vector<Band>& bands() const { return bands_; }

  /// Nearest index to `omega`, or npos when farther than half a spacing.
  std::size_t index_of(double omega) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<double> points_;
  double spacing_ = 0.0;
  std::vector<Band> bands_;
};

struct KramersKronigReport {
  double max_rel_error = 0.0;
  bool pass = false;
  std::size_t evaluated_points = 0;
  std::vector<double> omega;
  std::vector<double> expected;       // eps'(w) - background
  std::vector<double> reconstructed;  // principal-value Hilbert transform of eps''
};

/// Rebuilds eps'(w) - background from eps'' with a principal-value trapezoid
/// rule (singular point removed by subtraction, its log integral added in
/// closed form) and compares on the interior 60% of the grid.
///
/// Throws GridTooNarrow when the grid does not reach 20x the largest
/// resonance frequency or width, or when tabulated data does not cover it.
KramersKronigReport check_kramers_kronig(const PermittivityModel& model, const FrequencyGrid& grid,
                                         double tol);

}  // namespace nlqed
