#include "nlqed/materials.hpp"

#include <algorithm>
#include <cmath>

namespace nlqed {

PermittivityModel PermittivityModel::vacuum() { return lorentz(1.0, {}); }

PermittivityModel PermittivityModel::lorentz(double background,
                                             std::vector<LorentzOscillator> oscillators) {
  if (!(background >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "background permittivity must be >= 1");
  }
  for (const auto& osc : oscillators) {
    if (osc.plasma_strength < 0.0 || osc.resonance < 0.0 || osc.damping < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "oscillator parameters must be non-negative");
    }
  }
  PermittivityModel m;
  m.background_ = background;
  m.oscillators_ = std::move(oscillators);
  return m;
}

PermittivityModel PermittivityModel::tabulated(std::vector<double> omega, std::vector<Complex> eps) {
  if (omega.size() != eps.size() || omega.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "tabulated permittivity needs >= 2 matching samples");
  }
  for (std::size_t i = 1; i < omega.size(); ++i) {
    if (!(omega[i] > omega[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "tabulated frequencies must be strictly increasing");
    }
  }
  if (omega.front() < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "tabulated frequencies must be non-negative");
  }
  PermittivityModel m;
  m.table_omega_ = std::move(omega);
  m.table_eps_ = std::move(eps);
  m.background_ = m.table_eps_.back().real();
  return m;
}

Complex PermittivityModel::eval_unscaled(double omega) const {
  if (is_tabulated()) {
    const double w = std::abs(omega);
    Complex value;
    if (w <= table_omega_.front()) {
      value = table_eps_.front();
    } else if (w >= table_omega_.back()) {
      value = table_eps_.back();
    } else {
      const auto it = std::upper_bound(table_omega_.begin(), table_omega_.end(), w);
      const std::size_t hi = static_cast<std::size_t>(it - table_omega_.begin());
      const std::size_t lo = hi - 1;
      const double t = (w - table_omega_[lo]) / (table_omega_[hi] - table_omega_[lo]);
      value = (1.0 - t) * table_eps_[lo] + t * table_eps_[hi];
    }
    return omega < 0.0 ? std::conj(value) : value;
  }
  Complex eps{background_, 0.0};
  for (const auto& osc : oscillators_) {
    const Complex denom{osc.resonance * osc.resonance - omega * omega, -osc.damping * omega};
    eps += osc.plasma_strength / denom;
  }
  return eps;
}

Complex PermittivityModel::operator()(double omega) const {
  const Complex eps = eval_unscaled(omega);
  if (loss_scale_ == 1.0) return eps;
  return {eps.real(), loss_scale_ * eps.imag()};
}

double PermittivityModel::background() const { return background_; }

double PermittivityModel::max_feature_frequency() const {
  double f = 0.0;
  for (const auto& osc : oscillators_) f = std::max({f, osc.resonance, osc.damping});
  return f;
}

bool PermittivityModel::has_damping() const {
  if (is_tabulated()) return false;
  return std::any_of(oscillators_.begin(), oscillators_.end(),
                     [](const LorentzOscillator& o) { return o.damping > 0.0 && o.plasma_strength > 0.0; });
}

PermittivityModel PermittivityModel::with_loss_scale(double lambda) const {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::InvalidArgument, "loss scale must be >= 0");
  PermittivityModel m = *this;
  m.loss_scale_ = loss_scale_ * lambda;
  return m;
}

Complex eval_permittivity(const PermittivityModel& model, double omega) { return model(omega); }

Chi2Model Chi2Model::zero() { return Chi2Model{}; }

Chi2Model Chi2Model::constant(Complex amplitude) {
  Chi2Model m;
  m.kind_ = Chi2Kind::Constant;
  m.amplitude_ = amplitude;
  return m;
}

Chi2Model Chi2Model::miller(double delta, PermittivityModel reference) {
  Chi2Model m;
  m.kind_ = Chi2Kind::Miller;
  m.miller_delta_ = delta;
  m.reference_ = std::move(reference);
  return m;
}

Complex Chi2Model::operator()(double omega1, double omega2) const {
  switch (kind_) {
    case Chi2Kind::Zero:
      return {0.0, 0.0};
    case Chi2Kind::Constant:
      return amplitude_;
    case Chi2Kind::Miller: {
      // (a*b) is bitwise commutative for std::complex, so the swap is exact.
      const Complex a = reference_(omega1) - 1.0;
      const Complex b = reference_(omega2) - 1.0;
      const Complex sum = reference_(omega1 + omega2) - 1.0;
      return miller_delta_ * (sum * (a * b));
    }
  }
  return {0.0, 0.0};
}

bool Chi2Model::is_zero() const {
  switch (kind_) {
    case Chi2Kind::Zero: return true;
    case Chi2Kind::Constant: return amplitude_ == Complex{0.0, 0.0};
    case Chi2Kind::Miller: return miller_delta_ == 0.0;
  }
  return true;
}

Chi2Model Chi2Model::scaled(double factor) const {
  Chi2Model m = *this;
  m.amplitude_ *= factor;
  m.miller_delta_ *= factor;
  return m;
}

Complex eval_chi2(const Chi2Model& model, double omega1, double omega2) {
  return model(omega1, omega2);
}

FrequencyGrid::FrequencyGrid(double start, double spacing, std::size_t count,
                             std::vector<Band> bands)
    : spacing_(spacing), bands_(std::move(bands)) {
  if (!(start > 0.0) || !(spacing > 0.0) || count == 0) {
    throw Error(ErrorKind::InvalidArgument, "frequency grid needs start > 0, spacing > 0, count > 0");
  }
  points_.resize(count);
  for (std::size_t i = 0; i < count; ++i) points_[i] = start + spacing * static_cast<double>(i);
  for (std::size_t a = 0; a < bands_.size(); ++a) {
    if (!(bands_[a].width > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "band '" + bands_[a].name + "' needs a positive width");
    }
    for (std::size_t b = a + 1; b < bands_.size(); ++b) {
      const double gap = std::abs(bands_[a].carrier - bands_[b].carrier);
      if (gap < 0.5 * (bands_[a].width + bands_[b].width)) {
        throw Error(ErrorKind::OverlappingBands,
                    "bands '" + bands_[a].name + "' and '" + bands_[b].name + "' overlap");
      }
    }
  }
}

FrequencyGrid FrequencyGrid::spanning(double start, double stop, std::size_t count) {
  if (count < 2 || !(stop > start)) {
    throw Error(ErrorKind::InvalidArgument, "spanning grid needs count >= 2 and stop > start");
  }
  return FrequencyGrid(start, (stop - start) / static_cast<double>(count - 1), count);
}

std::size_t FrequencyGrid::index_of(double omega) const {
  if (points_.empty()) return npos;
  const double t = (omega - points_.front()) / spacing_;
  const double r = std::round(t);
  if (r < 0.0 || r > static_cast<double>(points_.size() - 1)) return npos;
  if (std::abs(t - r) > 0.5 + 1e-9) return npos;
  return static_cast<std::size_t>(r);
}

KramersKronigReport check_kramers_kronig(const PermittivityModel& model, const FrequencyGrid& grid,
                                         double tol) {
  const std::size_t m = grid.size();
  if (m < 8) throw Error(ErrorKind::GridTooNarrow, "need at least 8 frequency points");
  const double wmax = grid.back();
  const double feature = model.max_feature_frequency();
  if (wmax < 20.0 * feature) {
    throw Error(ErrorKind::GridTooNarrow,
                "grid must reach 20x the largest resonance frequency/width (" +
                    std::to_string(20.0 * feature) + "), got " + std::to_string(wmax));
  }
  if (model.is_tabulated() && (grid.back() > model.table_omega().back() * (1.0 + 1e-12) ||
                               grid.front() < model.table_omega().front() * (1.0 - 1e-12))) {
    throw Error(ErrorKind::GridTooNarrow, "grid extends beyond tabulated permittivity data");
  }

  // Nodes: w = 0 followed by the grid; the subtracted integrand
  // [w' eps''(w') - w eps''(w)] / (w'^2 - w^2) is smooth in w'.
  std::vector<double> nodes(m + 1);
  std::vector<double> weights(m + 1);
  std::vector<double> loss(m + 1);
  nodes[0] = 0.0;
  for (std::size_t i = 0; i < m; ++i) nodes[i + 1] = grid[i];
  for (std::size_t i = 0; i <= m; ++i) loss[i] = model(nodes[i]).imag();
  for (std::size_t i = 0; i <= m; ++i) {
    const double left = i > 0 ? nodes[i] - nodes[i - 1] : 0.0;
    const double right = i < m ? nodes[i + 1] - nodes[i] : 0.0;
    weights[i] = 0.5 * (left + right);
  }
  std::vector<double> moment(m + 1);  // w eps''(w)
  for (std::size_t i = 0; i <= m; ++i) moment[i] = nodes[i] * loss[i];

  const std::size_t first = static_cast<std::size_t>(std::floor(0.2 * static_cast<double>(m)));
  const std::size_t last = static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(m)));

  KramersKronigReport report;
  double max_true = 0.0;
  double max_recon = 0.0;
  double max_diff = 0.0;
  for (std::size_t gi = first; gi < last && gi < m; ++gi) {
    const std::size_t j = gi + 1;
    const double w = nodes[j];
    double sum = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      double integrand;
      if (i == j) {
        const std::size_t lo = j - 1;
        const std::size_t hi = j < m ? j + 1 : j;
        const double slope = (moment[hi] - moment[lo]) / (nodes[hi] - nodes[lo]);
        integrand = slope / (2.0 * w);
      } else {
        integrand = (moment[i] - moment[j]) / (nodes[i] * nodes[i] - w * w);
      }
      sum += weights[i] * integrand;
    }
    // P-integral of 1/(w'^2 - w^2) over [0, wmax].
    sum += 0.5 * loss[j] * std::log((wmax - w) / (wmax + w));
    const double recon = (2.0 / kPi) * sum;
    const double expected = model(w).real() - model.background();
    report.omega.push_back(w);
    report.expected.push_back(expected);
    report.reconstructed.push_back(recon);
    max_true = std::max(max_true, std::abs(expected));
    max_recon = std::max(max_recon, std::abs(recon));
    max_diff = std::max(max_diff, std::abs(recon - expected));
  }
  report.evaluated_points = report.omega.size();
  const double scale = std::max(max_true, max_recon);
  report.max_rel_error = scale > 0.0 ? max_diff / scale : 0.0;
  report.pass = report.max_rel_error < tol;
  return report;
}

}  // namespace nlqed
