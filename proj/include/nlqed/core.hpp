#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nlqed {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Natural units: hbar = eps0 = c = 1. Lengths are measured in a reference
/// length L0 and angular frequencies in c/L0; mu0 = 1/(eps0 c^2) = 1.
namespace units {
inline constexpr double hbar = 1.0;
inline constexpr double eps0 = 1.0;
inline constexpr double c = 1.0;
inline constexpr double mu0 = 1.0;
}  // namespace units

enum class ErrorKind {
  GridTooNarrow,
  DegenerateWronskian,
  CoincidentPoints,
  GridTooCoarse,
  MissingGreen,
  OverlappingBands,
  BandOutsideGrid,
  VanishingAbsorption,
  BandMismatch,
  PerturbationInvalid,
  ZeroAmplitude,
  InvalidArgument,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every module; `kind()` names the failed contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::DegenerateWronskian: return "DegenerateWronskian";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::MissingGreen: return "MissingGreen";
    case ErrorKind::OverlappingBands: return "OverlappingBands";
    case ErrorKind::BandOutsideGrid: return "BandOutsideGrid";
    case ErrorKind::VanishingAbsorption: return "VanishingAbsorption";
    case ErrorKind::BandMismatch: return "BandMismatch";
    case ErrorKind::PerturbationInvalid: return "PerturbationInvalid";
    case ErrorKind::ZeroAmplitude: return "ZeroAmplitude";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace nlqed
