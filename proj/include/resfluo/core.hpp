#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace resfluo {

using Complex = std::complex<double>;

inline constexpr const char* kVersion = "1.0.0";

// Inputs outside the physical or usable domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative or adaptive numerical procedure failed to converge.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

// Resolvent evaluated at (or numerically on top of) one of its poles.
class ResolventPoleError : public std::runtime_error {
 public:
  ResolventPoleError(const std::string& what, Complex det)
      : std::runtime_error(what), determinant(det) {}
  Complex determinant;
};

// Optional sink for non-fatal validation diagnostics.
using WarningSink = std::vector<std::string>*;

inline void warn(WarningSink sink, std::string msg) {
  if (sink) sink->push_back(std::move(msg));
}

// Laser-driven two-level atom in natural units (hbar = c = 1); all frequencies are
// angular. The laser mode is a number state with nPhotons quanta. The detuning and the
// single-photon coupling V are always derived, never stored, so they cannot drift out of
// sync with the primary fields.
struct SystemParams {
  double omega0 = 0.0;  // atomic transition frequency
  double omegaL = 0.0;  // laser frequency
  double gamma = 0.0;   // radiative width of the excited level
  Complex rabi;         // complex Rabi frequency 2 sqrt(N) V
  long long nPhotons = 1;
  std::vector<std::string> warnings;

  double detuning() const { return omegaL - omega0; }
  Complex vCoupling() const {
    return rabi / (2.0 * std::sqrt(static_cast<double>(nPhotons)));
  }
  // sqrt(N) V and sqrt(N-1) V, the two couplings the dressed-state algebra uses
  Complex couplingN() const { return 0.5 * rabi; }
  Complex couplingNm1() const {
    return vCoupling() * std::sqrt(static_cast<double>(nPhotons - 1));
  }
  double frequencyScale() const {
    return std::max({std::abs(rabi), std::abs(detuning()), gamma});
  }
};

// Validates and assembles SystemParams. Throws ParameterError on domain violations;
// appends non-fatal diagnostics (e.g. drive strong enough to strain the two-level
// rotating-wave treatment) to params.warnings.
SystemParams make_params(double omega0, double omegaL, double gamma, Complex rabi,
                         long long nPhotons);

// Atomic state in the frame rotating at the laser frequency: excited population and the
// two coherence slots. Slots are complex because the same container carries regression
// amplitudes, where the "population" slot is a genuinely complex correlation.
struct StateVector {
  Complex beta;
  Complex gammaCoh;
  Complex gammaCohConj;

  static StateVector physical(double beta, Complex gammaCoh) {
    return {beta, gammaCoh, std::conj(gammaCoh)};
  }
  Eigen::Vector3cd toVector() const { return {beta, gammaCoh, gammaCohConj}; }
  static StateVector fromVector(const Eigen::Vector3cd& v) { return {v(0), v(1), v(2)}; }

  // Hermiticity, trace bounds and coherence bound |gamma|^2 <= beta (1 - beta).
  bool isPhysical(double tol = 1e-9) const;
};

}  // namespace resfluo
