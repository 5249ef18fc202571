#include "resfluo/core.hpp"

#include <cmath>

namespace resfluo {

SystemParams make_params(double omega0, double omegaL, double gamma, Complex rabi,
                         long long nPhotons) {
  if (!std::isfinite(omega0) || !std::isfinite(omegaL) || !std::isfinite(gamma) ||
      !std::isfinite(rabi.real()) || !std::isfinite(rabi.imag()))
    throw ParameterError("parameters must be finite");
  if (omega0 <= 0.0) throw ParameterError("omega0 must be positive");
  if (omegaL <= 0.0) throw ParameterError("omegaL must be positive");
  if (gamma < 0.0) throw ParameterError("gamma must be non-negative");
  if (nPhotons < 1) throw ParameterError("nPhotons must be at least 1");

  SystemParams p;
  p.omega0 = omega0;
  p.omegaL = omegaL;
  p.gamma = gamma;
  p.rabi = rabi;
  p.nPhotons = nPhotons;
  if (std::abs(rabi) > 0.1 * omega0)
    p.warnings.push_back(
        "drive exceeds omega0/10; two-level rotating-wave treatment is strained");
  if (std::abs(p.detuning()) > 0.1 * omega0)
    p.warnings.push_back(
        "detuning exceeds omega0/10; rotating-frame description is strained");
  return p;
}

bool StateVector::isPhysical(double tol) const {
  if (std::abs(beta.imag()) > tol) return false;
  const double b = beta.real();
  if (b < -tol || b > 1.0 + tol) return false;
  if (std::abs(gammaCohConj - std::conj(gammaCoh)) > tol) return false;
  const double g2 = std::norm(gammaCoh);
  return g2 <= b * (1.0 - b) + tol;
}

}  // namespace resfluo
