#pragma once

#include <array>

#include "resfluo/core.hpp"
#include "resfluo/resolvent.hpp"

namespace resfluo {
namespace selfenergy {

enum class CouplingKind { Flat, Linear, PowerLaw };

// Spectral coupling density g(omega) of the radiation continuum, normalized so that
// g(omega0) equals the reference radiative width exactly for every kind. Vanishes for
// omega < 0.
struct CouplingModel {
  CouplingKind kind = CouplingKind::Linear;
  double gammaRef = 0.0;  // g at the atomic transition frequency
  double omega0 = 0.0;    // normalization point
  double exponent = 1.0;  // PowerLaw only
  double cutoff = 0.0;    // PowerLaw only; exponential rolloff scale, <= 0 means none

  double operator()(double omega) const;
  double slope(double omega) const;  // dg/domega, used by principal-value subtraction
  bool hasCutoff() const { return cutoff > 0.0; }
};

CouplingModel make_coupling(CouplingKind kind, double gammaRef, double omega0,
                            double exponent = 1.0, double cutoff = 0.0);

// g evaluated at the bare transition; equals gammaRef by construction.
double natural_linewidth(const CouplingModel& g);

// Decay width of the dressed doublet centre: average of g over the two sideband
// emission frequencies omegaL -+ R'/2, weighted by the dressed-state composition
// (1 -+ detuning / R')/2 with R' the (N-1)-photon Rabi splitting.
double gamma_zero(const CouplingModel& g, const SystemParams& p);

// Same average with every emission frequency displaced by sign * R / 2, R the N-photon
// splitting; these are the widths frozen at the two poles. sign must be +1 or -1.
double gamma_pm(const CouplingModel& g, const SystemParams& p, int sign);

// Frequencies where the resummed-shift integrand is singular for the given z, ordered
// ascending. Only the real part of z matters for the location.
std::array<double, 2> integrand_pole_frequencies(Complex z, const SystemParams& p);

// Resummed level shift of the ground branch: integral of g(omega)/(2 pi) against the
// two-branch kernel, cut off at omegaMax. Off the real axis this is a direct adaptive
// quadrature; on the real axis the poles are handled by pole subtraction for the
// principal value plus the analytic -i pi residue terms. quadPoints seeds the panel
// count before adaption.
Complex resummed_shift(Complex z, const SystemParams& p, const CouplingModel& g,
                       double omegaMax, int quadPoints = 64);

// Same quantity as the truncated insertion series with nTerms terms (0 .. nTerms - 1
// pair insertions). Requires z strictly off the real axis.
Complex resummed_shift_series(Complex z, const SystemParams& p, const CouplingModel& g,
                              double omegaMax, int nTerms, int quadPoints = 64);

// Everything the spectral modules need from the continuum in one record.
struct WidthReport {
  double gammaNatural = 0.0;
  double gamma0 = 0.0;
  double gammaPlus = 0.0;
  double gammaMinus = 0.0;
  // Real (dispersive) part of the reference-point shift at the report cutoff. Reported
  // for inspection and deliberately not fed back into any level energy.
  double lambResidual = 0.0;

  resolvent::LevelShifts shifts() const {
    return {0.0, 0.0, 0.0, Complex(0.0, -0.5 * gamma0), Complex(0.0, -0.5 * gammaPlus),
            Complex(0.0, -0.5 * gammaMinus)};
  }
};

WidthReport width_report(const CouplingModel& g, const SystemParams& p);

}  // namespace selfenergy
}  // namespace resfluo
