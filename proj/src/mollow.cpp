#include "resfluo/mollow.hpp"

#include <cmath>

#include "resfluo/numerics.hpp"

namespace resfluo {
namespace mollow {

SteadyState steady_state(const SystemParams& p) {
  const double d = p.detuning();
  const double g = p.gamma;
  const double o2 = std::norm(p.rabi);
  const double den = 4.0 * d * d + g * g + 2.0 * o2;
  if (g == 0.0 && o2 == 0.0)
    throw ParameterError("undriven lossless atom has no unique stationary state");
  SteadyState ss;
  ss.beta = o2 / den;
  ss.alpha = (4.0 * d * d + g * g + o2) / den;
  ss.gammaCoh = -p.rabi * Complex(2.0 * d, g) / den;
  return ss;
}

double incoherent_density(const SystemParams& p, double omega, A2Variant variant) {
  const double g = p.gamma;
  if (g == 0.0) return 0.0;  // elastic only
  const double nu = omega - p.omegaL;
  const double d2 = p.detuning() * p.detuning();
  const double o2 = std::norm(p.rabi);
  const double n2 = nu * nu;
  const double g2 = g * g;

  const double a0 = 16.0 * n2 * (d2 + o2 - n2) * (d2 + o2 - n2);
  const double a2 =
      (variant == A2Variant::Corrected)
          ? 4.0 * (6.0 * n2 * n2 - 2.0 * (3.0 * d2 - o2) * n2 +
                   (2.0 * d2 + o2) * (2.0 * d2 + o2))
          : 4.0 * (6.0 * n2 - 2.0 * (3.0 * d2 - o2) * n2 +
                   (2.0 * d2 + o2) * (2.0 * d2 + o2));
  const double a4 = 8.0 * d2 + 4.0 * o2 + 9.0 * n2;
  const double denom = a0 + g2 * (a2 + g2 * (a4 + g2));
  if (denom <= 0.0) return 0.0;

  const double beta = steady_state(p).beta;
  return 16.0 * beta * g * o2 * (n2 + 0.5 * o2 + g2) / denom;
}

SpectrumResult spectrum_scan(const SystemParams& p, double omegaMin, double omegaMax,
                             int nPoints, A2Variant variant) {
  if (!(omegaMin < omegaMax)) throw ParameterError("spectrum grid needs omegaMin < omegaMax");
  if (nPoints < 2) throw ParameterError("spectrum grid needs at least 2 points");

  SpectrumResult res;
  res.omega = numerics::linspace(omegaMin, omegaMax, nPoints);
  res.density.resize(res.omega.size(), 0.0);
  if (std::abs(p.rabi) == 0.0) return res;  // no drive, nothing scattered

  res.coherentWeight = 2.0 * M_PI * std::norm(steady_state(p).gammaCoh);
  for (std::size_t i = 0; i < res.omega.size(); ++i)
    res.density[i] = incoherent_density(p, res.omega[i], variant);
  return res;
}

}  // namespace mollow
}  // namespace resfluo
