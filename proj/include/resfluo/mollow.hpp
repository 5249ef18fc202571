#pragma once

#include <vector>

#include "resfluo/core.hpp"

namespace resfluo {
namespace mollow {

// Stationary solution of the driven-atom master equation.
struct SteadyState {
  double alpha = 0.0;    // ground population
  double beta = 0.0;     // excited population
  Complex gammaCoh;      // optical coherence <sigma_->
};

// The quartic coefficient multiplying Gamma^2 in the spectral denominator. Corrected is
// the polynomial the master equation actually produces (the denominator factorizes as
// 16 |p(-i nu)|^2 with p the characteristic polynomial); Printed keeps a legacy variant
// that circulates in the literature with one term of the wrong degree.
enum class A2Variant { Corrected, Printed };

struct SpectrumResult {
  std::vector<double> omega;    // absolute frequency of the scattered light
  std::vector<double> density;  // incoherent (inelastic) spectral density
  double coherentWeight = 0.0;  // weight of the elastic delta line at omegaL
};

// Closed-form stationary state. Unique whenever gamma > 0 or the drive is on; the
// undriven lossless atom has no relaxation and throws.
SteadyState steady_state(const SystemParams& p);

// Closed-form incoherent spectral density at absolute frequency omega. Identically zero
// at gamma == 0 (all scattering is elastic then).
double incoherent_density(const SystemParams& p, double omega,
                          A2Variant variant = A2Variant::Corrected);

// Density sampled on a uniform grid [omegaMin, omegaMax], plus the elastic weight
// 2 pi |gammaCoh|^2.
SpectrumResult spectrum_scan(const SystemParams& p, double omegaMin, double omegaMax,
                             int nPoints, A2Variant variant = A2Variant::Corrected);

}  // namespace mollow
}  // namespace resfluo
