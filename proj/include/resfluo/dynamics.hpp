#pragma once

#include <Eigen/Dense>
#include <vector>

#include "resfluo/core.hpp"
#include "resfluo/mollow.hpp"

namespace resfluo {
namespace dynamics {

// Affine generator d rho / dt = m rho + b acting on (beta, gammaCoh, gammaCohConj).
struct Generator {
  Eigen::Matrix3cd m;
  Eigen::Vector3cd b;
};

// Master-equation generator of the driven two-level atom in the rotating frame.
Generator mollow_generator(const SystemParams& p);

// rho(t) = exp(m t) (rho0 - rhoSS) + rhoSS when the generator is invertible; a singular
// or near-singular generator (gamma == 0) silently has no affine fixed point, so the
// ODE is integrated directly instead and a warning says so.
StateVector evolve(const Generator& gen, const StateVector& rho0, double t,
                   WarningSink warnings = nullptr);

// Stationary state as the linear solve -m^{-1} b. Throws when m is singular.
StateVector steady_state_solve(const Generator& gen);

// Generator of the quantum-regression evolution on operator space, ordered over the
// basis (|a><a|, |b><b|, |a><b|, |b><a|) with a = excited, b = ground.
Eigen::Matrix4cd regression_liouvillian(const SystemParams& p);

struct CorrelationSeries {
  std::vector<double> tau;
  std::vector<Complex> value;  // <sigma_+(0) sigma_-(tau)> in the stationary state
};

// First-order coherence via the regression theorem, sampled uniformly on [0, tauMax].
// Starts exactly at the stationary excited population and relaxes to |gammaCoh|^2.
CorrelationSeries correlation(const SystemParams& p, double tauMax, int nSamples,
                              WarningSink warnings = nullptr);

// Incoherent spectrum as the one-sided Fourier transform of the correlation minus its
// elastic plateau, with an analytic exponential-tail correction fitted to the last
// decade of samples. Refuses grids whose highest |omega - omegaL| the tau sampling
// cannot resolve.
mollow::SpectrumResult spectrum_numeric(const SystemParams& p,
                                        const std::vector<double>& omegaGrid,
                                        double tauMax, int nSamples,
                                        WarningSink warnings = nullptr);

}  // namespace dynamics
}  // namespace resfluo
