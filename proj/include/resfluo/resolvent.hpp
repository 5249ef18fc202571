#pragma once

#include <Eigen/Dense>

#include "resfluo/core.hpp"
#include "resfluo/dynamics.hpp"

namespace resfluo {
namespace resolvent {

// Energies of the two near-degenerate dressed branches, measured from the branch
// |excited, N photons>: that branch sits at 0 and |ground, N-1> sits at -detuning.
inline double branchEnergyA(const SystemParams&) { return 0.0; }
inline double branchEnergyB(const SystemParams& p) { return -p.detuning(); }

// Midpoint of the unperturbed branches; the natural expansion point for the pole
// algebra and the on-shell point for width evaluations.
inline double referenceZ0(const SystemParams& p) { return -0.5 * p.detuning(); }

// Constant level-shift values feeding the pole algebra: each branch's self-energy
// frozen at the reference point and at the two poles. Purely imaginary entries are decay
// half-widths, -i Gamma/2.
struct LevelShifts {
  Complex rA0, rAplus, rAminus;
  Complex rB0, rBplus, rBminus;

  // Radiative decay of the excited branch only, no dispersive part, same width at
  // every evaluation point.
  static LevelShifts decayOnly(double gamma) {
    const Complex r(0.0, -0.5 * gamma);
    return {0.0, 0.0, 0.0, r, r, r};
  }
  static LevelShifts none() { return {}; }
  double maxMagnitude() const;
};

// det of the inverse resolvent on the two-branch subspace with the shifts frozen at the
// given values.
Complex determinant(Complex z, const SystemParams& p, Complex rA, Complex rB);

// 2x2 projected resolvent at z, ordered (branch a, branch b). Throws
// ResolventPoleError when z is numerically on a pole.
Eigen::Matrix2cd resolvent_matrix(Complex z, const SystemParams& p, Complex rA,
                                  Complex rB);

struct PolePair {
  Complex zPlus, zMinus;
};

// Both roots of the shifted two-branch determinant, using the shifts frozen at the
// reference point. Warns when the shifts are large enough that freezing them is dubious.
PolePair poles(const SystemParams& p, const LevelShifts& s, WarningSink warnings = nullptr);

// Amplitudes of the reduced evolution on the two branches: survival amplitudes uA, uB
// and the cross amplitudes uAB (b -> a) and uBA (a -> b).
struct EvolutionElements {
  Complex uA, uB, uAB, uBA;
};

// Two-pole residue form of the evolution amplitudes at time t >= 0. Uses a divided
// difference formulation that stays stable when the poles nearly collide.
EvolutionElements evolution_elements(const SystemParams& p, const LevelShifts& s,
                                     double t);

// One-step transfer of (beta, gammaCoh, gammaCohConj) built from bilinears of the
// evolution amplitudes plus the trace-repair column that returns emitted weight to the
// ground branch: rho(t) = u rho(0) + v.
struct TransferMatrix {
  Eigen::Matrix3cd u;
  Eigen::Vector3cd v;
};

TransferMatrix transfer(const SystemParams& p, const LevelShifts& s, double t);

// Short-time affine generator extracted from the transfer map by Richardson
// extrapolation of (transfer(eps) - identity) / eps. Throws NumericalError when the
// tableau fails to settle.
dynamics::Generator extract_generator(const SystemParams& p, const LevelShifts& s,
                                      WarningSink warnings = nullptr);

}  // namespace resolvent
}  // namespace resfluo
