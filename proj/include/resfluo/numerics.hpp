#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "resfluo/core.hpp"

namespace resfluo {
namespace numerics {

// exp(a) via complex eigendecomposition; falls back to scaling-and-squaring when the
// eigenvector basis is too ill-conditioned to trust.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

std::vector<double> linspace(double lo, double hi, int n);

struct QuadResult {
  Complex value;
  double errorEstimate = 0.0;
  bool converged = true;
};

// Adaptive Simpson on [a, b], absolute tolerance. Recursion depth is capped; running out
// of depth marks the result unconverged instead of throwing so callers can decide.
QuadResult adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                            double tol, int maxDepth = 48);

// Same, but the interval is pre-split at the given interior breakpoints (integrand
// kinks, near-poles) before each panel goes adaptive.
QuadResult adaptive_simpson_broken(const std::function<Complex(double)>& f, double a,
                                   double b, const std::vector<double>& breakpoints,
                                   double tol, int maxDepth = 48);

// Composite Simpson weights for n samples spaced h apart (n >= 2). Odd interval counts
// get a trapezoid patch on the last interval.
std::vector<double> simpson_weights(int n, double h);

// Dormand-Prince 5(4) for the affine system y' = m y + b, adaptive step, integrates to
// tEnd from y at t = 0.
Eigen::Vector3cd rk45_affine(const Eigen::Matrix3cd& m, const Eigen::Vector3cd& b,
                             Eigen::Vector3cd y, double tEnd, double relTol = 1e-12);

struct Peak {
  double x = 0.0;
  double y = 0.0;
  std::size_t index = 0;
};

// Strict interior local maxima of ys, each refined by a parabola through the three
// neighbouring samples (assumes a uniform grid).
std::vector<Peak> local_maxima(const std::vector<double>& xs,
                               const std::vector<double>& ys);

}  // namespace numerics
}  // namespace resfluo
