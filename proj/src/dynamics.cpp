#include "resfluo/dynamics.hpp"

#include <cmath>

#include "resfluo/numerics.hpp"

namespace resfluo {
namespace dynamics {

Generator mollow_generator(const SystemParams& p) {
  const double g = p.gamma;
  const double d = p.detuning();
  const Complex om = p.rabi;
  const Complex i(0.0, 1.0);

  Generator gen;
  gen.m << Complex(-g, 0.0), 0.5 * i * std::conj(om), -0.5 * i * om,
      i * om, Complex(-0.5 * g, -d), Complex(0.0, 0.0),
      -i * std::conj(om), Complex(0.0, 0.0), Complex(-0.5 * g, d);
  gen.b << Complex(0.0, 0.0), -0.5 * i * om, 0.5 * i * std::conj(om);
  return gen;
}

StateVector steady_state_solve(const Generator& gen) {
  Eigen::FullPivLU<Eigen::Matrix3cd> lu(gen.m);
  if (!lu.isInvertible())
    throw ParameterError("generator is singular; no unique stationary state");
  return StateVector::fromVector(lu.solve(-gen.b));
}

StateVector evolve(const Generator& gen, const StateVector& rho0, double t,
                   WarningSink warnings) {
  if (!(t >= 0.0)) throw ParameterError("evolution time must be non-negative");
  if (t == 0.0) return rho0;

  Eigen::FullPivLU<Eigen::Matrix3cd> lu(gen.m);
  if (lu.isInvertible() && lu.rcond() > 1e-13) {
    const Eigen::Vector3cd rhoSS = lu.solve(-gen.b);
    const Eigen::Matrix3cd prop = numerics::matrix_exp(gen.m * t);
    return StateVector::fromVector(prop * (rho0.toVector() - rhoSS) + rhoSS);
  }
  warn(warnings,
       "generator singular or ill-conditioned (rcond <= 1e-13); integrating the "
       "equation of motion directly");
  return StateVector::fromVector(
      numerics::rk45_affine(gen.m, gen.b, rho0.toVector(), t));
}

Eigen::Matrix4cd regression_liouvillian(const SystemParams& p) {
  const double g = p.gamma;
  const double d = p.detuning();
  const Complex om = p.rabi;
  const Complex omc = std::conj(om);
  const Complex i(0.0, 1.0);
  const Complex z(0.0, 0.0);

  // basis order: |a><a|, |b><b|, |a><b|, |b><a| with a = excited; restricting to
  // hermitian trace-one operators reproduces mollow_generator exactly
  Eigen::Matrix4cd el;
  el << -g, z, 0.5 * i * omc, -0.5 * i * om,
      g, z, -0.5 * i * omc, 0.5 * i * om,
      0.5 * i * om, -0.5 * i * om, Complex(-0.5 * g, -d), z,
      -0.5 * i * omc, 0.5 * i * omc, z, Complex(-0.5 * g, d);
  return el;
}

namespace {

struct RegressionSetup {
  mollow::SteadyState ss;
  Eigen::Matrix4cd prop;  // one-step propagator exp(L dt)
};

RegressionSetup regression_setup(const SystemParams& p, double dt) {
  RegressionSetup s;
  s.ss = mollow::steady_state(p);
  s.prop = numerics::matrix_exp(regression_liouvillian(p) * dt);
  return s;
}

}  // namespace

CorrelationSeries correlation(const SystemParams& p, double tauMax, int nSamples,
                              WarningSink warnings) {
  if (!(tauMax > 0.0)) throw ParameterError("tauMax must be positive");
  if (nSamples < 2) throw ParameterError("need at least 2 correlation samples");
  if (p.gamma == 0.0)
    throw ParameterError("correlation needs a relaxing atom (gamma > 0)");
  if (tauMax * p.gamma < 20.0)
    warn(warnings, "tauMax below 20/gamma; correlation tail may be truncated");

  const double dt = tauMax / (nSamples - 1);
  RegressionSetup s = regression_setup(p, dt);

  // regression seed rhoSS sigma_+ = conj(gammaCoh) |b><b| + beta |a><b|; the
  // correlation <sigma_+(0) sigma_-(tau)> is the evolving |a><b| component
  Eigen::Vector4cd v;
  v << 0.0, std::conj(s.ss.gammaCoh), s.ss.beta, 0.0;

  CorrelationSeries series;
  series.tau.resize(static_cast<std::size_t>(nSamples));
  series.value.resize(static_cast<std::size_t>(nSamples));
  for (int k = 0; k < nSamples; ++k) {
    series.tau[static_cast<std::size_t>(k)] = dt * k;
    series.value[static_cast<std::size_t>(k)] = v(2);
    if (k + 1 < nSamples) v = s.prop * v;
  }
  return series;
}

mollow::SpectrumResult spectrum_numeric(const SystemParams& p,
                                        const std::vector<double>& omegaGrid,
                                        double tauMax, int nSamples,
                                        WarningSink warnings) {
  if (omegaGrid.empty()) throw ParameterError("empty frequency grid");

  CorrelationSeries series = correlation(p, tauMax, nSamples, warnings);
  const double dt = series.tau[1] - series.tau[0];
  const double plateau = std::norm(mollow::steady_state(p).gammaCoh);

  double nuMaxAbs = 0.0;
  for (double w : omegaGrid) nuMaxAbs = std::max(nuMaxAbs, std::abs(w - p.omegaL));
  if (dt * nuMaxAbs >= M_PI)
    throw ParameterError(
        "tau sampling too coarse for the requested frequencies (dt * max|nu| >= pi)");

  const int n = nSamples;
  std::vector<Complex> y(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    y[static_cast<std::size_t>(k)] = series.value[static_cast<std::size_t>(k)] - plateau;

  // decay rate of the tail from a one-lag least-squares ratio over the last tenth
  Complex tailRate(0.0, 0.0);
  bool haveTail = false;
  {
    const int lo = std::max(0, n - 1 - std::max(5, n / 10));
    Complex num(0.0, 0.0);
    double den = 0.0;
    for (int k = lo; k + 1 < n; ++k) {
      num += y[static_cast<std::size_t>(k + 1)] * std::conj(y[static_cast<std::size_t>(k)]);
      den += std::norm(y[static_cast<std::size_t>(k)]);
    }
    const double yScale = std::abs(y[0]);
    if (den > 1e-28 * yScale * yScale && std::abs(y[static_cast<std::size_t>(n - 1)]) >
                                             1e-14 * std::max(yScale, 1e-300)) {
      const Complex ratio = num / den;
      if (std::abs(ratio) > 0.0) {
        tailRate = std::log(ratio) / dt;
        if (tailRate.real() < 0.0)
          haveTail = true;
        else
          warn(warnings, "correlation tail not decaying; tail correction skipped");
      }
    }
  }

  const std::vector<double> w = numerics::simpson_weights(n, dt);

  mollow::SpectrumResult res;
  res.omega = omegaGrid;
  res.density.resize(omegaGrid.size());
  res.coherentWeight = 2.0 * M_PI * plateau;

  const double tauEnd = series.tau[static_cast<std::size_t>(n - 1)];
  for (std::size_t j = 0; j < omegaGrid.size(); ++j) {
    const double nu = omegaGrid[j] - p.omegaL;
    const Complex rot = std::exp(Complex(0.0, nu * dt));
    Complex phase(1.0, 0.0);
    Complex acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      acc += w[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)] * phase;
      phase *= rot;
    }
    if (haveTail) {
      // integral of y_end e^{tailRate (tau - tauEnd)} e^{i nu tau} over [tauEnd, inf)
      acc -= y[static_cast<std::size_t>(n - 1)] *
             std::exp(Complex(0.0, nu * tauEnd)) / (tailRate + Complex(0.0, nu));
    }
    res.density[j] = 2.0 * acc.real();
  }
  return res;
}

}  // namespace dynamics
}  // namespace resfluo
