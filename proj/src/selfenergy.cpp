#include "resfluo/selfenergy.hpp"

#include <cmath>

#include "resfluo/numerics.hpp"

namespace resfluo {
namespace selfenergy {

double CouplingModel::operator()(double omega) const {
  if (omega < 0.0) return 0.0;
  switch (kind) {
    case CouplingKind::Flat:
      return gammaRef;
    case CouplingKind::Linear:
      return gammaRef * omega / omega0;
    case CouplingKind::PowerLaw: {
      double v = gammaRef * std::pow(omega / omega0, exponent);
      if (hasCutoff()) v *= std::exp(-(omega - omega0) / cutoff);
      return v;
    }
  }
  return 0.0;
}

double CouplingModel::slope(double omega) const {
  if (omega <= 0.0) return 0.0;
  switch (kind) {
    case CouplingKind::Flat:
      return 0.0;
    case CouplingKind::Linear:
      return gammaRef / omega0;
    case CouplingKind::PowerLaw:
      return (*this)(omega) * (exponent / omega - (hasCutoff() ? 1.0 / cutoff : 0.0));
  }
  return 0.0;
}

CouplingModel make_coupling(CouplingKind kind, double gammaRef, double omega0,
                            double exponent, double cutoff) {
  if (!std::isfinite(gammaRef) || gammaRef <= 0.0)
    throw ParameterError("coupling gammaRef must be positive");
  if (!std::isfinite(omega0) || omega0 <= 0.0)
    throw ParameterError("coupling omega0 must be positive");
  if (!std::isfinite(exponent) || exponent < 0.0)
    throw ParameterError("coupling exponent must be non-negative");
  if (!std::isfinite(cutoff) || cutoff < 0.0)
    throw ParameterError("coupling cutoff must be non-negative (0 disables it)");
  return {kind, gammaRef, omega0, exponent, cutoff};
}

double natural_linewidth(const CouplingModel& g) { return g(g.omega0); }

namespace {

// Partial fractions of the two-branch kernel in omega: two simple poles with
// dressed-composition weights. rp is the (N-1)-photon splitting.
struct PoleDecomp {
  double w1 = 0.0, a1 = 0.0;  // lower frequency
  double w2 = 0.0, a2 = 0.0;  // upper frequency
  double rp = 0.0;
};

PoleDecomp pole_decomp(Complex z, const SystemParams& p) {
  const double d = p.detuning();
  const double rp = std::sqrt(d * d + 4.0 * std::norm(p.couplingNm1()));
  const double centre = z.real() + p.omegaL + 0.5 * d;
  PoleDecomp pd;
  pd.rp = rp;
  if (rp < 1e-300) {
    pd.w1 = pd.w2 = centre;
    pd.a1 = 1.0;
    pd.a2 = 0.0;
    return pd;
  }
  pd.w1 = centre - 0.5 * rp;
  pd.a1 = 0.5 * (1.0 + d / rp);
  pd.w2 = centre + 0.5 * rp;
  pd.a2 = 0.5 * (1.0 - d / rp);
  return pd;
}

double quad_tolerance(const CouplingModel& g, double omegaMax) {
  return 1e-11 * g.gammaRef * std::max(1.0, omegaMax / g.omega0);
}

std::vector<double> seed_breakpoints(const PoleDecomp& pd, double spread,
                                     double omegaMax, int quadPoints) {
  std::vector<double> bp;
  for (double w : {pd.w1, pd.w2}) {
    bp.push_back(w);
    for (double f : {1.0, 5.0, 25.0}) {
      bp.push_back(w - f * spread);
      bp.push_back(w + f * spread);
    }
  }
  const int coarse = std::max(quadPoints, 4);
  for (int j = 1; j < coarse; ++j)
    bp.push_back(omegaMax * static_cast<double>(j) / coarse);
  return bp;
}

}  // namespace

double gamma_zero(const CouplingModel& g, const SystemParams& p) {
  const PoleDecomp pd = pole_decomp(Complex(-0.5 * p.detuning(), 0.0), p);
  if (pd.rp < 1e-300) return g(pd.w1);
  return pd.a1 * g(pd.w1) + pd.a2 * g(pd.w2);
}

double gamma_pm(const CouplingModel& g, const SystemParams& p, int sign) {
  if (sign != 1 && sign != -1) throw ParameterError("gamma_pm sign must be +1 or -1");
  const double d = p.detuning();
  const double r = std::sqrt(d * d + std::norm(p.rabi));
  const double off = 0.5 * sign * r;
  const PoleDecomp pd = pole_decomp(Complex(-0.5 * d, 0.0), p);
  if (pd.rp < 1e-300) return g(pd.w1 + off);
  return pd.a1 * g(pd.w1 + off) + pd.a2 * g(pd.w2 + off);
}

std::array<double, 2> integrand_pole_frequencies(Complex z, const SystemParams& p) {
  const PoleDecomp pd = pole_decomp(z, p);
  return {pd.w1, pd.w2};
}

Complex resummed_shift(Complex z, const SystemParams& p, const CouplingModel& g,
                       double omegaMax, int quadPoints) {
  if (!(omegaMax > 0.0)) throw ParameterError("omegaMax must be positive");
  const PoleDecomp pd = pole_decomp(z, p);
  if (omegaMax <= pd.w2)
    throw ParameterError("omegaMax must exceed the largest integrand pole frequency");

  const double twoPi = 2.0 * M_PI;
  const double tol = quad_tolerance(g, omegaMax);
  const double d = p.detuning();
  const double c2 = std::norm(p.couplingNm1());  // (N-1) |V|^2

  if (z.imag() != 0.0) {
    // off the real axis the kernel is regular on the integration path
    auto f = [&](double w) -> Complex {
      const Complex da = z + p.omegaL - w;
      const Complex db = z + p.omegaL + d - w;
      return (g(w) / twoPi) * db / (da * db - c2);
    };
    const double spread =
        std::max({std::abs(z.imag()), 0.5 * pd.rp, 1e-9 * p.omegaL});
    const numerics::QuadResult q = numerics::adaptive_simpson_broken(
        f, 0.0, omegaMax, seed_breakpoints(pd, spread, omegaMax, quadPoints), tol);
    if (!q.converged)
      throw NumericalError("resummed shift quadrature did not converge",
                           q.errorEstimate);
    return q.value;
  }

  // real z: pole subtraction for the principal value plus the analytic residue terms
  Complex total(0.0, 0.0);
  const struct {
    double w, a;
  } polesArr[2] = {{pd.w1, pd.a1}, {pd.w2, pd.a2}};
  for (const auto& pl : polesArr) {
    if (pl.a == 0.0) continue;
    const double wj = pl.w;
    if (wj == 0.0 || wj == omegaMax)
      throw ParameterError("integrand pole sits on the integration boundary");
    const double gj = g(wj) / twoPi;
    Complex contrib(0.0, 0.0);
    if (wj > 0.0 && wj < omegaMax) {
      const double sj = g.slope(wj) / twoPi;
      auto q = [&](double w) -> Complex {
        const double dw = w - wj;
        if (std::abs(dw) < 1e-9 * std::max(wj, 1.0)) return Complex(sj, 0.0);
        return Complex((g(w) / twoPi - gj) / dw, 0.0);
      };
      const numerics::QuadResult pv = numerics::adaptive_simpson_broken(
          q, 0.0, omegaMax, seed_breakpoints(pd, 0.1 * std::max(pd.rp, 1e-6 * wj),
                                             omegaMax, quadPoints),
          tol);
      if (!pv.converged)
        throw NumericalError("principal-value quadrature did not converge",
                             pv.errorEstimate);
      contrib = pv.value + gj * std::log((omegaMax - wj) / wj);
      contrib += Complex(0.0, M_PI * gj);
    } else {
      auto q = [&](double w) -> Complex { return Complex(g(w) / twoPi / (w - wj), 0.0); };
      const numerics::QuadResult pv = numerics::adaptive_simpson_broken(
          q, 0.0, omegaMax, seed_breakpoints(pd, pd.rp > 0 ? 0.1 * pd.rp : 1.0,
                                             omegaMax, quadPoints),
          tol);
      if (!pv.converged)
        throw NumericalError("shift quadrature did not converge", pv.errorEstimate);
      contrib = pv.value;
    }
    total += -pl.a * contrib;
  }
  return total;
}

Complex resummed_shift_series(Complex z, const SystemParams& p, const CouplingModel& g,
                              double omegaMax, int nTerms, int quadPoints) {
  if (z.imag() == 0.0)
    throw ParameterError("series route requires z strictly off the real axis");
  if (nTerms < 1) throw ParameterError("series needs at least one term");
  if (!(omegaMax > 0.0)) throw ParameterError("omegaMax must be positive");
  const PoleDecomp pd = pole_decomp(z, p);
  if (omegaMax <= pd.w2)
    throw ParameterError("omegaMax must exceed the largest integrand pole frequency");

  const double twoPi = 2.0 * M_PI;
  const double d = p.detuning();
  const double c2 = std::norm(p.couplingNm1());
  const double tol = quad_tolerance(g, omegaMax);

  // truncated geometric series of pair insertions, summed inside one quadrature
  auto f = [&](double w) -> Complex {
    const Complex da = z + p.omegaL - w;
    const Complex db = z + p.omegaL + d - w;
    const Complex q = c2 / (da * db);
    Complex sum(0.0, 0.0);
    Complex term(1.0, 0.0);
    for (int k = 0; k < nTerms; ++k) {
      sum += term;
      term *= q;
    }
    return (g(w) / twoPi) / da * sum;
  };
  const double spread = std::max({std::abs(z.imag()), 0.5 * pd.rp, 1e-9 * p.omegaL});
  const numerics::QuadResult q = numerics::adaptive_simpson_broken(
      f, 0.0, omegaMax, seed_breakpoints(pd, spread, omegaMax, quadPoints), tol);
  if (!q.converged)
    throw NumericalError("series quadrature did not converge", q.errorEstimate);
  return q.value;
}

WidthReport width_report(const CouplingModel& g, const SystemParams& p) {
  WidthReport rep;
  rep.gammaNatural = natural_linewidth(g);
  rep.gamma0 = gamma_zero(g, p);
  rep.gammaPlus = gamma_pm(g, p, +1);
  rep.gammaMinus = gamma_pm(g, p, -1);

  const PoleDecomp pd = pole_decomp(Complex(-0.5 * p.detuning(), 0.0), p);
  const double omegaMax =
      g.hasCutoff() ? std::max(2.0 * pd.w2, g.omega0 + 40.0 * g.cutoff)
                    : 1e3 * std::max(g.omega0, p.omegaL);
  rep.lambResidual =
      resummed_shift(Complex(-0.5 * p.detuning(), 0.0), p, g, omegaMax).real();
  return rep;
}

}  // namespace selfenergy
}  // namespace resfluo
