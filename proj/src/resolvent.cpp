#include "resfluo/resolvent.hpp"

#include <cmath>

namespace resfluo {
namespace resolvent {

double LevelShifts::maxMagnitude() const {
  return std::max({std::abs(rA0), std::abs(rAplus), std::abs(rAminus), std::abs(rB0),
                   std::abs(rBplus), std::abs(rBminus)});
}

Complex determinant(Complex z, const SystemParams& p, Complex rA, Complex rB) {
  const Complex da = z - branchEnergyA(p) - rA;
  const Complex db = z - branchEnergyB(p) - rB;
  return db * da - 0.25 * std::norm(p.rabi);
}

Eigen::Matrix2cd resolvent_matrix(Complex z, const SystemParams& p, Complex rA,
                                  Complex rB) {
  const Complex det = determinant(z, p, rA, rB);
  const double scale2 = std::max(
      {std::norm(p.rabi), p.detuning() * p.detuning(), p.gamma * p.gamma, std::norm(z),
       1e-300});
  if (std::abs(det) < 1e-12 * scale2)
    throw ResolventPoleError("resolvent evaluated on a pole of the two-branch subspace",
                             det);
  Eigen::Matrix2cd g;
  g << z - branchEnergyB(p) - rB, 0.5 * p.rabi,
      0.5 * std::conj(p.rabi), z - branchEnergyA(p) - rA;
  return g / det;
}

PolePair poles(const SystemParams& p, const LevelShifts& s, WarningSink warnings) {
  const double scale = std::max(p.frequencyScale(), 1e-300);
  if (s.maxMagnitude() > 0.25 * scale)
    warn(warnings,
         "level shifts not small against the drive/detuning scale; frozen-shift pole "
         "algebra is approximate");

  const double d = p.detuning();
  const Complex sum = -d + s.rA0 + s.rB0;
  const Complex x = d + s.rA0 - s.rB0;
  const Complex rad = std::sqrt(x * x + std::norm(p.rabi));
  return {0.5 * (sum + rad), 0.5 * (sum - rad)};
}

namespace {

// sin(w)/w, safe at the origin
Complex csinc(Complex w) {
  if (std::abs(w) < 1e-8) return 1.0 - w * w / 6.0;
  return std::sin(w) / w;
}

}  // namespace

EvolutionElements evolution_elements(const SystemParams& p, const LevelShifts& s,
                                     double t) {
  if (!(t >= 0.0)) throw ParameterError("evolution time must be non-negative");

  const PolePair zp = poles(p, s, nullptr);
  const Complex zbar = 0.5 * (zp.zPlus + zp.zMinus);
  const Complex d = 0.5 * (zp.zPlus - zp.zMinus);
  const Complex i(0.0, 1.0);
  const double ea = branchEnergyA(p);
  const double eb = branchEnergyB(p);

  EvolutionElements u;
  const bool commonShifts = (s.rAplus == s.rAminus) && (s.rBplus == s.rBminus);
  const double scale = std::max(p.frequencyScale(), 1e-300);
  if (commonShifts || std::abs(2.0 * d) < 1e-12 * scale) {
    // divided-difference form: exact for equal per-pole shifts, and the right
    // degenerate limit when the poles collide
    const Complex rA = commonShifts ? s.rAplus : 0.5 * (s.rAplus + s.rAminus);
    const Complex rB = commonShifts ? s.rBplus : 0.5 * (s.rBplus + s.rBminus);
    const Complex envelope = std::exp(-i * zbar * t);
    const Complex c = std::cos(d * t);
    const Complex sc = csinc(d * t);
    u.uA = envelope * (c - i * (zbar - eb - rB) * t * sc);
    u.uB = envelope * (c - i * (zbar - ea - rA) * t * sc);
    const Complex cross = -i * t * envelope * sc;
    u.uAB = 0.5 * p.rabi * cross;
    u.uBA = 0.5 * std::conj(p.rabi) * cross;
  } else {
    // distinct shifts at the two poles: direct two-pole residue sum
    const Complex eP = std::exp(-i * zp.zPlus * t);
    const Complex eM = std::exp(-i * zp.zMinus * t);
    const Complex twoD = 2.0 * d;
    u.uA = (eP * (zp.zPlus - eb - s.rBplus) - eM * (zp.zMinus - eb - s.rBminus)) / twoD;
    u.uB = (eP * (zp.zPlus - ea - s.rAplus) - eM * (zp.zMinus - ea - s.rAminus)) / twoD;
    const Complex cross = (eP - eM) / twoD;
    u.uAB = 0.5 * p.rabi * cross;
    u.uBA = 0.5 * std::conj(p.rabi) * cross;
  }
  return u;
}

TransferMatrix transfer(const SystemParams& p, const LevelShifts& s, double t) {
  const EvolutionElements e = evolution_elements(p, s, t);
  const Complex uA = e.uA, uB = e.uB, uAB = e.uAB, uBA = e.uBA;
  const double pb = std::norm(uB);
  const double pba = std::norm(uBA);

  // bilinears of the amplitude map with the excited-branch sign flip, plus population
  // conservation closing the first column
  TransferMatrix tm;
  tm.u << Complex(pb - pba, 0.0), -uBA * std::conj(uB), -uB * std::conj(uBA),
      -uAB * std::conj(uB) + uA * std::conj(uBA), uA * std::conj(uB),
      uAB * std::conj(uBA),
      -std::conj(uAB) * uB + std::conj(uA) * uBA, std::conj(uAB) * uBA,
      std::conj(uA) * uB;
  tm.v << Complex(pba, 0.0), -uA * std::conj(uBA), -std::conj(uA) * uBA;
  return tm;
}

dynamics::Generator extract_generator(const SystemParams& p, const LevelShifts& s,
                                      WarningSink warnings) {
  double scale = p.frequencyScale();
  if (scale == 0.0) scale = std::max(s.maxMagnitude(), 1.0);
  const double eps0 = 1e-3 / scale;

  constexpr int kLevels = 4;
  Eigen::Matrix3cd dm[kLevels][kLevels];
  Eigen::Vector3cd dv[kLevels][kLevels];
  for (int j = 0; j < kLevels; ++j) {
    const double eps = eps0 / static_cast<double>(1 << j);
    const TransferMatrix tm = transfer(p, s, eps);
    dm[j][0] = (tm.u - Eigen::Matrix3cd::Identity()) / eps;
    dv[j][0] = tm.v / eps;
    for (int k = 1; k <= j; ++k) {
      const double f = static_cast<double>(1 << k);
      dm[j][k] = (f * dm[j][k - 1] - dm[j - 1][k - 1]) / (f - 1.0);
      dv[j][k] = (f * dv[j][k - 1] - dv[j - 1][k - 1]) / (f - 1.0);
    }
  }

  const double denom =
      std::max({dm[kLevels - 1][kLevels - 1].norm(), dv[kLevels - 1][kLevels - 1].norm(),
                scale, 1e-300});
  const double resid =
      std::max((dm[kLevels - 1][kLevels - 1] - dm[kLevels - 2][kLevels - 2]).norm(),
               (dv[kLevels - 1][kLevels - 1] - dv[kLevels - 2][kLevels - 2]).norm()) /
      denom;
  if (resid > 1e-6)
    throw NumericalError("generator extraction did not converge", resid);
  if (resid > 1e-9)
    warn(warnings, "generator extraction marginal; residual above 1e-9 relative");

  return {dm[kLevels - 1][kLevels - 1], dv[kLevels - 1][kLevels - 1]};
}

}  // namespace resolvent
}  // namespace resfluo
