#include "resfluo/numerics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace resfluo {
namespace numerics {

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() == Eigen::Success) {
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const double sMax = svd.singularValues()(0);
    const double sMin = svd.singularValues()(svd.singularValues().size() - 1);
    if (sMin > 0.0 && sMax / sMin < 1e8) {
      Eigen::VectorXcd ev = es.eigenvalues().array().exp();
      return v * ev.asDiagonal() * v.fullPivLu().inverse();
    }
  }
  // defective or badly scaled eigenbasis: scaling and squaring
  return a.exp();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + h * i;
  xs.back() = hi;
  return xs;
}

namespace {

struct SimpsonState {
  const std::function<Complex(double)>& f;
  double tol;
  int maxDepth;
  double errSum = 0.0;
  bool converged = true;

  Complex recurse(double a, Complex fa, double m, Complex fm, double b, Complex fb,
                  Complex whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = f(lm);
    const Complex frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const Complex left = h6 * (fa + 4.0 * flm + fm);
    const Complex right = h6 * (fm + 4.0 * frm + fb);
    const Complex delta = left + right - whole;
    if (!std::isfinite(std::abs(delta))) {  // poisoned integrand, refining cannot help
      converged = false;
      return left + right;
    }
    // abscissa roundoff floor: when the endpoints are large compared to the width, the
    // parent's length factor (b - a) / 12 and the child's (m - a) / 6 disagree at
    // relative ulp(x) / h, leaving a delta ~ |f| ulp(x) that no amount of splitting
    // reduces (the tolerance keeps halving, so the recursion would ride to full depth)
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double noiseFloor =
        16.0 * kEps * std::max(std::abs(a), std::abs(b)) * std::abs(whole);
    if (std::abs(delta) <= 15.0 * tol || std::abs(delta) * (b - a) <= noiseFloor ||
        depth <= 0) {
      if (depth <= 0 && std::abs(delta) > 15.0 * tol) converged = false;
      errSum += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                            double tol, int maxDepth) {
  QuadResult r;
  if (a == b) return r;
  SimpsonState st{f, tol, maxDepth};
  const double m = 0.5 * (a + b);
  const Complex fa = f(a), fm = f(m), fb = f(b);
  const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  r.value = st.recurse(a, fa, m, fm, b, fb, whole, tol, maxDepth);
  r.errorEstimate = st.errSum;
  r.converged = st.converged;
  return r;
}

QuadResult adaptive_simpson_broken(const std::function<Complex(double)>& f, double a,
                                   double b, const std::vector<double>& breakpoints,
                                   double tol, int maxDepth) {
  std::vector<double> knots;
  knots.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) knots.push_back(x);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());

  QuadResult total;
  const double tolEach = tol / static_cast<double>(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    QuadResult part = adaptive_simpson(f, knots[i], knots[i + 1], tolEach, maxDepth);
    total.value += part.value;
    total.errorEstimate += part.errorEstimate;
    total.converged = total.converged && part.converged;
  }
  return total;
}

std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  if (n < 2) return w;
  const int intervals = n - 1;
  if (intervals == 1) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  const int even = (intervals % 2 == 0) ? intervals : intervals - 1;
  for (int i = 0; i < even; i += 2) {
    w[static_cast<std::size_t>(i)] += h / 3.0;
    w[static_cast<std::size_t>(i + 1)] += 4.0 * h / 3.0;
    w[static_cast<std::size_t>(i + 2)] += h / 3.0;
  }
  if (even != intervals) {  // trapezoid patch on the odd last interval
    w[static_cast<std::size_t>(n - 2)] += 0.5 * h;
    w[static_cast<std::size_t>(n - 1)] += 0.5 * h;
  }
  return w;
}

Eigen::Vector3cd rk45_affine(const Eigen::Matrix3cd& m, const Eigen::Vector3cd& b,
                             Eigen::Vector3cd y, double tEnd, double relTol) {
  // Dormand-Prince 5(4)
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (tEnd == 0.0) return y;
  auto f = [&](const Eigen::Vector3cd& v) -> Eigen::Vector3cd { return m * v + b; };

  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  double t = 0.0;
  double h = std::min(tEnd, 0.1 / scale);
  Eigen::Vector3cd k1 = f(y);
  int rejects = 0;
  while (t < tEnd) {
    h = std::min(h, tEnd - t);
    const Eigen::Vector3cd k2 = f(y + h * (a21 * k1));
    const Eigen::Vector3cd k3 = f(y + h * (a31 * k1 + a32 * k2));
    const Eigen::Vector3cd k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::Vector3cd k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::Vector3cd k6 =
        f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::Vector3cd y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::Vector3cd k7 = f(y5);
    const Eigen::Vector3cd errv =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double tolAbs =
        relTol * std::max({y.cwiseAbs().maxCoeff(), y5.cwiseAbs().maxCoeff(), 1e-12});
    const double err = errv.cwiseAbs().maxCoeff();
    if (!std::isfinite(err)) {
      if (++rejects > 60) throw NumericalError("rk45 produced non-finite state", err);
      h *= 0.2;
      continue;
    }
    if (err <= tolAbs || h <= 1e-14 * std::max(tEnd, 1.0)) {
      t += h;
      y = y5;
      k1 = k7;  // first-same-as-last
      rejects = 0;
    } else if (++rejects > 60) {
      throw NumericalError("rk45 step size collapsed", err);
    }
    const double grow =
        (err > 0.0) ? 0.9 * std::pow(tolAbs / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
  }
  return y;
}

std::vector<Peak> local_maxima(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  std::vector<Peak> peaks;
  if (xs.size() != ys.size() || xs.size() < 3) return peaks;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    if (!(ys[i] > ys[i - 1] && ys[i] > ys[i + 1])) continue;
    Peak pk{xs[i], ys[i], i};
    const double denom = ys[i - 1] - 2.0 * ys[i] + ys[i + 1];
    if (denom < 0.0) {
      const double shift = 0.5 * (ys[i - 1] - ys[i + 1]) / denom;
      const double h = xs[i + 1] - xs[i];
      pk.x = xs[i] + shift * h;
      pk.y = ys[i] - 0.25 * (ys[i - 1] - ys[i + 1]) * shift;
    }
    peaks.push_back(pk);
  }
  return peaks;
}

}  // namespace numerics
}  // namespace resfluo
