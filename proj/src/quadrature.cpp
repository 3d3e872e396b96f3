#include "isochrone/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "isochrone/errors.hpp"

namespace isochrone {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kTMax = 6.6;

struct Node {
  double weight;      // dx/dt divided by the half length
  double complement;  // 1 - |tanh(pi/2 sinh t)|
};

Node node(double t) {
  const double u = kHalfPi * std::sinh(t);
  const double e = std::exp(-2.0 * u);
  const double denom = 1.0 + e;
  return {kHalfPi * std::cosh(t) * 4.0 * e / (denom * denom), 2.0 * e / denom};
}

}  // namespace

QuadratureResult tanh_sinh(const EndpointIntegrand& f, double lo, double hi, double tol,
                           int max_level) {
  QuadratureResult r;
  if (hi == lo) return r;
  if (!(hi > lo)) throw QuadratureError("tanh_sinh needs lo < hi");
  const double half = 0.5 * (hi - lo);
  const double mid = lo + half;

  double sum = 0.0, sum_abs = 0.0;
  auto add_pair = [&](double t) {
    const Node n = node(t);
    const double d = half * n.complement;
    if (n.weight == 0.0 || d == 0.0) return false;
    const double fr = f(hi - d, 2.0 * half - d, d);
    const double fl = f(lo + d, d, 2.0 * half - d);
    r.evaluations += 2;
    sum += n.weight * (fr + fl);
    sum_abs += n.weight * (std::abs(fr) + std::abs(fl));
    return true;
  };

  {
    const double f0 = f(mid, half, half);
    r.evaluations += 1;
    sum = kHalfPi * f0;
    sum_abs = std::abs(sum);
    for (int k = 1; k <= kTMax; ++k)
      if (!add_pair(k)) break;
  }
  double h = 1.0;
  double prev = h * half * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h)
      if (!add_pair(t)) break;
    const double cur = h * half * sum;
    r.value = cur;
    r.error = std::abs(cur - prev);
    r.l1 = h * half * sum_abs;
    r.levels = level;
    if (!std::isfinite(cur)) throw QuadratureError("non-finite integrand value");
    if (level >= 4 && r.error <= tol * r.l1) return r;
    prev = cur;
  }
  throw QuadratureError("tanh-sinh did not reach tolerance " + std::to_string(tol) +
                        " (last difference " + std::to_string(r.error) + ")");
}

double abel_integral(const std::function<double(double, double)>& f, double E, double tol) {
  if (!(E > 0)) throw DomainError("Abel integral needs E > 0");
  return tanh_sinh([&](double v, double, double dhi) { return f(v, dhi) / std::sqrt(dhi); }, 0.0, E,
                   tol)
      .value;
}

std::vector<double> fit_derivatives(const std::vector<double>& samples, double h, int degree) {
  const int n = static_cast<int>(samples.size());
  const int half_width = (n - 1) / 2;
  Eigen::MatrixXd V(n, degree + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double k = i - half_width;
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      V(i, j) = p;
      p *= k;
    }
    y(i) = samples[i];
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  std::vector<double> d(degree + 1);
  double fact = 1.0, hp = 1.0;
  for (int j = 0; j <= degree; ++j) {
    if (j > 0) {
      fact *= j;
      hp *= h;
    }
    d[j] = c(j) * fact / hp;
  }
  return d;
}

std::vector<double> fit_derivatives(const std::function<double(double)>& f, double x0, double h,
                                    int half_width, int degree) {
  std::vector<double> s;
  for (int k = -half_width; k <= half_width; ++k) s.push_back(f(x0 + k * h));
  return fit_derivatives(s, h, degree);
}

}  // namespace isochrone
