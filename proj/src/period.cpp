#include <cmath>
#include <numbers>

#include "isochrone/errors.hpp"
#include "isochrone/period.hpp"
#include "isochrone/quadrature.hpp"

namespace isochrone {

OrbitData turning_points(const Potential& p, double E) {
  if (!(E > 0)) throw DomainError("turning points need E > 0");
  OrbitData o;
  o.energy = E;
  o.a = level_crossing(p, E, -1);
  o.b = level_crossing(p, E, +1);
  const double tol = 1e-12 * std::max(1.0, E);
  if (std::abs(p.G(o.a) - E) > tol || std::abs(p.G(o.b) - E) > tol)
    throw ToleranceError(p.label() + ": turning points not resolved to 1e-12 at E = " +
                         std::to_string(E));
  return o;
}

namespace {

constexpr int kEndpointOrder = 12;

// Integral over the half orbit between 0 and the turning point x_turn.
double half_orbit(const Potential& p, double x_turn, const OrbitIntegrand& h, double tol,
                  int& nodes) {
  const int side = x_turn > 0 ? 1 : -1;
  const Taylor t = p.expand(x_turn, kEndpointOrder);
  const double e_eff = t[0];
  // Below distance delta from the turning point, E - G comes from the local
  // expansion; the neglected tail is then below 1e-17 of the leading term.
  double delta = 0.5 * std::abs(x_turn);
  for (int k : {kEndpointOrder - 1, kEndpointOrder}) {
    if (t[k] != 0.0)
      delta = std::min(delta, std::pow(1e-17 * std::abs(t[1]) / std::abs(t[k]), 1.0 / (k - 1)));
  }
  auto gap = [&](double x, double d) {
    if (d <= delta) {
      const double s = -side * d;
      double acc = 0.0;
      for (int k = kEndpointOrder; k >= 1; --k) acc = (acc + t[k]) * s;
      return -acc;
    }
    return e_eff - p.G(x);
  };
  EndpointIntegrand f;
  if (side > 0)
    f = [&](double x, double, double dhi) { return h(x, gap(x, dhi)); };
  else
    f = [&](double x, double dlo, double) { return h(x, gap(x, dlo)); };
  const QuadratureResult r =
      side > 0 ? tanh_sinh(f, 0.0, x_turn, tol) : tanh_sinh(f, x_turn, 0.0, tol);
  nodes += r.evaluations;
  return r.value;
}

}  // namespace

double orbit_integral(const Potential& p, OrbitData& orbit, const OrbitIntegrand& h, double tol) {
  orbit.nodes = 0;
  return half_orbit(p, orbit.a, h, tol, orbit.nodes) + half_orbit(p, orbit.b, h, tol, orbit.nodes);
}

namespace {

// Coefficients a2, a3 of g(x) = x + a2 x^2 + a3 x^3 + ...
std::pair<double, double> low_order_force(const Potential& p) {
  const Taylor t = p.expand(0.0, 4);
  return {3.0 * t[3], 4.0 * t[4]};
}

}  // namespace

double period(const Potential& p, double E) {
  if (!(E > 0)) throw DomainError("period needs E > 0");
  if (E < kSmallEnergy) {
    const auto [a2, a3] = low_order_force(p);
    return 2 * std::numbers::pi * (1.0 + (5.0 / 6.0 * a2 * a2 - 0.75 * a3) * E);
  }
  OrbitData o = turning_points(p, E);
  return std::numbers::sqrt2 *
         orbit_integral(p, o, [](double, double d) { return 1.0 / std::sqrt(d); });
}

double period_derivative(const Potential& p, double E) {
  if (!(E > 0)) throw DomainError("period_derivative needs E > 0");
  if (E < kSmallEnergy) {
    const auto [a2, a3] = low_order_force(p);
    return 2 * std::numbers::pi * (5.0 / 6.0 * a2 * a2 - 0.75 * a3);
  }
  // 1 - 2G g'/g^2 near x = 0 from its series; numerator and denominator both
  // vanish to second order there.
  const Taylor G0 = p.expand(0.0, 10);
  const Taylor g0 = G0.diff();
  const Taylor num = g0 * g0 - 2.0 * G0.truncated(8) * g0.diff();
  const Taylor den = g0 * g0;
  const Taylor ratio = Taylor(std::vector<double>(num.coeffs().begin() + 2, num.coeffs().end())) /
                       Taylor(std::vector<double>(den.coeffs().begin() + 2, den.coeffs().end()));

  OrbitData o = turning_points(p, E);
  const double integral = orbit_integral(p, o, [&](double x, double d) {
    double w;
    if (std::abs(x) < 1e-4) {
      w = ratio.eval(x);
    } else {
      const Taylor t = p.expand(x, 2);
      const double g = t[1];
      w = 1.0 - 4.0 * t[0] * t[2] / (g * g);
    }
    return w / std::sqrt(2.0 * d);
  });
  return integral / E;
}

double width_from_period(const std::function<double(double)>& T, double E) {
  return abel_integral([&](double v, double) { return T(v); }, E) /
         (std::numbers::pi * std::numbers::sqrt2);
}

}  // namespace isochrone
