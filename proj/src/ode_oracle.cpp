#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "isochrone/errors.hpp"
#include "isochrone/period.hpp"

namespace isochrone {

namespace ode = boost::numeric::odeint;

double ode_period_oracle(const Potential& p, double E, double tol) {
  using State = std::array<double, 2>;
  const OrbitData o = turning_points(p, E);
  auto rhs = [&](const State& s, State& d, double) {
    d[0] = s[1];
    d[1] = -p.g(s[0]);
  };
  auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
  ode::runge_kutta_fehlberg78<State> plain;

  State s{o.b, 0.0};
  double t = 0.0;
  double dt = 1e-2 * std::min(1.0, o.b - o.a);
  try {
    for (long steps = 0; steps < 2000000; ++steps) {
      const State prev = s;
      const double t_prev = t;
      ode::controlled_step_result r;
      try {
        r = stepper.try_step(rhs, s, t, dt);
      } catch (const DomainError&) {
        // A trial stage beyond a domain edge next to the turning point is
        // rejected like an inaccurate step.
        s = prev;
        t = t_prev;
        dt *= 0.5;
        r = ode::fail;
      }
      if (r == ode::fail) {
        if (dt < 1e-13) throw IntegrationError("step size collapsed at t = " + std::to_string(t));
        continue;
      }
      // Return to the right turning point: velocity crosses zero from above
      // while x > 0.
      if (prev[1] > 0.0 && s[1] <= 0.0 && s[0] > 0.0) {
        double tau = (t - t_prev) * prev[1] / (prev[1] - s[1]);
        for (int it = 0; it < 20; ++it) {
          State q = prev;
          plain.do_step(rhs, q, t_prev, tau);
          const double step = q[1] / p.g(q[0]);  // v / (-dv/dt) with dv/dt = -g
          tau += step;
          if (std::abs(step) <= 1e-16 * (t_prev + tau)) break;
        }
        return t_prev + tau;
      }
    }
  } catch (const DomainError& e) {
    throw IntegrationError(std::string("orbit left the domain: ") + e.what());
  }
  throw IntegrationError("no return to the turning point within the step budget");
}

}  // namespace isochrone
