#include "isochrone/wkb.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "isochrone/errors.hpp"
#include "isochrone/period.hpp"
#include "isochrone/quadrature.hpp"

namespace isochrone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Stencil for the direct route: 9 points, step 4e-2 E, degree-6 fit. Smaller
// steps let quadrature roundoff dominate the fourth derivative.
constexpr int kHalfWidth = 4;
constexpr int kFitDegree = 6;
constexpr double kRelStep = 4e-2;

const PDefinition& require_pdef(const Potential& p) {
  if (!p.pdefinition())
    throw DecompositionUnavailable(p.label() +
                                   " has no sqrt(2G) decomposition (no P representation)");
  return *p.pdefinition();
}

double orbit_moment(const Potential& p, double E, const std::function<double(double)>& weight) {
  OrbitData o = turning_points(p, E);
  return orbit_integral(p, o, [&](double x, double d) { return weight(x) / std::sqrt(d); });
}

// k-th E-derivative of an orbit moment, from the fitted stencil.
double moment_derivative(const Potential& p, double E, int k,
                         const std::function<double(double)>& weight) {
  const double h = kRelStep * E;
  std::vector<double> samples;
  for (int i = -kHalfWidth; i <= kHalfWidth; ++i) samples.push_back(orbit_moment(p, E + i * h, weight));
  return fit_derivatives(samples, h, kFitDegree)[k];
}

Route resolve(const Potential& p, Route r) {
  if (r == Route::Auto) return p.pdefinition() ? Route::Abel : Route::Direct;
  return r;
}

}  // namespace

const char* to_string(Route r) {
  switch (r) {
    case Route::Direct: return "direct";
    case Route::Abel: return "abel";
    case Route::Auto: return "auto";
  }
  return "?";
}

Route parse_route(const std::string& s) {
  if (s == "direct") return Route::Direct;
  if (s == "abel") return Route::Abel;
  if (s == "auto") return Route::Auto;
  throw ParseError("unknown route '" + s + "'");
}

double half_orbit_integral(const Potential& p, const std::function<double(double)>& u, double E) {
  turning_points(p, E);
  return 2.0 * abel_integral([&](double v, double) { return u(v) * std::sqrt(2.0 * v); }, E);
}

double direct_orbit_integral(const Potential& p, const std::function<double(double)>& phi, double E) {
  return orbit_moment(p, E, [&](double x) { return phi(x) * p.g(x); });
}

double action_I0(const Potential& p, double E) {
  OrbitData o = turning_points(p, E);
  return orbit_integral(p, o, [](double, double d) { return std::sqrt(2.0 * d); }) / kPi;
}

double correction_I2(const Potential& p, double E, Route route, double hbar) {
  const double pre = -hbar * hbar / (24.0 * kSqrt2 * kPi);
  if (resolve(p, route) == Route::Direct) {
    return pre * moment_derivative(p, E, 2, [&](double x) {
             const double g = p.g(x);
             return g * g;
           });
  }
  const PDefinition& P = require_pdef(p);
  turning_points(p, E);
  // d^2/dE^2 of 2 sqrt2 int u sqrt(v)/sqrt(E - v) with u = a1, written as
  // E^-2 int (2v)^(3/2) (v a1)''/sqrt(E - v).
  const double J = abel_integral(
      [&](double v, double) {
        const Taylor a = base_pair(P, v, 2).u;
        return std::pow(2.0 * v, 1.5) * (2.0 * a[1] + 2.0 * v * a[2]);
      },
      E);
  return pre * J / (E * E);
}

double correction_I4(const Potential& p, double E, Route route, double hbar) {
  const double h4 = std::pow(hbar, 4);
  if (resolve(p, route) == Route::Direct) {
    const double d3 = moment_derivative(p, E, 3, [&](double x) {
      const double g1 = p.expand(x, 2).derivative(2);
      return g1 * g1;
    });
    const double d4 = moment_derivative(p, E, 4, [&](double x) {
      const Taylor t = p.expand(x, 2);
      return t[1] * t[1] * t.derivative(2);
    });
    return h4 / (4.0 * kSqrt2 * kPi) * (d3 / 120.0 - d4 / 288.0);
  }
  const PDefinition& P = require_pdef(p);
  turning_points(p, E);
  // w1 = G u(g'^2/g), w2 = G u(g g'); third and fourth derivatives in G.
  const double K1 = abel_integral(
      [&](double v, double) {
        const Taylor w = g1sq_over_g_weighted(P, v, 3).w;
        return std::pow(v, 2.5) * 6.0 * w[3];
      },
      E);
  const double K2 = abel_integral(
      [&](double v, double) {
        const Taylor c = g_g1(P, v, 4).u;
        const Taylor w = Taylor::variable(4, v) * c;
        return std::pow(v, 3.5) * 24.0 * w[4];
      },
      E);
  return h4 / (2.0 * kPi) * (K1 / (120.0 * std::pow(E, 3)) - K2 / (288.0 * std::pow(E, 4)));
}

GapStats spacing_report(const std::vector<double>& levels, double hbar) {
  GapStats s;
  for (size_t i = 1; i < levels.size(); ++i) {
    const double gap = levels[i] - levels[i - 1];
    s.gaps.push_back(gap);
    s.max_deviation = std::max(s.max_deviation, std::abs(gap - hbar));
    if (!(gap > 0)) s.increasing = false;
  }
  if (!s.gaps.empty()) s.mean_gap = (levels.back() - levels.front()) / s.gaps.size();
  return s;
}

SpectrumReport wkb_spectrum(const Potential& p, double hbar, int order, int n_max, Route route) {
  if (order != 0 && order != 2 && order != 4)
    throw ParameterDomainError("WKB order must be 0, 2 or 4");
  if (!(hbar > 0)) throw ParameterDomainError("hbar must be positive");
  SpectrumReport rep;
  rep.hbar = hbar;
  rep.order = order;
  rep.route = order == 0 ? Route::Auto : resolve(p, route);

  auto N = [&](double E) {
    double s = action_I0(p, E);
    if (order >= 2) s += correction_I2(p, E, rep.route, hbar);
    if (order >= 4) s += correction_I4(p, E, rep.route, hbar);
    return s;
  };

  double lo = 0.05 * hbar;
  double N_lo = N(lo);
  std::vector<double> energies;
  for (int n = 0; n <= n_max; ++n) {
    const double target = (n + 0.5) * hbar;
    while (N_lo > target) {
      if (!energies.empty())
        throw MonotonicityError("quantization function not increasing below level " + std::to_string(n));
      lo *= 0.25;
      if (lo < 1e-8 * hbar) throw BracketError("level 0 lies below the resolvable energy range");
      N_lo = N(lo);
    }
    double hi = lo + hbar, N_hi;
    for (int it = 0;; ++it) {
      try {
        N_hi = N(hi);
      } catch (const DomainError& e) {
        throw BracketError("level " + std::to_string(n) + " beyond the potential's energy range: " +
                           e.what());
      }
      if (N_hi > target) break;
      if (it > 60) throw BracketError("no bracket for level " + std::to_string(n));
      lo = hi;
      N_lo = N_hi;
      hi = lo + hbar * std::pow(2.0, it + 1);
    }
    boost::uintmax_t iters = 200;
    auto f = [&](double E) { return N(E) - target; };
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-11 * std::max(1.0, std::abs(a)); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, N_lo - target, N_hi - target, tol, iters);
    const double En = 0.5 * (r.first + r.second);
    if (!energies.empty() && !(En > energies.back()))
      throw MonotonicityError("levels not increasing at n = " + std::to_string(n));
    energies.push_back(En);
    rep.levels.emplace_back(n, En);
    lo = En;
    N_lo = target;
  }
  rep.gaps = spacing_report(energies, hbar);
  return rep;
}

}  // namespace isochrone
