#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isochrone/potential.hpp"

namespace isochrone {

struct OrbitData {
  double energy = 0.0;
  double a = 0.0;  // left turning point, a < 0
  double b = 0.0;  // right turning point, b > 0
  // Quadrature descriptor filled by orbit integrals.
  int nodes = 0;
  std::string transform = "tanh-sinh";
};

OrbitData turning_points(const Potential& p, double E);

// Integrand h(x, delta) with delta = E - G(x) > 0 computed without
// cancellation near the turning points.
using OrbitIntegrand = std::function<double(double x, double delta)>;

// Integral of h over (a, b), split at 0, each half by tanh-sinh.
double orbit_integral(const Potential& p, OrbitData& orbit, const OrbitIntegrand& h,
                      double tol = 1e-10);

// Energy below which period() switches to the small-energy expansion.
constexpr double kSmallEnergy = 1e-8;

double period(const Potential& p, double E);
double period_derivative(const Potential& p, double E);

// Period from integrating x'' + g(x) = 0 with an 8th-order adaptive
// Runge-Kutta scheme, starting at the right turning point.
double ode_period_oracle(const Potential& p, double E, double tol = 1e-13);

// b - a recovered from a period function: (1/pi) int_0^E T(y) dy / sqrt(2E - 2y).
double width_from_period(const std::function<double(double)>& T, double E);

enum class Criterion {
  AInvariance,    // (i)   d/dx[G/g^2] is A-invariant
  FInvariance,    // (ii)  x - 2G/g takes equal values at x and A(x)
  Landau,         // (iii) x - A(x) = 2 sqrt(2G)
  ADerivative,    // (iv)  G/g^2 = 2/(1 - A')^2
  UrabeOddness,   // (v)   h(X) in g = X/(1 + h) is odd
};

const char* to_string(Criterion c);
Criterion parse_criterion(const std::string& s);
std::vector<Criterion> all_criteria();

enum class Verdict { Isochronous, NotIsochronous, Inconclusive };
const char* to_string(Verdict v);

struct CertReport {
  Criterion criterion = Criterion::Landau;
  std::vector<double> grid;  // x values (criteria i-v); empty for exact series checks
  std::vector<double> residuals;
  double max_residual = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double tol = 0.0;
  bool exact = false;  // residual computed in exact arithmetic
};

Verdict verdict_for(double max_residual, double tol);

// Default sample points: both turning points of 16 log-spaced energies in
// [0.05, 2], skipping energies the potential cannot reach.
std::vector<double> default_x_grid(const Potential& p);
std::vector<double> log_grid(double lo, double hi, int n);

CertReport certify(const Potential& p, Criterion c, const std::vector<double>& x_grid, double tol);
CertReport certify(const Potential& p, Criterion c, double tol);

// Exact Urabe certificate for series potentials.
CertReport certify_series_urabe(const TruncSeries& G, double tol);

}  // namespace isochrone
