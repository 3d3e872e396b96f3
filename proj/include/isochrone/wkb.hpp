#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isochrone/potential.hpp"
#include "isochrone/sqrt_pair.hpp"

namespace isochrone {

// Right side of the half-orbit reduction: 2 int_0^E u(v) sqrt(2v)/sqrt(E - v) dv
// for phi = u sqrt(2G) + v. The analytic part v drops out.
double half_orbit_integral(const Potential& p, const std::function<double(double G)>& u, double E);
// Left side, by orbit quadrature: int_a^b phi(x) g(x)/sqrt(E - G) dx.
double direct_orbit_integral(const Potential& p, const std::function<double(double x)>& phi,
                             double E);

enum class Route { Direct, Abel, Auto };
const char* to_string(Route r);
Route parse_route(const std::string& s);

// (1/pi) int_a^b sqrt(2(E - G)) dx.
double action_I0(const Potential& p, double E);
double correction_I2(const Potential& p, double E, Route route, double hbar = 1.0);
double correction_I4(const Potential& p, double E, Route route, double hbar = 1.0);

// Tolerances for the dual-route agreement check.
inline double i2_route_tolerance(double value) { return std::max(1e-6, 1e-4 * std::abs(value)); }
inline double i4_route_tolerance(double value) { return std::max(1e-5, 1e-3 * std::abs(value)); }

struct GapStats {
  double mean_gap = 0.0;
  double max_deviation = 0.0;  // max |gap - hbar|
  bool increasing = true;
  std::vector<double> gaps;
};
GapStats spacing_report(const std::vector<double>& levels, double hbar);

struct SpectrumReport {
  double hbar = 1.0;
  int order = 0;
  Route route = Route::Auto;
  std::vector<std::pair<int, double>> levels;
  GapStats gaps;
};

// Solves I0 + I2 + ... (through the given order) = (n + 1/2) hbar.
SpectrumReport wkb_spectrum(const Potential& p, double hbar, int order, int n_max,
                            Route route = Route::Auto);

}  // namespace isochrone
