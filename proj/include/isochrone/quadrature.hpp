#pragma once

#include <functional>
#include <vector>

namespace isochrone {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // difference between the last two levels
  double l1 = 0.0;     // integral of |f|
  int levels = 0;
  int evaluations = 0;
};

// Integrand f(x, dlo, dhi) receives the distances dlo = x - lo and
// dhi = hi - x computed without cancellation, so endpoint singularities such
// as 1/sqrt(hi - x) can be evaluated accurately arbitrarily close to the end.
using EndpointIntegrand = std::function<double(double x, double dlo, double dhi)>;

// Tanh-sinh quadrature on [lo, hi]. Refines until successive levels differ by
// at most tol * l1; throws QuadratureError otherwise.
QuadratureResult tanh_sinh(const EndpointIntegrand& f, double lo, double hi, double tol = 1e-10,
                           int max_level = 12);

// Abel-type integral of f(v)/sqrt(E - v) over (0, E). f receives v and E - v.
double abel_integral(const std::function<double(double v, double e_minus_v)>& f, double E,
                     double tol = 1e-10);

// Derivatives f(x0), f'(x0), ..., f^(degree)(x0) from a least-squares
// polynomial of the given degree through f at x0 + k h, |k| <= half_width.
std::vector<double> fit_derivatives(const std::function<double(double)>& f, double x0, double h,
                                    int half_width = 4, int degree = 6);
// Same fit from precomputed samples at x0 + k h, k = -half_width..half_width.
std::vector<double> fit_derivatives(const std::vector<double>& samples, double h, int degree);

}  // namespace isochrone
