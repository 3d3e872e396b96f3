#pragma once

#include <optional>
#include <string>

#include "isochrone/potential.hpp"

namespace isochrone::detail {

// Concrete potential implementation behind Potential.
class Model {
 public:
  virtual ~Model() = default;
  // G(x + t) through t^order. x is already known to lie in the domain.
  virtual Taylor expand(double x, int order) const = 0;
  virtual double value(double x) const { return expand(x, 0)[0]; }

  PotentialDescriptor descriptor;
  std::string label;
  Interval domain;
  bool singular_edge = false;
  std::optional<PDefinition> pdef;
  std::optional<TruncSeries> series;
};

}  // namespace isochrone::detail

namespace isochrone::detail {

// Largest G below the first point where x(G) = ±sqrt(2G) + P(G) stops being
// monotone on either branch, scanned up to cap.
double monotone_limit(const PDefinition& p, double cap);

// Model inverting x(G) on (0, G_max]; throws MonotonicityError when the
// branches are not monotone there.
std::shared_ptr<Model> make_p_model(const PDefinition& P, double G_max);

}  // namespace isochrone::detail

namespace isochrone::detail {

// Polynomial potential from a series G(x) starting x^2/2.
std::shared_ptr<Model> make_series_model(const TruncSeries& G, std::string label);

}  // namespace isochrone::detail
