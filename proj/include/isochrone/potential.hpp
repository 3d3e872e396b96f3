#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isochrone/rational_series.hpp"
#include "isochrone/taylor.hpp"

namespace isochrone {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDefaultMaxJetOrder = 6;

struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool contains(double x) const { return x > lo && x < hi; }
};

// Value and derivatives of the potential at x: (G, g, g', ..., g^(k-1)).
struct Jet {
  double x = 0.0;
  int order = 0;
  std::vector<double> coeffs;
  double G() const { return coeffs[0]; }
  double g() const { return coeffs[1]; }
};

// Representation x = X + P(G) with X = sign(x) sqrt(2G). Every isochronous
// potential in the catalog has one; P(0) = 0.
struct PDefinition {
  std::string label;
  // P applied to a jet argument, so that compositions propagate derivatives.
  std::function<Taylor(const Taylor&)> P;
  std::optional<TruncSeries> series;  // set when P is a truncated series
  double radius = kInf;               // convergence radius estimate in G

  double value(double G) const;
  // P(G0 + s) as a series in s.
  Taylor expand(double G0, int order) const;
  // F(G0 + s) with F = 2G P' - P.
  Taylor F(double G0, int order) const;
};

PDefinition pdefinition_from_series(const TruncSeries& P, std::string label);
// P_c(G) = P(c^2 G)/c, the representation of the scaled potential G(cx)/c^2.
PDefinition scale_pdefinition(const PDefinition& p, double c);

// Descriptor exchanged through JSON: family id plus parameters.
struct PotentialDescriptor {
  std::string family;
  std::map<std::string, double> params;
  std::vector<std::string> coeffs;  // exact rationals for series families
  double scale = 1.0;

  bool operator==(const PotentialDescriptor&) const = default;
};

namespace detail {
class Model;
}

class Potential {
 public:
  explicit Potential(std::shared_ptr<const detail::Model> model);

  const PotentialDescriptor& descriptor() const;
  std::string label() const;
  Interval domain() const;
  // True when G grows without bound toward a finite domain edge.
  bool singular_edge() const;

  double G(double x) const;
  double g(double x) const;
  // G(x + t) as a Taylor series of any order. Used internally.
  Taylor expand(double x, int order) const;
  // Public jet with k <= max_jet_order.
  Jet jet(double x, int k) const;
  int max_jet_order() const { return max_jet_order_; }
  void set_max_jet_order(int k) { max_jet_order_ = k; }

  // Null when the potential has no known P representation.
  const PDefinition* pdefinition() const;
  // Truncated polynomial for series potentials, null otherwise.
  const TruncSeries* series() const;

 private:
  std::shared_ptr<const detail::Model> model_;
  int max_jet_order_ = kDefaultMaxJetOrder;
};

// Catalog ids: harmonic, isotonic, chalykh-veselov, three-param, family1,
// family2, family3, family4, p-series, series, quartic.
Potential make_family(const std::string& id, const std::map<std::string, double>& params = {});
Potential make_potential(const PotentialDescriptor& d);
std::vector<std::string> family_ids();

// G(x) obtained by inverting x = ±sqrt(2G) + P(G) on (0, G_max].
Potential potential_from_P(const PDefinition& P, double G_max);
// Truncated polynomial potential G(x); needs G(0) = G'(0) = 0, G''(0) = 1.
Potential potential_from_series(const TruncSeries& G, std::string label = "series");
// x -> G(cx)/c^2.
Potential scale(const Potential& p, double c);

// Opposite-side point with the same energy, found by root finding on G alone.
double involution(const Potential& p, double x);
// A(x) = x - 2X(x) for potentials with a P representation.
double involution_from_P(const Potential& p, double x);
// Closed form of the three-parameter family involution (corrected form).
double three_param_involution(double a, double b, double c, double x);

// Point on side sign(side) where G reaches level; DomainError if the domain
// ends first.
double level_crossing(const Potential& p, double level, int side);

}  // namespace isochrone
