#pragma once

#include <vector>

#include "isochrone/potential.hpp"
#include "isochrone/taylor.hpp"

namespace isochrone {

// u(G) sqrt(2G) + v(G), with u and v carried as expansions u(G0 + s), v(G0 + s)
// around the evaluation energy G0.
struct SqrtPair {
  double G0 = 0.0;
  Taylor u;
  Taylor v;

  int order() const { return std::min(u.order(), v.order()); }
  // Value on the branch X = ±sqrt(2 G0).
  double at(double X) const { return u[0] * X + v[0]; }
};

enum class PairOp { Add, Mul, Div };

SqrtPair operator+(const SqrtPair& p, const SqrtPair& q);
SqrtPair operator*(const SqrtPair& p, const SqrtPair& q);
// Division by rationalization; needs v_q^2 - 2G u_q^2 != 0 at G0.
SqrtPair operator/(const SqrtPair& p, const SqrtPair& q);
SqrtPair pair_algebra(PairOp op, const SqrtPair& p, const SqrtPair& q);

// g = a1 sqrt(2G) + b1 with a1 = -1/(2GP'^2 - 1), b1 = 2GP'/(2GP'^2 - 1).
SqrtPair base_pair(const PDefinition& P, double G0, int order);
// g^(k-1) = a_k sqrt(2G) + b_k for k = 1..n, each to the requested order.
std::vector<SqrtPair> derivative_pairs(const PDefinition& P, double G0, int n, int order);

// g'^2/g in the same form. Its u part has a 1/(2G) pole at G = 0, so the
// analytic product w = G u is computed directly and u = w/G; G0 must be > 0
// for the returned pair.
struct WeightedPair {
  Taylor w;  // G u
  Taylor v;
};
WeightedPair g1sq_over_g_weighted(const PDefinition& P, double G0, int order);
SqrtPair g1sq_over_g(const PDefinition& P, double G0, int order);
// g g' as a pair.
SqrtPair g_g1(const PDefinition& P, double G0, int order);

// Closed-form evaluations of g g' and g'^2/g from P alone, at X = ±sqrt(2G),
// with phi = 2GP' and f = P' + 2GP''.
double closed_form_g(const PDefinition& P, double G, double X);
double closed_form_g1(const PDefinition& P, double G, double X);
double closed_form_g1sq_over_g(const PDefinition& P, double G, double X);
// The simplified difference formula for c_{1,2} and the phi-form sum formula
// for d_{1,2}.
double simplified_c12(const PDefinition& P, double G);
double simplified_d12(const PDefinition& P, double G);

}  // namespace isochrone
