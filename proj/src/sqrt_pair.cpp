#include "isochrone/sqrt_pair.hpp"

#include <cmath>

#include "isochrone/errors.hpp"

namespace isochrone {

namespace {

int common_order(const SqrtPair& p, const SqrtPair& q) { return std::min(p.order(), q.order()); }

Taylor energy(double G0, int order) { return Taylor::variable(order, G0); }

}  // namespace

SqrtPair operator+(const SqrtPair& p, const SqrtPair& q) { return {p.G0, p.u + q.u, p.v + q.v}; }

SqrtPair operator*(const SqrtPair& p, const SqrtPair& q) {
  const Taylor twoG = 2.0 * energy(p.G0, common_order(p, q));
  return {p.G0, p.u * q.v + q.u * p.v, twoG * p.u * q.u + p.v * q.v};
}

SqrtPair operator/(const SqrtPair& p, const SqrtPair& q) {
  const Taylor twoG = 2.0 * energy(p.G0, common_order(p, q));
  const Taylor D = q.v * q.v - twoG * q.u * q.u;
  const double scale = std::abs(q.v[0] * q.v[0]) + std::abs(twoG[0] * q.u[0] * q.u[0]);
  if (!(std::abs(D[0]) > 1e-14 * scale) || D[0] == 0.0)
    throw SingularDenominatorError("pair division: v^2 - 2G u^2 vanishes at G = " +
                                   std::to_string(p.G0));
  return {p.G0, (p.u * q.v - q.u * p.v) / D, (p.v * q.v - twoG * p.u * q.u) / D};
}

SqrtPair pair_algebra(PairOp op, const SqrtPair& p, const SqrtPair& q) {
  switch (op) {
    case PairOp::Add: return p + q;
    case PairOp::Mul: return p * q;
    case PairOp::Div: return p / q;
  }
  return p;
}

namespace {

struct Base {
  Taylor a1, b1, b1_over_2G;
};

Base base_terms(const PDefinition& P, double G0, int order) {
  const Taylor dP = P.expand(G0, order + 1).diff();
  const Taylor G = energy(G0, order);
  const Taylor D = 2.0 * G * dP * dP - 1.0;
  if (std::abs(D[0]) < 1e-12)
    throw SingularDenominatorError("2GP'^2 - 1 vanishes at G = " + std::to_string(G0));
  return {-1.0 / D, 2.0 * G * dP / D, dP / D};
}

}  // namespace

SqrtPair base_pair(const PDefinition& P, double G0, int order) {
  const Base b = base_terms(P, G0, order);
  return {G0, b.a1, b.b1};
}

std::vector<SqrtPair> derivative_pairs(const PDefinition& P, double G0, int n, int order) {
  const int top = order + n - 1;
  const Base base = base_terms(P, G0, top);
  std::vector<SqrtPair> out;
  Taylor a = base.a1, b = base.b1;
  for (int k = 1; k <= n; ++k) {
    const int m = a.order();
    out.push_back({G0, a.truncated(order), b.truncated(order)});
    if (k == n) break;
    const Taylor a1 = base.a1.truncated(m - 1), b1 = base.b1.truncated(m - 1);
    const Taylor da = a.diff(), db = b.diff();
    const Taylor next_a = da * b1 + a.truncated(m - 1) * base.b1_over_2G.truncated(m - 1) + db * a1;
    const Taylor next_b = 2.0 * energy(G0, m - 1) * a1 * da + a1 * a.truncated(m - 1) + b1 * db;
    a = next_a;
    b = next_b;
  }
  return out;
}

WeightedPair g1sq_over_g_weighted(const PDefinition& P, double G0, int order) {
  const int top = order + 1;
  const Base base = base_terms(P, G0, top);
  const auto pairs = derivative_pairs(P, G0, 2, order);
  const SqrtPair sq = pairs[1] * pairs[1];
  const Taylor a1 = base.a1.truncated(order), b1 = base.b1.truncated(order);
  const Taylor b1_2G = base.b1_over_2G.truncated(order);
  // Division by g uses v^2 - 2G u^2 = b1^2 - 2G a1^2 = -2G a1.
  WeightedPair w;
  w.w = (sq.u * b1 - a1 * sq.v) / (-2.0 * a1);
  w.v = (sq.v * b1_2G - sq.u * a1) / (-1.0 * a1);
  return w;
}

SqrtPair g1sq_over_g(const PDefinition& P, double G0, int order) {
  if (!(G0 > 0)) throw SingularDenominatorError("g'^2/g has a u pole at G = 0");
  const WeightedPair w = g1sq_over_g_weighted(P, G0, order);
  return {G0, w.w / energy(G0, order), w.v};
}

SqrtPair g_g1(const PDefinition& P, double G0, int order) {
  const auto pairs = derivative_pairs(P, G0, 2, order);
  return pairs[0] * pairs[1];
}

namespace {

struct PhiF {
  double phi, f;
};

PhiF phi_f(const PDefinition& P, double G) {
  const Taylor t = P.expand(G, 2);
  const double dP = t[1], ddP = 2.0 * t[2];
  return {2.0 * G * dP, dP + 2.0 * G * ddP};
}

}  // namespace

double closed_form_g(const PDefinition& P, double G, double X) {
  return 2.0 * G / (X + phi_f(P, G).phi);
}

double closed_form_g1(const PDefinition& P, double G, double X) {
  const PhiF q = phi_f(P, G);
  const double s = X + q.phi;
  return 2.0 * G * (s - 2.0 * G * q.f) / (s * s * s);
}

double closed_form_g1sq_over_g(const PDefinition& P, double G, double X) {
  const PhiF q = phi_f(P, G);
  const double s = X + q.phi;
  const double n = s - 2.0 * G * q.f;
  return 2.0 * G * n * n / std::pow(s, 5);
}

double simplified_c12(const PDefinition& P, double G) {
  const auto [phi, f] = phi_f(P, G);
  const double N = -4 * G * G - 4 * G * phi * phi + 3 * std::pow(phi, 4) - 16 * G * G * f * phi -
                   8 * std::pow(phi, 3) * G * f;
  // The printed difference is gg'(A(x)) - gg'(x); flip to x minus A(x).
  return -4.0 * G * G * N / std::pow(2 * G - phi * phi, 4);
}

double simplified_d12(const PDefinition& P, double G) {
  const auto [phi, f] = phi_f(P, G);
  const double N = -12 * G * G * phi + 4 * G * std::pow(phi, 3) + std::pow(phi, 5) -
                   8 * std::pow(G, 3) * f - 24 * G * G * f * phi * phi - 2 * G * f * std::pow(phi, 4);
  return 4.0 * G * G * N / std::pow(2 * G - phi * phi, 4);
}

}  // namespace isochrone
