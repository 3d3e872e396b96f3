#include <cmath>
#include <set>

#include "isochrone/errors.hpp"
#include "model.hpp"

namespace isochrone {

namespace {

using Params = std::map<std::string, double>;

double param(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void allow_only(const std::string& id, const Params& p, std::set<std::string> keys) {
  for (const auto& [k, v] : p) {
    if (!keys.count(k)) throw ParameterDomainError("unknown parameter '" + k + "' for family " + id);
    if (!std::isfinite(v)) throw ParameterDomainError("parameter '" + k + "' must be finite");
  }
}

class HarmonicModel : public detail::Model {
 public:
  Taylor expand(double x, int order) const override {
    const Taylor t = Taylor::variable(order, x);
    return 0.5 * t * t;
  }
  double value(double x) const override { return 0.5 * x * x; }
};

// G = x^2 (ax + 2)^2 / (8 (ax + 1)^2), the cancellation-free form of
// (1/8a^2) [ax + 1 - 1/(ax + 1)]^2.
class IsotonicModel : public detail::Model {
 public:
  explicit IsotonicModel(double alpha) : alpha_(alpha) {}
  Taylor expand(double x, int order) const override {
    const Taylor t = Taylor::variable(order, x);
    const Taylor y = alpha_ * t;
    const Taylor r = t * (y + 2.0) / (y + 1.0);
    return r * r / 8.0;
  }
  double value(double x) const override {
    const double y = alpha_ * x;
    const double r = x * (y + 2.0) / (y + 1.0);
    return r * r / 8.0;
  }
  double alpha_;
};

// G = X^2/2 with X = [bcx - a q/(2 + S)] / (c (b - 2a^2)), q = 2bc^2x^2 + 8acx,
// S = sqrt(4 + q).
class ThreeParamModel : public detail::Model {
 public:
  ThreeParamModel(double a, double b, double c) : a_(a), b_(b), c_(c) {}
  Taylor expand(double x, int order) const override {
    const Taylor t = Taylor::variable(order, x);
    const Taylor q = (2.0 * b_ * c_ * c_) * t * t + (8.0 * a_ * c_) * t;
    const Taylor S = sqrt(4.0 + q);
    const Taylor X = ((b_ * c_) * t - a_ * q / (2.0 + S)) / (c_ * (b_ - 2.0 * a_ * a_));
    return 0.5 * X * X;
  }
  double a_, b_, c_;
};

PDefinition make_pdef(std::string label, double radius, std::function<Taylor(const Taylor&)> P) {
  PDefinition d;
  d.label = std::move(label);
  d.radius = radius;
  d.P = std::move(P);
  return d;
}

PDefinition harmonic_P() {
  return make_pdef("harmonic", kInf, [](const Taylor& G) { return Taylor(G.order(), 0.0); });
}

PDefinition isotonic_P(double alpha) {
  return make_pdef("isotonic", 1.0 / (2 * alpha * alpha), [alpha](const Taylor& G) {
    return (2.0 * alpha) * G / (sqrt(1.0 + (2.0 * alpha * alpha) * G) + 1.0);
  });
}

PDefinition three_param_P(double a, double b, double c) {
  PDefinition base = make_pdef("three-param", 1.0 / b, [a, b](const Taylor& G) {
    return (2.0 * a) * G / (sqrt(1.0 + b * G) + 1.0);
  });
  return c == 1.0 ? base : scale_pdefinition(base, c);
}

PDefinition family_P(int which, double p1, double p2) {
  switch (which) {
    case 1:
      return make_pdef("family1", 0.5, [c = p1](const Taylor& G) {
        return (2.0 * c) * G / (1.0 + 2.0 * G);
      });
    case 2:
      return make_pdef("family2", 1.0 / (2 * p1 * p1), [a = p1](const Taylor& G) {
        return (2.0 * a) * G / sqrt(1.0 + (2.0 * a * a) * G);
      });
    case 3:
      return make_pdef("family3", 0.5, [a = p1](const Taylor& G) {
        const Taylor s = sqrt(1.0 + 2.0 * G);
        return (2.0 * G - (2.0 * a) * G / (s + 1.0)) / s;
      });
    default:
      return make_pdef("family4", 1.0 / (2 * p2 * p2), [alpha = p1, beta = p2](const Taylor& G) {
        const Taylor s = sqrt(1.0 + (2.0 * beta * beta) * G);
        return (-2.0 * alpha * beta * beta) * G * (2.0 * s + 1.0) / (s * (s + 1.0));
      });
  }
}

std::vector<Rational> parse_coeffs(const std::vector<std::string>& c) {
  std::vector<Rational> r;
  for (const auto& s : c) r.push_back(parse_rational(s));
  return r;
}

std::shared_ptr<detail::Model> build(const PotentialDescriptor& d) {
  const std::string& id = d.family;
  const Params& p = d.params;
  std::shared_ptr<detail::Model> m;
  auto need_no_coeffs = [&] {
    if (!d.coeffs.empty()) throw ParameterDomainError("family " + id + " takes no coefficients");
  };

  if (id == "harmonic") {
    allow_only(id, p, {});
    need_no_coeffs();
    m = std::make_shared<HarmonicModel>();
    m->label = "harmonic";
    m->pdef = harmonic_P();
  } else if (id == "isotonic" || id == "chalykh-veselov") {
    allow_only(id, p, {"alpha"});
    need_no_coeffs();
    const double alpha = param(p, "alpha", 1.0);
    if (alpha == 0.0) throw ParameterDomainError(id + " needs alpha != 0");
    m = std::make_shared<IsotonicModel>(alpha);
    m->label = id + "(alpha=" + std::to_string(alpha) + ")";
    m->domain = alpha > 0 ? Interval{-1.0 / alpha, kInf} : Interval{-kInf, -1.0 / alpha};
    m->singular_edge = true;
    m->pdef = isotonic_P(alpha);
    m->pdef->label = id;
  } else if (id == "three-param") {
    allow_only(id, p, {"a", "b", "c"});
    need_no_coeffs();
    const double a = param(p, "a", 0.1), b = param(p, "b", 1.0), c = param(p, "c", 1.0);
    if (!(2 * a * a < b)) throw ParameterDomainError("three-param needs 2a^2 < b");
    if (c == 0.0) throw ParameterDomainError("three-param needs c != 0");
    m = std::make_shared<ThreeParamModel>(a, b, c);
    m->label = "three-param(a=" + std::to_string(a) + ", b=" + std::to_string(b) +
               ", c=" + std::to_string(c) + ")";
    m->pdef = three_param_P(a, b, c);
  } else if (id == "family1" || id == "family2" || id == "family3" || id == "family4") {
    need_no_coeffs();
    const int which = id.back() - '0';
    double p1 = 0, p2 = 0;
    std::string label;
    if (which == 1) {
      allow_only(id, p, {"c", "gmax"});
      p1 = param(p, "c", 0.3);
      label = "family1(c=" + std::to_string(p1) + ")";
    } else if (which == 4) {
      allow_only(id, p, {"alpha", "beta", "gmax"});
      p1 = param(p, "alpha", 0.5);
      p2 = param(p, "beta", 1.0);
      if (p2 == 0.0) throw ParameterDomainError("family4 needs beta != 0");
      label = "family4(alpha=" + std::to_string(p1) + ", beta=" + std::to_string(p2) + ")";
    } else {
      allow_only(id, p, {"a", "gmax"});
      p1 = param(p, "a", which == 2 ? 0.3 : 0.5);
      label = id + "(a=" + std::to_string(p1) + ")";
    }
    if (p1 == 0.0) throw ParameterDomainError(id + " needs a nonzero parameter");
    const PDefinition P = family_P(which, p1, p2);
    const double cap = param(p, "gmax", 100.0);
    const double limit = detail::monotone_limit(P, cap);
    const double G_max = limit < cap ? 0.95 * limit : cap;
    if (!(G_max > 0)) throw ParameterDomainError(id + ": x(G) is not monotone near G = 0");
    m = detail::make_p_model(P, G_max);
    m->label = label;
  } else if (id == "p-series") {
    allow_only(id, p, {"gmax"});
    if (d.coeffs.empty()) throw ParameterDomainError("p-series needs coefficients of P(G)");
    TruncSeries P(parse_coeffs(d.coeffs), SeriesVar::G);
    m = detail::make_p_model(pdefinition_from_series(P, "p-series"), param(p, "gmax", 10.0));
  } else if (id == "series" || id == "quartic") {
    allow_only(id, p, {});
    std::vector<Rational> a;
    if (id == "quartic") {
      need_no_coeffs();
      a = {0, 1};
    } else {
      if (d.coeffs.empty()) throw ParameterDomainError("series needs coefficients a2, a3, ...");
      a = parse_coeffs(d.coeffs);
    }
    m = detail::make_series_model(potential_from_g_coeffs(a, static_cast<int>(a.size()) + 2), id);
  } else {
    throw ParameterDomainError("unknown family '" + id + "'");
  }
  return m;
}

}  // namespace

std::vector<std::string> family_ids() {
  return {"harmonic", "isotonic", "chalykh-veselov", "three-param", "family1",
          "family2",  "family3",  "family4",         "p-series",    "series", "quartic"};
}

Potential make_potential(const PotentialDescriptor& d) {
  auto m = build(d);
  m->descriptor = d;
  m->descriptor.scale = 1.0;
  Potential out(m);
  if (d.scale != 1.0) out = scale(out, d.scale);
  return out;
}

Potential make_family(const std::string& id, const std::map<std::string, double>& params) {
  PotentialDescriptor d;
  d.family = id;
  d.params = params;
  return make_potential(d);
}

}  // namespace isochrone
