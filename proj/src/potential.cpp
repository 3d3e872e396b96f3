#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "isochrone/errors.hpp"
#include "model.hpp"

namespace isochrone {

double PDefinition::value(double G) const { return P(Taylor(0, G))[0]; }

Taylor PDefinition::expand(double G0, int order) const { return P(Taylor::variable(order, G0)); }

Taylor PDefinition::F(double G0, int order) const {
  const Taylor p = expand(G0, order + 1);
  const Taylor dp = p.diff();
  return 2.0 * Taylor::variable(order, G0) * dp - p.truncated(order);
}

PDefinition pdefinition_from_series(const TruncSeries& P, std::string label) {
  PDefinition d;
  d.label = std::move(label);
  d.series = P;
  const std::vector<double> c = P.to_doubles();
  d.P = [c](const Taylor& G) {
    Taylor r(G.order(), c.back());
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) r = r * G + c[k];
    return r;
  };
  // Root test on the highest nonzero coefficient.
  d.radius = kInf;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    if (c[k] != 0.0) {
      d.radius = std::pow(std::abs(c[k]), -1.0 / k);
      break;
    }
  }
  return d;
}

PDefinition scale_pdefinition(const PDefinition& p, double c) {
  PDefinition d;
  d.label = p.label;
  d.radius = p.radius / (c * c);
  auto inner = p.P;
  d.P = [inner, c](const Taylor& G) { return inner(G * (c * c)) / c; };
  return d;
}

Potential::Potential(std::shared_ptr<const detail::Model> model) : model_(std::move(model)) {}

const PotentialDescriptor& Potential::descriptor() const { return model_->descriptor; }
std::string Potential::label() const { return model_->label; }
Interval Potential::domain() const { return model_->domain; }
bool Potential::singular_edge() const { return model_->singular_edge; }
const PDefinition* Potential::pdefinition() const { return model_->pdef ? &*model_->pdef : nullptr; }
const TruncSeries* Potential::series() const { return model_->series ? &*model_->series : nullptr; }

namespace {

void require_in_domain(const detail::Model& m, double x) {
  if (!m.domain.contains(x) || !std::isfinite(x))
    throw DomainError("x = " + std::to_string(x) + " outside the domain of " + m.label);
}

}  // namespace

double Potential::G(double x) const {
  require_in_domain(*model_, x);
  return model_->value(x);
}

double Potential::g(double x) const {
  require_in_domain(*model_, x);
  return model_->expand(x, 1)[1];
}

Taylor Potential::expand(double x, int order) const {
  require_in_domain(*model_, x);
  return model_->expand(x, order);
}

Jet Potential::jet(double x, int k) const {
  if (k < 1 || k > max_jet_order_)
    throw ParameterDomainError("jet order " + std::to_string(k) + " outside [1, " +
                               std::to_string(max_jet_order_) + "]");
  const Taylor t = expand(x, k);
  Jet j{x, k, {}};
  j.coeffs.resize(k + 1);
  for (int i = 0; i <= k; ++i) j.coeffs[i] = t.derivative(i);
  return j;
}

namespace {

void check_normalization(const detail::Model& m) {
  const Taylor t = m.expand(0.0, 2);
  const double gp = 2.0 * t[2];
  if (std::abs(t[0]) > 1e-10 || std::abs(t[1]) > 1e-10 || std::abs(gp - 1.0) > 1e-10)
    throw NormalizationError(m.label + ": expected G(0) = g(0) = 0, g'(0) = 1; got " +
                             std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " +
                             std::to_string(gp));
}

// G(x) from x = X + P(X^2/2) by safeguarded Newton on X.
class PInverseModel : public detail::Model {
 public:
  PInverseModel(PDefinition p, double G_max) : p_(std::move(p)), G_max_(G_max) {
    X_max_ = std::sqrt(2.0 * G_max_);
  }

  double branch_x(double X) const { return X + p_.value(0.5 * X * X); }

  double invert(double x) const {
    if (x == 0.0) return 0.0;
    double lo = 0.0, hi = x > 0 ? X_max_ : -X_max_;
    if (lo > hi) std::swap(lo, hi);
    double X = std::clamp(x, lo, hi);
    double best = X, best_res = kInf;
    for (int it = 0; it < 200; ++it) {
      const Taylor xs = p_.expand(0.5 * X * X, 1);
      const double h = X + xs[0] - x;
      const double dh = 1.0 + X * xs[1];
      if (std::abs(h) < best_res) {
        best_res = std::abs(h);
        best = X;
      }
      if (h == 0.0) break;
      // h is increasing in X on the branch.
      if (h > 0) hi = X; else lo = X;
      double next = X - h / dh;
      if (!(next > lo && next < hi) || !(dh > 0)) next = 0.5 * (lo + hi);
      if (std::abs(next - X) <= 2e-16 * std::max(1.0, std::abs(X))) {
        X = next;
        break;
      }
      X = next;
    }
    const Taylor xs = p_.expand(0.5 * X * X, 0);
    if (std::abs(X + xs[0] - x) < best_res) best = X;
    best_res = std::min(best_res, std::abs(X + xs[0] - x));
    if (!(best_res <= 1e-14 * std::max(1.0, std::abs(x))))
      throw InversionError(label + ": x(G) inversion did not converge at x = " + std::to_string(x));
    return best;
  }

  double value(double x) const override {
    const double X = invert(x);
    return 0.5 * X * X;
  }

  Taylor expand(double x, int order) const override {
    const double X0 = invert(x);
    if (order == 0) return Taylor(0, 0.5 * X0 * X0);
    const Taylor X = Taylor::variable(order, X0);
    const Taylor xs = X + p_.P(0.5 * X * X);
    Taylor s = revert(xs);
    s[0] = X0;
    return 0.5 * s * s;
  }

  PDefinition p_;
  double G_max_, X_max_;
};

}  // namespace

double detail::monotone_limit(const PDefinition& p, double cap) {
  auto ok = [&](double G) {
    const Taylor t = p.expand(G, 1);
    if (!std::isfinite(t[0]) || !std::isfinite(t[1])) return false;
    const double X = std::sqrt(2.0 * G);
    return 1.0 + X * t[1] > 0.0 && 1.0 - X * t[1] > 0.0;
  };
  const int n = 4000;
  double prev = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double G = cap * std::pow(static_cast<double>(i) / n, 3);
    bool good = false;
    try {
      good = ok(G);
    } catch (const Error&) {
      good = false;
    }
    if (!good) {
      double lo = prev, hi = G;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        bool gm = false;
        try {
          gm = ok(mid);
        } catch (const Error&) {
        }
        (gm ? lo : hi) = mid;
      }
      return lo;
    }
    prev = G;
  }
  return cap;
}

namespace detail {

std::shared_ptr<Model> make_p_model(const PDefinition& P, double G_max) {
  if (!(G_max > 0)) throw ParameterDomainError("G_max must be positive");
  if (std::abs(P.value(0.0)) > 1e-14)
    throw NormalizationError(P.label + ": P(0) must vanish so that x(0) = 0");
  const double limit = monotone_limit(P, G_max);
  if (limit < G_max)
    throw MonotonicityError(P.label + ": dx/dG changes sign at G = " + std::to_string(limit) +
                            " inside (0, " + std::to_string(G_max) + "]");
  auto m = std::make_shared<PInverseModel>(P, G_max);
  m->label = P.label;
  m->descriptor.family = "p-series";
  m->pdef = P;
  const double X = std::sqrt(2.0 * G_max);
  m->domain = {-X + P.value(G_max), X + P.value(G_max)};
  check_normalization(*m);
  return m;
}

}  // namespace detail

Potential potential_from_P(const PDefinition& P, double G_max) {
  return Potential(detail::make_p_model(P, G_max));
}

namespace {

class PolynomialModel : public detail::Model {
 public:
  explicit PolynomialModel(const TruncSeries& G) : c_(G.to_doubles()) {}

  Taylor expand(double x, int order) const override {
    const Taylor t = Taylor::variable(order, x);
    Taylor r(order, c_.back());
    for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k) r = r * t + c_[k];
    return r;
  }

  double value(double x) const override {
    double r = 0.0;
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) r = r * x + c_[k];
    return r;
  }

  double slope(double x) const {
    double r = 0.0;
    for (int k = static_cast<int>(c_.size()) - 1; k >= 1; --k) r = r * x + k * c_[k];
    return r;
  }

  std::vector<double> c_;
};

// First zero of g on the given side, or infinity.
double first_force_zero(const PolynomialModel& m, int side) {
  double prev = 0.0;
  for (double x = 1e-3; x < 1e4; x *= 1.005) {
    if (m.slope(side * x) * side <= 0.0) {
      double lo = prev, hi = x;
      for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (m.slope(side * mid) * side > 0.0 ? lo : hi) = mid;
      }
      return side * lo;
    }
    prev = x;
  }
  return side * kInf;
}

}  // namespace

std::shared_ptr<detail::Model> detail::make_series_model(const TruncSeries& G, std::string label) {
  if (G.order() < 2 || G[0] != 0 || G[1] != 0 || G[2] != Rational(1, 2))
    throw NormalizationError(label + ": series must start x^2/2");
  auto m = std::make_shared<PolynomialModel>(G);
  m->label = std::move(label);
  m->descriptor.family = "series";
  for (int k = 3; k <= G.order(); ++k) m->descriptor.coeffs.push_back(format_rational(G[k] * k));
  m->series = G;
  m->domain = {first_force_zero(*m, -1), first_force_zero(*m, 1)};
  return m;
}

Potential potential_from_series(const TruncSeries& G, std::string label) {
  return Potential(detail::make_series_model(G, std::move(label)));
}

namespace {

class ScaledModel : public detail::Model {
 public:
  ScaledModel(Potential base, double c) : base_(std::move(base)), c_(c) {}

  Taylor expand(double x, int order) const override {
    Taylor t = base_.expand(c_ * x, order);
    double f = 1.0 / (c_ * c_);
    for (int k = 0; k <= order; ++k) {
      t[k] *= f;
      f *= c_;
    }
    return t;
  }

  double value(double x) const override { return base_.G(c_ * x) / (c_ * c_); }

  Potential base_;
  double c_;
};

}  // namespace

Potential scale(const Potential& p, double c) {
  if (c == 0.0 || !std::isfinite(c)) throw ParameterDomainError("scale factor must be nonzero");
  auto m = std::make_shared<ScaledModel>(p, c);
  m->descriptor = p.descriptor();
  m->descriptor.scale *= c;
  m->label = p.label() + " scaled by " + std::to_string(c);
  const Interval d = p.domain();
  m->domain = c > 0 ? Interval{d.lo / c, d.hi / c} : Interval{d.hi / c, d.lo / c};
  m->singular_edge = p.singular_edge();
  if (p.pdefinition()) m->pdef = scale_pdefinition(*p.pdefinition(), c);
  if (p.series()) {
    TruncSeries s = *p.series();
    Rational q = 1;
    // Only rational scale factors keep the series exact; others are dropped.
    if (c == std::round(c)) {
      for (int k = 0; k <= s.order(); ++k) {
        s[k] *= q;
        q *= Rational(static_cast<long long>(c));
      }
      for (int k = 2; k <= s.order(); ++k) s[k] /= Rational(static_cast<long long>(c * c));
      s[0] = 0;
      m->series = s;
    }
  }
  return Potential(m);
}

double level_crossing(const Potential& p, double level, int side) {
  if (level < 0) throw DomainError("negative energy level");
  if (level == 0) return 0.0;
  const Interval d = p.domain();
  const double edge = side > 0 ? d.hi : d.lo;
  double prev = 0.0;
  double cand = side * std::sqrt(2.0 * level);
  double Gc = 0.0;
  for (int it = 0;; ++it) {
    if (it > 4000 || (std::isfinite(edge) && std::abs(edge - prev) <= 4e-16 * std::max(1.0, std::abs(edge))))
      throw DomainError(p.label() + ": level " + std::to_string(level) +
                        " not reached before the domain edge on side " + std::to_string(side));
    if (!d.contains(cand)) cand = prev + 0.5 * (edge - prev);
    Gc = p.G(cand);
    if (Gc >= level) break;
    prev = cand;
    cand *= 2.0;
  }
  double lo = std::min(prev, cand), hi = std::max(prev, cand);
  auto f = [&](double x) { return p.G(x) - level; };
  double flo = f(lo), fhi = f(hi);
  double x;
  if (flo == 0.0) {
    x = lo;
  } else if (fhi == 0.0) {
    x = hi;
  } else {
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    x = 0.5 * (r.first + r.second);
  }
  // Newton polish with the analytic slope.
  double fx = f(x);
  for (int k = 0; k < 3 && fx != 0.0; ++k) {
    const Taylor t = p.expand(x, 1);
    const double nx = x - (t[0] - level) / t[1];
    if (!(nx >= lo && nx <= hi)) break;
    const double fn = f(nx);
    if (std::abs(fn) >= std::abs(fx)) break;
    x = nx;
    fx = fn;
  }
  return x;
}

double involution(const Potential& p, double x) {
  if (x == 0.0) return 0.0;
  return level_crossing(p, p.G(x), x > 0 ? -1 : 1);
}

double involution_from_P(const Potential& p, double x) {
  if (!p.pdefinition()) throw DecompositionUnavailable(p.label() + " has no P representation");
  const double X = std::copysign(std::sqrt(2.0 * p.G(x)), x);
  return x - 2.0 * X;
}

double three_param_involution(double a, double b, double c, double x) {
  const double q = 2.0 * b * c * c * x * x + 8.0 * a * c * x;
  const double S = std::sqrt(4.0 + q);
  return (-b * c * x - 2.0 * a * a * c * x - 4.0 * a + 2.0 * a * S) / (c * (b - 2.0 * a * a));
}

}  // namespace isochrone
