#include <cmath>

#include "isochrone/errors.hpp"
#include "isochrone/parallel.hpp"
#include "isochrone/period.hpp"

namespace isochrone {

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::AInvariance: return "a-invariance";
    case Criterion::FInvariance: return "f-invariance";
    case Criterion::Landau: return "landau";
    case Criterion::ADerivative: return "a-derivative";
    case Criterion::UrabeOddness: return "urabe";
  }
  return "?";
}

Criterion parse_criterion(const std::string& s) {
  if (s == "i" || s == "a-invariance") return Criterion::AInvariance;
  if (s == "ii" || s == "f-invariance") return Criterion::FInvariance;
  if (s == "iii" || s == "landau") return Criterion::Landau;
  if (s == "iv" || s == "a-derivative") return Criterion::ADerivative;
  if (s == "v" || s == "urabe") return Criterion::UrabeOddness;
  throw ParseError("unknown criterion '" + s + "'");
}

std::vector<Criterion> all_criteria() {
  return {Criterion::AInvariance, Criterion::FInvariance, Criterion::Landau,
          Criterion::ADerivative, Criterion::UrabeOddness};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Isochronous: return "Isochronous";
    case Verdict::NotIsochronous: return "NotIsochronous";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict verdict_for(double max_residual, double tol) {
  if (max_residual <= tol) return Verdict::Isochronous;
  if (max_residual >= 10 * tol) return Verdict::NotIsochronous;
  return Verdict::Inconclusive;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

std::vector<double> default_x_grid(const Potential& p) {
  std::vector<double> xs;
  for (double E : log_grid(0.05, 2.0, 16)) {
    try {
      const OrbitData o = turning_points(p, E);
      xs.push_back(o.a);
      xs.push_back(o.b);
    } catch (const DomainError&) {
    }
  }
  return xs;
}

namespace {

// d/dx [G/g^2] = (g^2 - 2 G g') / g^3.
double phi(const Potential& p, double x) {
  const Taylor t = p.expand(x, 2);
  const double g = t[1];
  return (g * g - 4.0 * t[0] * t[2]) / (g * g * g);
}

double a_prime(const Potential& p, double x) {
  double h = 1e-4 * (1.0 + std::abs(x));
  h = std::min(h, std::abs(x) / 4);
  const Interval d = p.domain();
  h = std::min(h, (d.hi - x) / 3);
  h = std::min(h, (x - d.lo) / 3);
  auto A = [&](double y) { return involution(p, y); };
  return (A(x - 2 * h) - 8 * A(x - h) + 8 * A(x + h) - A(x + 2 * h)) / (12 * h);
}

double residual(const Potential& p, Criterion c, double x) {
  if (x == 0.0) throw DomainError("certificates sample x != 0");
  const double A = involution(p, x);
  switch (c) {
    case Criterion::AInvariance:
      return std::abs(phi(p, x) - phi(p, A));
    case Criterion::FInvariance: {
      const Taylor tx = p.expand(x, 1), ta = p.expand(A, 1);
      return std::abs((x - 2 * tx[0] / tx[1]) - (A - 2 * ta[0] / ta[1]));
    }
    case Criterion::Landau:
      return std::abs(x - A - std::copysign(2.0 * std::sqrt(2.0 * p.G(x)), x));
    case Criterion::ADerivative: {
      const Taylor t = p.expand(x, 1);
      const double ap = a_prime(p, x);
      return std::abs(t[0] / (t[1] * t[1]) - 2.0 / ((1 - ap) * (1 - ap)));
    }
    case Criterion::UrabeOddness: {
      // Even part of h(X) = X/g - 1, sampled at X and -X.
      const double X = std::copysign(std::sqrt(2.0 * p.G(x)), x);
      return std::abs(0.5 * (X / p.g(x) - X / p.g(A)) - 1.0);
    }
  }
  return 0.0;
}

}  // namespace

CertReport certify(const Potential& p, Criterion c, const std::vector<double>& x_grid, double tol) {
  if (c == Criterion::UrabeOddness && p.series()) return certify_series_urabe(*p.series(), tol);
  CertReport r;
  r.criterion = c;
  r.tol = tol;
  r.grid = x_grid;
  r.residuals.assign(x_grid.size(), 0.0);
  parallel_for(x_grid.size(), [&](std::size_t i) { r.residuals[i] = residual(p, c, x_grid[i]); });
  for (double v : r.residuals) r.max_residual = std::max(r.max_residual, v);
  r.verdict = verdict_for(r.max_residual, tol);
  return r;
}

CertReport certify(const Potential& p, Criterion c, double tol) {
  return certify(p, c, default_x_grid(p), tol);
}

CertReport certify_series_urabe(const TruncSeries& G, double tol) {
  const UrabeResult u = urabe_h(G);
  CertReport r;
  r.criterion = Criterion::UrabeOddness;
  r.tol = tol;
  r.exact = true;
  for (const auto& e : u.even) r.residuals.push_back(std::abs(to_double(e)));
  r.max_residual = u.even_norm;
  // Exact arithmetic carries no noise: any nonzero even coefficient refutes.
  r.verdict = u.odd ? Verdict::Isochronous : Verdict::NotIsochronous;
  return r;
}

}  // namespace isochrone
