#include "isochrone/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "isochrone/errors.hpp"

namespace isochrone {

DiscreteOperator discretize(const Potential& p, double hbar, double x_lo, double x_hi, int N,
                            std::optional<double> e_max) {
  if (N < 200) throw ParameterDomainError("grid needs N >= 200 intervals");
  if (!(hbar > 0)) throw ParameterDomainError("hbar must be positive");
  if (!(x_lo < 0 && x_hi > 0)) throw ParameterDomainError("interval must contain 0");
  const Interval d = p.domain();
  if (x_lo < d.lo || x_hi > d.hi)
    throw DomainError("interval [" + std::to_string(x_lo) + ", " + std::to_string(x_hi) +
                      "] leaves the domain of " + p.label());
  if (x_lo == d.lo || x_hi == d.hi)
    throw MarginError("interval [" + std::to_string(x_lo) + ", " + std::to_string(x_hi) +
                      "] reaches the domain edge of " + p.label());
  if (e_max) {
    const double need = *e_max + kMarginHbar * hbar;
    if (p.G(x_lo) < need || p.G(x_hi) < need)
      throw MarginError("G at the interval ends is below E_max + 10 hbar = " + std::to_string(need));
  }
  DiscreteOperator op;
  op.x_lo = x_lo;
  op.x_hi = x_hi;
  op.N = N;
  op.hbar = hbar;
  op.h = (x_hi - x_lo) / N;
  const double kinetic = hbar * hbar / (op.h * op.h);
  op.off_diagonal = -0.5 * kinetic;
  op.diagonal.resize(N - 1);
  for (int i = 1; i < N; ++i) op.diagonal[i - 1] = kinetic + p.G(x_lo + i * op.h);
  return op;
}

double decay_exponent(const Potential& p, double hbar, double E, double x_turn, double x_edge) {
  // Simpson's rule; the integrand vanishes like a square root at x_turn.
  constexpr int n = 400;
  const double h = (x_edge - x_turn) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = x_turn + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::sqrt(2.0 * std::max(0.0, p.G(x) - E));
  }
  return std::abs(sum * h / 3.0) / hbar;
}

Interval oracle_interval(const Potential& p, double hbar, double e_max) {
  const double level = e_max + kMarginHbar * hbar;
  const Interval d = p.domain();
  auto edge = [&](int side) {
    const double dom_edge = side < 0 ? d.lo : d.hi;
    try {
      // Near a 1/y^2-type wall states decay only algebraically, so a cut at
      // the bare margin truncates them visibly. Cut far up the wall instead.
      if (p.singular_edge() && std::isfinite(dom_edge))
        return level_crossing(p, kSingularWallFactor * level, side);
      const double turn = level_crossing(p, e_max, side);
      double lv = level;
      double x = level_crossing(p, lv, side);
      // A steep wall can satisfy the margin within a sliver; widen until the
      // tunnelling exponent is large enough.
      while (decay_exponent(p, hbar, e_max, turn, x) < kDecayExponent) {
        lv = e_max + 2.0 * (lv - e_max);
        try {
          x = level_crossing(p, lv, side);
        } catch (const DomainError&) {
          break;  // the domain ends first; keep the widest cut that fits
        }
      }
      return x;
    } catch (const DomainError& e) {
      throw MarginError(std::string("cannot confine the requested energies: ") + e.what());
    }
  };
  return {edge(-1), edge(1)};
}

namespace {

// Number of eigenvalues below lambda.
int sturm_count(const DiscreteOperator& op, double lambda) {
  const double e2 = op.off_diagonal * op.off_diagonal;
  int count = 0;
  double q = 1.0;
  for (size_t i = 0; i < op.diagonal.size(); ++i) {
    q = op.diagonal[i] - lambda - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> eigenvalues(const DiscreteOperator& op, int k) {
  if (k < 1 || k > op.N / 10) throw ParameterDomainError("need 1 <= k <= N/10");
  const auto [dmin, dmax] = std::minmax_element(op.diagonal.begin(), op.diagonal.end());
  const double spread = 2.0 * std::abs(op.off_diagonal);
  std::vector<double> out;
  double floor = *dmin - spread;
  for (int j = 0; j < k; ++j) {
    double lo = floor, hi = *dmax + spread;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (sturm_count(op, mid) > j ? hi : lo) = mid;
    }
    if (hi - lo > 1e-10 * std::max(1.0, std::abs(lo)))
      throw ConvergenceError("Sturm bisection did not converge for level " + std::to_string(j));
    out.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return out;
}

OracleSpectrum oracle_spectrum(const Potential& p, double hbar, int k, int N, bool richardson,
                               std::optional<Interval> interval) {
  OracleSpectrum s;
  s.hbar = hbar;
  s.N = N;
  s.extrapolated = richardson;
  // Confinement is sized for a guess of the top level taken from the
  // harmonic spectrum, then redone if the computed top level exceeds it.
  double e_max = (k + 0.5) * hbar;
  for (int attempt = 0;; ++attempt) {
    const Interval iv = interval ? *interval : oracle_interval(p, hbar, e_max);
    s.x_lo = iv.lo;
    s.x_hi = iv.hi;
    s.coarse = eigenvalues(discretize(p, hbar, iv.lo, iv.hi, N), k);
    if (richardson) s.fine = eigenvalues(discretize(p, hbar, iv.lo, iv.hi, 2 * N), k);
    const double top = std::max(s.coarse.back(), richardson ? s.fine.back() : s.coarse.back());
    if (interval) {
      const double need = top + kMarginHbar * hbar;
      if (p.G(iv.lo) < need || p.G(iv.hi) < need)
        throw MarginError("given interval does not confine level " + std::to_string(k - 1));
      break;
    }
    if (top <= e_max) break;
    if (attempt > 6) throw MarginError("could not confine the requested levels");
    e_max = 1.25 * top;
  }
  if (!richardson) {
    s.levels = s.coarse;
    return s;
  }
  const double h = (s.x_hi - s.x_lo) / N;
  for (int j = 0; j < k; ++j) {
    s.levels.push_back((4.0 * s.fine[j] - s.coarse[j]) / 3.0);
    s.h2_coefficient = std::max(s.h2_coefficient, std::abs(s.coarse[j] - s.fine[j]) / (0.75 * h * h));
  }
  return s;
}

}  // namespace isochrone
