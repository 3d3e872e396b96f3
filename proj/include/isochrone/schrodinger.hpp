#pragma once

#include <optional>
#include <vector>

#include "isochrone/potential.hpp"

namespace isochrone {

// -(hbar^2/2) psi'' + G psi on interior nodes of a uniform grid with
// Dirichlet ends: diagonal hbar^2/h^2 + G(x_i), off-diagonal -hbar^2/(2h^2).
struct DiscreteOperator {
  double x_lo = 0.0, x_hi = 0.0;
  int N = 0;  // number of intervals; N - 1 unknowns
  double h = 0.0;
  double hbar = 1.0;
  std::vector<double> diagonal;
  double off_diagonal = 0.0;
};

// Classically forbidden margin required at both ends, in units of hbar.
constexpr double kMarginHbar = 10.0;

// Throws DomainError when an end leaves the domain, MarginError when it sits on
// the domain edge or, with e_max given, where G is below e_max + 10 hbar.
DiscreteOperator discretize(const Potential& p, double hbar, double x_lo, double x_hi, int N,
                            std::optional<double> e_max = std::nullopt);

// On a finite singular edge the automatic cut sits where G reaches this
// multiple of the margin level.
constexpr double kSingularWallFactor = 1e6;

// Minimum tunnelling exponent int sqrt(2(G - E))/hbar dx between the turning
// point of e_max and each automatic cut.
constexpr double kDecayExponent = 20.0;

double decay_exponent(const Potential& p, double hbar, double E, double x_turn, double x_edge);

// Automatic ends: G at least e_max + 10 hbar and the decay exponent at least
// kDecayExponent; on a singular edge G = kSingularWallFactor (e_max + 10 hbar).
Interval oracle_interval(const Potential& p, double hbar, double e_max);

// k lowest eigenvalues by Sturm-sequence bisection.
std::vector<double> eigenvalues(const DiscreteOperator& op, int k);

struct OracleSpectrum {
  double hbar = 1.0;
  double x_lo = 0.0, x_hi = 0.0;
  int N = 0;
  bool extrapolated = true;
  std::vector<double> levels;  // extrapolated when enabled
  std::vector<double> coarse;  // N intervals
  std::vector<double> fine;    // 2N intervals
  double h2_coefficient = 0.0; // max |coarse - fine| / (h^2 - (h/2)^2)
};

// Levels with automatic interval selection (unless given) and Richardson
// extrapolation over N and 2N intervals.
OracleSpectrum oracle_spectrum(const Potential& p, double hbar, int k, int N,
                               bool richardson = true,
                               std::optional<Interval> interval = std::nullopt);

}  // namespace isochrone
