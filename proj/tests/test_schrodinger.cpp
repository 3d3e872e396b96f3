#include <cmath>

#include "doctest.h"
#include "isochrone/errors.hpp"
#include "isochrone/schrodinger.hpp"
#include "isochrone/wkb.hpp"

using namespace isochrone;

namespace {

// Quartic levels, hbar = 1, from a 400-state oscillator basis
// (tests/oracles/freeze_values.py).
constexpr double kQuarticLevels[] = {0.620927029825749, 2.025966164166445, 3.698450319378084,
                                     5.557577138557434};

}  // namespace

TEST_CASE("operator construction") {
  const Potential h = make_family("harmonic");
  const DiscreteOperator op = discretize(h, 1.0, -10, 10, 4000);
  CHECK(op.diagonal.size() == 3999);
  CHECK(op.h == doctest::Approx(0.005));
  CHECK(op.off_diagonal == doctest::Approx(-0.5 / (op.h * op.h)));
  CHECK(eigenvalues(op, 1)[0] == doctest::Approx(0.5).epsilon(1e-5));

  const Potential q = make_family("quartic");
  CHECK_NOTHROW(discretize(q, 1.0, -6, 6, 3000, 20.0));
  CHECK_THROWS_AS(discretize(q, 1.0, -2, 2, 3000, 20.0), MarginError);

  const Potential iso = make_family("isotonic", {{"alpha", 1}});
  CHECK_THROWS_AS(discretize(iso, 1.0, -1.0, 10, 4000), MarginError);
  CHECK_THROWS_AS(discretize(iso, 1.0, -1.5, 10, 4000), DomainError);
  CHECK_THROWS_AS(eigenvalues(op, 401), ParameterDomainError);
}

TEST_CASE("harmonic levels after extrapolation") {
  const OracleSpectrum s = oracle_spectrum(make_family("harmonic"), 1.0, 4, 4000, true, Interval{-10, 10});
  for (int n = 0; n < 4; ++n) CHECK(std::abs(s.levels[n] - (n + 0.5)) <= 1e-6);
  const OracleSpectrum a = oracle_spectrum(make_family("harmonic"), 1.0, 4, 4000);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(a.levels[n] - (n + 0.5)) <= 1e-6);
  CHECK(a.h2_coefficient > 0);
}

TEST_CASE("isotonic spectrum is equispaced") {
  const OracleSpectrum s = oracle_spectrum(make_family("isotonic", {{"alpha", 1}}), 1.0, 6, 4000);
  CHECK(s.x_lo > -1.0);
  CHECK(spacing_report(s.levels, 1.0).max_deviation <= 1e-4);
  // Exact ground level (1 + sqrt 2)/4 from the radial-oscillator form of the potential.
  CHECK(s.levels[0] == doctest::Approx((1 + std::sqrt(2.0)) / 4).epsilon(1e-5));
}

TEST_CASE("quartic levels") {
  const Potential q = make_family("quartic");
  const OracleSpectrum a = oracle_spectrum(q, 1.0, 4, 3000), b = oracle_spectrum(q, 1.0, 4, 6000);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(a.levels[n] - b.levels[n]) <= 1e-5);
    CHECK(std::abs(b.levels[n] - kQuarticLevels[n]) <= 1e-7);
    if (n > 0) CHECK(b.levels[n] > b.levels[n - 1]);
  }
}

TEST_CASE("too narrow a given interval is rejected") {
  CHECK_THROWS_AS(oracle_spectrum(make_family("harmonic"), 1.0, 6, 2000, true, Interval{-3, 3}),
                  MarginError);
}
