#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "isochrone/errors.hpp"
#include "isochrone/parallel.hpp"
#include "isochrone/period.hpp"
#include "isochrone/quadrature.hpp"

using namespace isochrone;

namespace {

constexpr double kTwoPi = 2 * M_PI;

// High-precision references (tests/oracles/freeze_values.py).
constexpr double kQuarticT = 4.7680220291024608;        // T(3/4)
constexpr double kQuarticDT = -1.0004743886763079;      // T'(3/4)

const std::vector<std::string> kFamilies = {"harmonic", "isotonic", "chalykh-veselov", "three-param",
                                            "family1",  "family2",  "family3",         "family4"};

}  // namespace

TEST_CASE("tanh-sinh handles endpoint singularities") {
  const auto r = tanh_sinh([](double, double, double dhi) { return 1 / std::sqrt(dhi); }, 0, 1);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  const double abel = abel_integral([](double v, double) { return v; }, 2.0);
  CHECK(abel == doctest::Approx(4.0 / 3 * std::pow(2.0, 1.5)).epsilon(1e-12));
  const auto d = fit_derivatives([](double x) { return std::exp(x); }, 0.3, 1e-2);
  for (int k = 0; k <= 3; ++k) CHECK(d[k] == doctest::Approx(std::exp(0.3)).epsilon(1e-7));
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  std::vector<int> done(100, 0);
  parallel_for(100, [&](size_t i) { done[i] = 1; });
  CHECK(std::count(done.begin(), done.end(), 1) == 100);
  try {
    parallel_for(100, [](size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}

TEST_CASE("turning points") {
  const OrbitData h = turning_points(make_family("harmonic"), 2.0);
  CHECK(h.a == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(h.b == doctest::Approx(2.0).epsilon(1e-14));
  const OrbitData i = turning_points(make_family("isotonic", {{"alpha", 1}}), 9.0 / 32);
  CHECK(i.a == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(i.b == doctest::Approx(1.0).epsilon(1e-13));
  const OrbitData q = turning_points(make_family("quartic"), 0.75);
  CHECK(q.a == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(q.b == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("period examples") {
  const Potential h = make_family("harmonic");
  for (double E : {0.01, 0.1, 1.0, 10.0, 100.0}) CHECK(std::abs(period(h, E) - kTwoPi) <= 1e-10);
  CHECK(std::abs(period(make_family("isotonic", {{"alpha", 1}}), 1.0) - kTwoPi) <= 1e-8);
  const Potential q = make_family("quartic");
  CHECK(period(q, 0.75) < kTwoPi);
  CHECK(period(q, 0.75) == doctest::Approx(kQuarticT).epsilon(1e-11));
  CHECK(ode_period_oracle(q, 0.75) == doctest::Approx(kQuarticT).epsilon(1e-9));
  // Both sides of the small-energy switch follow 2 pi (1 - 3E/4).
  for (double E : {0.99 * kSmallEnergy, 1.01 * kSmallEnergy})
    CHECK(std::abs(period(q, E) - kTwoPi * (1 - 0.75 * E)) <= 1e-13);
}

TEST_CASE("ODE oracle examples") {
  CHECK(std::abs(ode_period_oracle(make_family("harmonic"), 1.0) - kTwoPi) <= 1e-9);
  CHECK(std::abs(ode_period_oracle(make_family("isotonic", {{"alpha", 1}}), 2.0) - kTwoPi) <= 1e-8);
}

TEST_CASE("period derivative") {
  CHECK(std::abs(period_derivative(make_family("harmonic"), 1.0)) <= 1e-9);
  CHECK(std::abs(period_derivative(make_family("isotonic", {{"alpha", 1}}), 1.0)) <= 1e-7);
  const Potential q = make_family("quartic");
  const double d = period_derivative(q, 0.75);
  CHECK(d < 0);
  CHECK(d == doctest::Approx(kQuarticDT).epsilon(1e-8));
  const double h = 1e-4;
  CHECK(std::abs(d - (period(q, 0.75 + h) - period(q, 0.75 - h)) / (2 * h)) <= 1e-6);
}

TEST_CASE("quadrature and ODE periods agree on every family") {
  for (const auto& id : kFamilies) {
    CAPTURE(id);
    const Potential p = make_family(id);
    for (double E : {0.05, 0.5, 2.0, 5.0}) {
      CAPTURE(E);
      // Some constructed families stop being single-valued below E = 5.
      try {
        turning_points(p, E * 1.0001);
      } catch (const DomainError&) {
        continue;
      }
      const double T = period(p, E);
      CHECK(std::abs(T - ode_period_oracle(p, E)) <= 1e-7 * T);
      const double h = 1e-4 * E;
      const double fd = (period(p, E + h) - period(p, E - h)) / (2 * h);
      CHECK(std::abs(period_derivative(p, E) - fd) <= 1e-6);
    }
  }
}

TEST_CASE("certificate examples") {
  const CertReport h = certify(make_family("harmonic"), Criterion::Landau, 1e-8);
  CHECK(h.max_residual == 0.0);
  CHECK(h.verdict == Verdict::Isochronous);

  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(-1.5 + 3.0 * i / 19 + (i == 9 || i == 10 ? 0.01 : 0.0));
  const CertReport tp = certify(make_family("three-param"), Criterion::Landau, xs, 1e-9);
  CHECK(tp.max_residual <= 1e-9);
  CHECK(tp.verdict == Verdict::Isochronous);

  const CertReport q = certify(make_family("quartic"), Criterion::AInvariance, 1e-8);
  CHECK(q.max_residual >= 1e-7);
  CHECK(q.verdict == Verdict::NotIsochronous);
}

TEST_CASE("constructed families pass all five certificates") {
  for (const char* id : {"three-param", "family1", "family2", "family3", "family4"}) {
    const Potential p = make_family(id);
    for (Criterion c : all_criteria()) {
      CAPTURE(id);
      CAPTURE(to_string(c));
      CHECK(certify(p, c, 1e-7).verdict == Verdict::Isochronous);
    }
  }
}

TEST_CASE("non-isochronous potentials fail criteria (i) and (iii)") {
  PotentialDescriptor d;
  d.family = "series";
  d.coeffs = {"1", "1"};
  for (const Potential& p : {make_family("quartic"), make_potential(d)}) {
    CAPTURE(p.label());
    CHECK(certify(p, Criterion::AInvariance, 1e-8).verdict == Verdict::NotIsochronous);
    CHECK(certify(p, Criterion::Landau, 1e-8).verdict == Verdict::NotIsochronous);
  }
  const CertReport u = certify(make_potential(d), Criterion::UrabeOddness, 1e-8);
  CHECK(u.exact);
  CHECK(u.verdict == Verdict::NotIsochronous);
}

TEST_CASE("verdict hysteresis") {
  CHECK(verdict_for(1e-9, 1e-8) == Verdict::Isochronous);
  CHECK(verdict_for(5e-8, 1e-8) == Verdict::Inconclusive);
  CHECK(verdict_for(1e-7, 1e-8) == Verdict::NotIsochronous);
  CHECK(parse_criterion("iii") == Criterion::Landau);
  CHECK(parse_criterion("landau") == Criterion::Landau);
  CHECK_THROWS_AS(parse_criterion("vi"), ParseError);
}

TEST_CASE("width from the period function") {
  const auto two_pi = [](double) { return kTwoPi; };
  CHECK(width_from_period(two_pi, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(width_from_period(two_pi, 0.5) == doctest::Approx(2.0).epsilon(1e-12));

  const Potential iso = make_family("isotonic", {{"alpha", 1}});
  const auto T_iso = [&](double E) { return period(iso, E); };
  CHECK(width_from_period(T_iso, 9.0 / 32) == doctest::Approx(1.5).epsilon(1e-9));

  const Potential q = make_family("quartic");
  const auto T_q = [&](double E) { return period(q, E); };
  for (double E : {0.1, 0.75, 2.0}) {
    const OrbitData o = turning_points(q, E);
    CHECK(std::abs(width_from_period(T_q, E) - (o.b - o.a)) <= 1e-6);
  }
}
