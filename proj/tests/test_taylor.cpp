#include <cmath>

#include "doctest.h"
#include "isochrone/errors.hpp"
#include "isochrone/taylor.hpp"

using namespace isochrone;

TEST_CASE("product and quotient truncate to the smaller order") {
  const Taylor t = Taylor::variable(5, 0.0);
  const Taylor p = (1.0 + t) * (1.0 + t);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 2.0);
  CHECK(p[2] == 1.0);
  CHECK(p[3] == 0.0);
  const Taylor q = 1.0 / (1.0 - t);
  for (int k = 0; k <= 5; ++k) CHECK(q[k] == doctest::Approx(1.0));
  CHECK((t.truncated(2) * q).order() == 2);
}

TEST_CASE("elementary functions match their Taylor coefficients") {
  const Taylor x = Taylor::variable(6, 0.3);
  const Taylor e = exp(x);
  for (int k = 0; k <= 6; ++k) CHECK(e.derivative(k) == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
  const Taylor l = log(x);
  CHECK(l.derivative(1) == doctest::Approx(1 / 0.3));
  CHECK(l.derivative(3) == doctest::Approx(2 / std::pow(0.3, 3)));
  const Taylor s = sqrt(x);
  CHECK(s.derivative(2) == doctest::Approx(-0.25 * std::pow(0.3, -1.5)));
  const Taylor r = pow(x, -1.5);
  CHECK(r.derivative(2) == doctest::Approx(1.5 * 2.5 * std::pow(0.3, -3.5)));
}

TEST_CASE("revert inverts a local expansion") {
  const Taylor t = Taylor::variable(8, 0.0);
  const Taylor f = t + t * t;  // x + x^2
  const Taylor s = revert(f);
  const double expected[] = {0, 1, -1, 2, -5, 14, -42, 132, -429};
  for (int k = 0; k <= 8; ++k) CHECK(s[k] == doctest::Approx(expected[k]));
  const Taylor back = compose(f, s);
  CHECK(back[1] == doctest::Approx(1.0));
  for (int k = 2; k <= 8; ++k) CHECK(std::abs(back[k]) < 1e-12);
}

TEST_CASE("revert needs a nonzero slope") {
  const Taylor t = Taylor::variable(3, 0.0);
  CHECK_THROWS_AS(revert(t * t), SingularDenominatorError);
}
