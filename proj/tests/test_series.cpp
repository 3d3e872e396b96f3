#include <random>

#include "doctest.h"
#include "isochrone/errors.hpp"
#include "isochrone/rational_series.hpp"

using namespace isochrone;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p) / q; }

TruncSeries xs(std::vector<Rational> c) { return TruncSeries(std::move(c)); }

// Small random rational with numerator in [-5, 5] and denominator in [1, 7].
Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 7);
  return R(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3") == R(3));
  CHECK(parse_rational("-3/6") == R(-1, 2));
  CHECK(parse_rational("0.25") == R(1, 4));
  CHECK(parse_rational("-1.5e-1") == R(-3, 20));
  CHECK(format_rational(R(10, 9)) == "10/9");
  CHECK(format_rational(R(2)) == "2/1");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("series reversion, composition and square root") {
  const TruncSeries r = revert(xs({0, 1, 1, 0, 0}));
  CHECK(r == xs({0, 1, -1, 2, -5}));

  const TruncSeries f = xs({R(3, 2), 2, 5});
  const TruncSeries zero(3);
  CHECK(compose(f, zero) == TruncSeries::constant(R(3, 2), 3));

  CHECK(sqrt(xs({1, 2, 1, 0})) == xs({1, 1, 0, 0}));
  const TruncSeries s = sqrt(xs({0, 0, 4, 4, 1}));
  CHECK(s[0] == 0);
  CHECK(s[1] == 2);
  CHECK(s[2] == 1);
}

TEST_CASE("odd coefficients completing even data") {
  CHECK(odd_from_even({R(1)}) == std::vector<Rational>{R(10, 9)});
  CHECK(odd_from_even({R(1), R(0)})[1] == R(-56, 27));
  CHECK(odd_from_even({R(0), R(0), R(0)}) == std::vector<Rational>{0, 0, 0});
  const auto odd = odd_from_even({R(1), R(1), R(0)});
  CHECK(odd[1] == R(98, 135));
  CHECK(odd[2] == R(848, 81) - R(592, 45) + R(36, 25));
}

TEST_CASE("odd completion reproduces the closed coefficient formulas exactly") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Rational a2 = random_rational(rng), a4 = random_rational(rng), a6 = random_rational(rng);
    const auto odd = odd_from_even({a2, a4, a6});
    CHECK(odd[0] == R(10, 9) * a2 * a2);
    CHECK(odd[1] == R(14, 5) * a2 * a4 - R(56, 27) * a2 * a2 * a2 * a2);
    CHECK(odd[2] == R(848, 81) * a2 * a2 * a2 * a2 * a2 * a2 - R(592, 45) * a2 * a2 * a2 * a4 +
                        R(24, 7) * a2 * a6 + R(36, 25) * a4 * a4);
    CHECK(odd_from_even({a2, a4, a6}) == odd);  // deterministic
  }
}

TEST_CASE("potential from f coefficients") {
  const TruncSeries G = g_from_f({1, 0, 0, 0, 0}, 6);
  CHECK(G == xs({0, 0, R(1, 2), R(-1, 2), R(5, 8), R(-7, 8), R(21, 16)}));
  CHECK(g_from_f({0, 0, 0}, 6) == xs({0, 0, R(1, 2), 0, 0, 0, 0}));
  CHECK(g_from_f({0, 1, 0}, 6)[5] == R(-1, 24));
}

TEST_CASE("f extraction inverts the potential recursion") {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> b;
    for (int j = 0; j < 4; ++j) b.push_back(random_rational(rng));
    const FExtraction e = f_from_g(g_from_f(b, 11));
    CHECK(e.consistent);
    REQUIRE(e.b.size() >= b.size());
    for (size_t j = 0; j < b.size(); ++j) CHECK(e.b[j] == b[j]);
  }
}

TEST_CASE("P from F") {
  const TruncSeries F1 = TruncSeries({0, 1}, SeriesVar::G);
  CHECK(p_from_f(F1) == TruncSeries({0, 1}, SeriesVar::G));
  const TruncSeries F0 = TruncSeries({1, 0}, SeriesVar::G);
  CHECK(p_from_f(F0) == TruncSeries({-1, 0}, SeriesVar::G));

  // F = -(6G + 1)/(1 + 2G)^2 to order 6.
  const TruncSeries num({-1, -6, 0, 0, 0, 0, 0}, SeriesVar::G);
  const TruncSeries den({1, 4, 4, 0, 0, 0, 0}, SeriesVar::G);
  const TruncSeries F = num / den;
  CHECK(f_from_p(p_from_f(F)) == F);
}

TEST_CASE("Urabe function of a potential series") {
  const UrabeResult harmonic = urabe_h(xs({0, 0, R(1, 2), 0, 0, 0, 0}));
  CHECK(harmonic.odd);
  for (const auto& c : harmonic.h.coeffs()) CHECK(c == 0);

  // a2 = 1 completed to order 8.
  std::vector<Rational> even = {1, 0, 0};
  const auto odd = odd_from_even(even);
  std::vector<Rational> a = {even[0], odd[0], even[1], odd[1], even[2], odd[2]};
  const UrabeResult iso = urabe_h(potential_from_g_coeffs(a, 8));
  CHECK(iso.odd);
  CHECK(iso.even_norm == 0.0);

  const UrabeResult bad = urabe_h(potential_from_g_coeffs({1, 1}, 4));
  CHECK_FALSE(bad.odd);
  CHECK(bad.even.at(0) != 0);
}

TEST_CASE("Urabe oddness holds exactly when the odd recursion is satisfied") {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const std::vector<Rational> even = {random_rational(rng), random_rational(rng)};
    const auto odd = odd_from_even(even);
    std::vector<Rational> a = {even[0], odd[0], even[1], odd[1]};
    CHECK(urabe_h(potential_from_g_coeffs(a, 6)).odd);
    // Any perturbation of an odd coefficient breaks oddness.
    a[1] += R(1, 3);
    CHECK_FALSE(urabe_h(potential_from_g_coeffs(a, 6)).odd);
  }
}
