#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace isochrone {

using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);  // always "p/q"
double to_double(const Rational& r);

enum class SeriesVar { x, G, X };
const char* to_string(SeriesVar v);

// Truncated power series c0 + c1 t + ... + cN t^N with exact rational
// coefficients. All arithmetic is exact through the truncation order.
class TruncSeries {
 public:
  explicit TruncSeries(int order = 0, SeriesVar var = SeriesVar::x);
  TruncSeries(std::vector<Rational> coeffs, SeriesVar var = SeriesVar::x);

  static TruncSeries constant(const Rational& c, int order, SeriesVar var = SeriesVar::x);
  // t^k truncated at order.
  static TruncSeries monomial(int k, int order, SeriesVar var = SeriesVar::x);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  SeriesVar var() const { return var_; }
  void set_var(SeriesVar v) { var_ = v; }
  const Rational& operator[](int k) const { return c_[k]; }
  Rational& operator[](int k) { return c_[k]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  // Index of the first nonzero coefficient, or order()+1 if none.
  int valuation() const;
  TruncSeries truncated(int order) const;
  TruncSeries derivative() const;
  // Divide by t^k; requires the first k coefficients to vanish.
  TruncSeries shift_down(int k) const;
  TruncSeries shift_up(int k) const;
  double eval(double t) const;
  std::vector<double> to_doubles() const;

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(const Rational& s);

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<Rational> c_;
  SeriesVar var_;
};

TruncSeries operator+(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(TruncSeries a, const Rational& s);
TruncSeries operator*(const Rational& s, TruncSeries a);
// Requires b[0] != 0.
TruncSeries operator/(const TruncSeries& a, const TruncSeries& b);

// f(g(t)); requires g[0] == 0.
TruncSeries compose(const TruncSeries& f, const TruncSeries& g);
// Compositional inverse; requires f[0] == 0 and f[1] != 0.
TruncSeries revert(const TruncSeries& f);
// Square root of a series whose leading term is a perfect rational square at
// an even power t^(2m); the result starts at t^m and has order N - m.
TruncSeries sqrt(const TruncSeries& f);

// Isochronous completion. Given the even coefficients a2, a4, ..., a2K of
// g(x) = x + sum a_n x^n, returns a3, a5, ..., a(2K+1) making the truncated
// potential isochronous to the matched order.
std::vector<Rational> odd_from_even(const std::vector<Rational>& even);

// g(x) = x + sum a_n x^n assembled from interleaved even and odd coefficients
// (a2, a3, ...), returned as the potential G(x) = int g.
TruncSeries potential_from_g_coeffs(const std::vector<Rational>& a, int order);

// Potential G(x) determined by the coefficients b0..bK of f(G) = d/dx[G/g^2],
// i.e. 2G/g - x = sum_{j>=1} (b_{j-1}/j) G^j.
TruncSeries g_from_f(const std::vector<Rational>& b, int order);

struct FExtraction {
  std::vector<Rational> b;  // b0, b1, ...
  bool consistent = true;   // false when 2G/g - x is not a series in G
};
// Inverse of g_from_f. Recovers the b_j determined by G through its order.
FExtraction f_from_g(const TruncSeries& G);

// Solves 2G P' - P = F term by term: p0 = -f0, pk = fk/(2k - 1).
TruncSeries p_from_f(const TruncSeries& F);
// 2G P' - P.
TruncSeries f_from_p(const TruncSeries& P);

struct UrabeResult {
  TruncSeries h;                  // in X = sqrt(2G), h(0) = 0
  std::vector<Rational> even;     // coefficients of X^2, X^4, ...
  double even_norm = 0.0;         // max |even coefficient|
  bool odd = true;                // every even coefficient exactly zero
};
// h(X) with g = X/(1 + h(X)) for a potential series G(x) of order N.
UrabeResult urabe_h(const TruncSeries& G);

}  // namespace isochrone
