#include "isochrone/rational_series.hpp"

#include <algorithm>
#include <cctype>

#include "isochrone/errors.hpp"

namespace isochrone {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto parse_int = [&](const std::string& t) -> cpp_int {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) throw ParseError("malformed rational '" + text + "'");
    for (size_t k = i; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k])))
        throw ParseError("malformed rational '" + text + "'");
    cpp_int v(t.substr(i));
    return t[0] == '-' ? cpp_int(-v) : v;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    cpp_int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    const cpp_int ex = parse_int(s.substr(e + 1));
    if (ex > 4000 || ex < -4000) throw ParseError("exponent out of range in '" + text + "'");
    const Rational mantissa = parse_rational(s.substr(0, e));
    const Rational p10 = Rational(boost::multiprecision::pow(cpp_int(10), abs(ex).convert_to<unsigned>()));
    return ex < 0 ? Rational(mantissa / p10) : Rational(mantissa * p10);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    // Finite decimals are exact rationals.
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) frac = "0";
    if (frac[0] == '-' || frac[0] == '+') throw ParseError("malformed rational '" + text + "'");
    cpp_int scale = 1;
    for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const bool neg = whole[0] == '-';
    cpp_int mag = parse_int(neg ? whole.substr(1) : whole) * scale + parse_int(frac);
    return Rational(neg ? cpp_int(-mag) : mag, scale);
  }
  return Rational(parse_int(s));
}

std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

const char* to_string(SeriesVar v) {
  switch (v) {
    case SeriesVar::x: return "x";
    case SeriesVar::G: return "G";
    case SeriesVar::X: return "X";
  }
  return "x";
}

TruncSeries::TruncSeries(int order, SeriesVar var) : c_(std::max(order, 0) + 1), var_(var) {}

TruncSeries::TruncSeries(std::vector<Rational> coeffs, SeriesVar var)
    : c_(std::move(coeffs)), var_(var) {
  if (c_.empty()) c_.resize(1);
}

TruncSeries TruncSeries::constant(const Rational& c, int order, SeriesVar var) {
  TruncSeries s(order, var);
  s.c_[0] = c;
  return s;
}

TruncSeries TruncSeries::monomial(int k, int order, SeriesVar var) {
  TruncSeries s(order, var);
  if (k <= order) s.c_[k] = 1;
  return s;
}

int TruncSeries::valuation() const {
  for (int k = 0; k <= order(); ++k)
    if (c_[k] != 0) return k;
  return order() + 1;
}

TruncSeries TruncSeries::truncated(int n) const {
  std::vector<Rational> c(c_.begin(), c_.begin() + std::min<int>(n + 1, c_.size()));
  return TruncSeries(std::move(c), var_);
}

TruncSeries TruncSeries::derivative() const {
  if (order() == 0) return TruncSeries(0, var_);
  TruncSeries d(order() - 1, var_);
  for (int k = 1; k <= order(); ++k) d.c_[k - 1] = c_[k] * k;
  return d;
}

TruncSeries TruncSeries::shift_down(int k) const {
  for (int i = 0; i < k; ++i)
    if (c_[i] != 0) throw LeadingCoefficientError("shift_down would drop a nonzero coefficient");
  return TruncSeries(std::vector<Rational>(c_.begin() + k, c_.end()), var_);
}

TruncSeries TruncSeries::shift_up(int k) const {
  std::vector<Rational> c(k);
  c.insert(c.end(), c_.begin(), c_.end());
  return TruncSeries(std::move(c), var_);
}

double TruncSeries::eval(double t) const {
  double r = 0.0;
  for (int k = order(); k >= 0; --k) r = r * t + to_double(c_[k]);
  return r;
}

std::vector<double> TruncSeries::to_doubles() const {
  std::vector<double> d;
  d.reserve(c_.size());
  for (const auto& c : c_) d.push_back(to_double(c));
  return d;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
TruncSeries operator*(TruncSeries a, const Rational& s) { return a *= s; }
TruncSeries operator*(const Rational& s, TruncSeries a) { return a *= s; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  const int n = std::min(a.order(), b.order());
  TruncSeries r(n, a.var());
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
  if (b[0] == 0) throw LeadingCoefficientError("series division needs a nonzero constant term");
  const int n = std::min(a.order(), b.order());
  TruncSeries q(n, a.var());
  for (int k = 0; k <= n; ++k) {
    Rational s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

TruncSeries compose(const TruncSeries& f, const TruncSeries& g) {
  if (g[0] != 0) throw LeadingCoefficientError("compose needs an inner series with zero constant term");
  const int n = g.order();
  TruncSeries r = TruncSeries::constant(f[f.order()], n, g.var());
  for (int k = f.order() - 1; k >= 0; --k) {
    r = r * g;
    r[0] += f[k];
  }
  return r;
}

TruncSeries revert(const TruncSeries& f) {
  if (f[0] != 0 || f.order() < 1 || f[1] == 0)
    throw LeadingCoefficientError("revert needs c0 = 0 and c1 != 0");
  const int n = f.order();
  TruncSeries s(n, f.var());
  s[1] = 1 / f[1];
  for (int k = 2; k <= n; ++k) {
    const TruncSeries fs = compose(f, s.truncated(k));
    s[k] = -fs[k] / f[1];
  }
  return s;
}

namespace {

bool rational_sqrt(const Rational& r, Rational& out) {
  if (r < 0) return false;
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  const cpp_int sn = boost::multiprecision::sqrt(num);
  const cpp_int sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  out = Rational(sn, sd);
  return true;
}

}  // namespace

TruncSeries sqrt(const TruncSeries& f) {
  const int v = f.valuation();
  if (v > f.order()) throw LeadingCoefficientError("sqrt of the zero series");
  if (v % 2 != 0) throw LeadingCoefficientError("sqrt needs an even leading power");
  Rational lead;
  if (!rational_sqrt(f[v], lead))
    throw LeadingCoefficientError("sqrt leading coefficient " + format_rational(f[v]) +
                                  " is not a rational square");
  TruncSeries s = f.shift_down(v);
  s *= Rational(1) / f[v];
  const int n = s.order();
  TruncSeries r(n, f.var());
  r[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational acc = s[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / 2;
  }
  r *= lead;
  return r.shift_up(v / 2);
}

namespace {

// Coefficient of x^m in x*g - 2G + g*Ft(G), where Ft(G) = sum_{j>=1} e[j] G^j.
Rational odd_condition_residual(const std::vector<Rational>& c, const std::vector<Rational>& e, int m) {
  TruncSeries G(m);
  for (int k = 0; k <= m && k < static_cast<int>(c.size()); ++k) G[k] = c[k];
  const TruncSeries g = G.derivative();
  TruncSeries F(static_cast<int>(e.size()) - 1, SeriesVar::G);
  for (size_t j = 0; j < e.size(); ++j) F[j] = e[j];
  const TruncSeries FG = compose(F, G);
  Rational r = Rational(m - 2) * G[m];
  for (int i = 0; i <= m - 1; ++i) r += g[i] * FG[m - i];
  return r;
}

}  // namespace

std::vector<Rational> odd_from_even(const std::vector<Rational>& even) {
  const int K = static_cast<int>(even.size());
  const int M = 2 * K + 2;
  std::vector<Rational> c(M + 1), e(K + 1);
  c[2] = Rational(1, 2);
  std::vector<Rational> odd;
  for (int m = 3; m <= M; ++m) {
    if (m % 2 == 1) {
      const int j = (m - 1) / 2;
      c[m] = even[j - 1] / m;
      const Rational r = odd_condition_residual(c, e, m);
      e[j] = -r * Rational(cpp_int(1) << j);
    } else {
      const Rational r = odd_condition_residual(c, e, m);
      c[m] = -r / (m - 2);
      odd.push_back(c[m] * m);
    }
  }
  return odd;
}

TruncSeries potential_from_g_coeffs(const std::vector<Rational>& a, int order) {
  TruncSeries G(order);
  if (order >= 2) G[2] = Rational(1, 2);
  for (size_t i = 0; i < a.size(); ++i) {
    const int n = static_cast<int>(i) + 2;  // a[i] multiplies x^n in g
    if (n + 1 <= order) G[n + 1] = a[i] / (n + 1);
  }
  return G;
}

TruncSeries g_from_f(const std::vector<Rational>& b, int order) {
  std::vector<Rational> e(b.size() + 1);
  for (size_t j = 1; j <= b.size(); ++j) e[j] = b[j - 1] / static_cast<int>(j);
  std::vector<Rational> c(order + 1);
  if (order >= 2) c[2] = Rational(1, 2);
  for (int m = 3; m <= order; ++m) {
    const Rational r = odd_condition_residual(c, e, m);
    c[m] = -r / (m - 2);
  }
  return TruncSeries(c, SeriesVar::x);
}

FExtraction f_from_g(const TruncSeries& G) {
  if (G.order() < 4 || G[0] != 0 || G[1] != 0 || G[2] != Rational(1, 2))
    throw SeriesInversionError("f_from_g needs G = x^2/2 + O(x^3) through order >= 4");
  const TruncSeries two_g_over_x = (G * Rational(2)).shift_down(1);
  const TruncSeries g_over_x = G.derivative().shift_down(1);
  TruncSeries rest = two_g_over_x / g_over_x;
  rest[1] -= 1;

  FExtraction out;
  TruncSeries Gp = TruncSeries::constant(1, rest.order());
  for (int j = 1; 2 * j <= rest.order(); ++j) {
    Gp = Gp * G.truncated(rest.order());
    if (rest[2 * j - 1] != 0) out.consistent = false;
    const Rational ej = rest[2 * j] * Rational(cpp_int(1) << j);
    rest -= Gp * ej;
    out.b.push_back(ej * j);
  }
  for (int k = 0; k <= rest.order(); ++k)
    if (rest[k] != 0) out.consistent = false;
  return out;
}

TruncSeries p_from_f(const TruncSeries& F) {
  TruncSeries P(F.order(), SeriesVar::G);
  P[0] = -F[0];
  for (int k = 1; k <= F.order(); ++k) P[k] = F[k] / (2 * k - 1);
  return P;
}

TruncSeries f_from_p(const TruncSeries& P) {
  TruncSeries F(P.order(), SeriesVar::G);
  for (int k = 0; k <= P.order(); ++k) F[k] = P[k] * (2 * k - 1);
  return F;
}

UrabeResult urabe_h(const TruncSeries& G) {
  if (G.order() < 3 || G[0] != 0 || G[1] != 0)
    throw SeriesInversionError("urabe_h needs a series G = O(x^2) of order >= 3");
  if (G[2] != Rational(1, 2))
    throw SeriesInversionError("urabe_h needs g'(0) = 1, got " + format_rational(G[2] * 2));
  const int N = G.order();
  const TruncSeries u = (G * Rational(2)).shift_down(2);  // 2G/x^2
  const TruncSeries root = sqrt(u);                       // X/x
  const TruncSeries g_over_x = G.derivative().shift_down(1);
  TruncSeries h_x = root / g_over_x;
  h_x[0] -= 1;
  const TruncSeries X = root.shift_up(1);
  const TruncSeries x_of_X = revert(X);

  UrabeResult out;
  out.h = compose(h_x, x_of_X.truncated(N - 2));
  out.h.set_var(SeriesVar::X);
  for (int k = 2; k <= out.h.order(); k += 2) {
    out.even.push_back(out.h[k]);
    const double mag = std::abs(to_double(out.h[k]));
    out.even_norm = std::max(out.even_norm, mag);
    if (out.h[k] != 0) out.odd = false;
  }
  return out;
}

}  // namespace isochrone
