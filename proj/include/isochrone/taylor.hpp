#pragma once

#include <vector>

namespace isochrone {

// Truncated Taylor polynomial c0 + c1 t + ... + cn t^n in a local variable t.
// Binary operations truncate to the smaller order of the two operands.
class Taylor {
 public:
  Taylor() : c_(1, 0.0) {}
  Taylor(int order, double constant);
  explicit Taylor(std::vector<double> coeffs);

  // x0 + t, the independent variable expanded at x0.
  static Taylor variable(int order, double x0);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  double value() const { return c_[0]; }
  const std::vector<double>& coeffs() const { return c_; }

  // k-th derivative with respect to t at t = 0.
  double derivative(int k) const;
  Taylor truncated(int order) const;
  // d/dt; the result has order one less.
  Taylor diff() const;
  double eval(double t) const;

  Taylor operator-() const;
  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(const Taylor& o);
  Taylor& operator/=(const Taylor& o);
  Taylor& operator+=(double s);
  Taylor& operator-=(double s);
  Taylor& operator*=(double s);
  Taylor& operator/=(double s);

 private:
  std::vector<double> c_;
};

Taylor operator+(Taylor a, const Taylor& b);
Taylor operator-(Taylor a, const Taylor& b);
Taylor operator*(const Taylor& a, const Taylor& b);
Taylor operator/(const Taylor& a, const Taylor& b);
Taylor operator+(Taylor a, double s);
Taylor operator+(double s, Taylor a);
Taylor operator-(Taylor a, double s);
Taylor operator-(double s, const Taylor& a);
Taylor operator*(Taylor a, double s);
Taylor operator*(double s, Taylor a);
Taylor operator/(Taylor a, double s);
Taylor operator/(double s, const Taylor& a);

Taylor sqrt(const Taylor& a);
Taylor exp(const Taylor& a);
Taylor log(const Taylor& a);
Taylor pow(const Taylor& a, double r);

// outer(inner(t)) where outer is expanded around inner's constant term.
Taylor compose(const Taylor& outer, const Taylor& inner);

// Local inverse: returns s(u) with s(0) = 0 and f(s(u)) = f[0] + u.
// Requires f[1] != 0.
Taylor revert(const Taylor& f);

}  // namespace isochrone
