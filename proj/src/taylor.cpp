#include "isochrone/taylor.hpp"

#include <algorithm>
#include <cmath>

#include "isochrone/errors.hpp"

namespace isochrone {

Taylor::Taylor(int order, double constant) : c_(order + 1, 0.0) { c_[0] = constant; }

Taylor::Taylor(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
}

Taylor Taylor::variable(int order, double x0) {
  Taylor t(order, x0);
  if (order >= 1) t.c_[1] = 1.0;
  return t;
}

double Taylor::derivative(int k) const {
  if (k > order()) return 0.0;
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return c_[k] * f;
}

Taylor Taylor::truncated(int n) const {
  Taylor r(std::vector<double>(c_.begin(), c_.begin() + std::min<int>(n + 1, c_.size())));
  return r;
}

Taylor Taylor::diff() const {
  if (order() == 0) return Taylor(0, 0.0);
  std::vector<double> d(order());
  for (int k = 1; k <= order(); ++k) d[k - 1] = k * c_[k];
  return Taylor(std::move(d));
}

double Taylor::eval(double t) const {
  double r = 0.0;
  for (int k = order(); k >= 0; --k) r = r * t + c_[k];
  return r;
}

Taylor Taylor::operator-() const {
  Taylor r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Taylor& Taylor::operator*=(const Taylor& o) { return *this = *this * o; }
Taylor& Taylor::operator/=(const Taylor& o) { return *this = *this / o; }
Taylor& Taylor::operator+=(double s) { c_[0] += s; return *this; }
Taylor& Taylor::operator-=(double s) { c_[0] -= s; return *this; }

Taylor& Taylor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Taylor& Taylor::operator/=(double s) {
  for (double& v : c_) v /= s;
  return *this;
}

Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }

Taylor operator*(const Taylor& a, const Taylor& b) {
  const int n = std::min(a.order(), b.order());
  Taylor r(n, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
    r[k] = s;
  }
  return r;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
  const int n = std::min(a.order(), b.order());
  if (b[0] == 0.0) throw SingularDenominatorError("Taylor division by a series vanishing at t = 0");
  Taylor q(n, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

Taylor operator+(Taylor a, double s) { return a += s; }
Taylor operator+(double s, Taylor a) { return a += s; }
Taylor operator-(Taylor a, double s) { return a -= s; }
Taylor operator-(double s, const Taylor& a) { return -a + s; }
Taylor operator*(Taylor a, double s) { return a *= s; }
Taylor operator*(double s, Taylor a) { return a *= s; }
Taylor operator/(Taylor a, double s) { return a /= s; }
Taylor operator/(double s, const Taylor& a) { return Taylor(a.order(), s) / a; }

Taylor sqrt(const Taylor& a) {
  if (!(a[0] > 0.0)) throw DomainError("Taylor sqrt needs a positive constant term");
  const int n = a.order();
  Taylor r(n, std::sqrt(a[0]));
  for (int k = 1; k <= n; ++k) {
    double s = a[k];
    for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (2.0 * r[0]);
  }
  return r;
}

Taylor exp(const Taylor& a) {
  const int n = a.order();
  Taylor r(n, std::exp(a[0]));
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a[j] * r[k - j];
    r[k] = s / k;
  }
  return r;
}

Taylor log(const Taylor& a) {
  if (!(a[0] > 0.0)) throw DomainError("Taylor log needs a positive constant term");
  const int n = a.order();
  Taylor r(n, std::log(a[0]));
  for (int k = 1; k <= n; ++k) {
    double s = k * a[k];
    for (int j = 1; j < k; ++j) s -= j * r[j] * a[k - j];
    r[k] = s / (k * a[0]);
  }
  return r;
}

Taylor pow(const Taylor& a, double p) {
  if (!(a[0] > 0.0)) throw DomainError("Taylor pow needs a positive constant term");
  const int n = a.order();
  Taylor r(n, std::pow(a[0], p));
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a[j] * r[k - j];
    r[k] = s / (k * a[0]);
  }
  return r;
}

Taylor compose(const Taylor& outer, const Taylor& inner) {
  Taylor s = inner;
  s[0] = 0.0;
  const int n = inner.order();
  Taylor r(n, outer[outer.order()]);
  for (int k = outer.order() - 1; k >= 0; --k) {
    r = r * s;
    r[0] += outer[k];
  }
  return r;
}

Taylor revert(const Taylor& f) {
  const int n = f.order();
  if (n < 1 || f[1] == 0.0) throw SingularDenominatorError("revert needs a nonzero linear term");
  Taylor s(n, 0.0);
  s[1] = 1.0 / f[1];
  Taylor g = f;
  g[0] = 0.0;
  for (int k = 2; k <= n; ++k) {
    // Coefficient of u^k in g(s(u)) with s known through u^(k-1).
    const Taylor gs = compose(g, s.truncated(k));
    s[k] = -gs[k] / f[1];
  }
  return s;
}

}  // namespace isochrone
