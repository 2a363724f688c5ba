#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ppd {

/// Truncated Taylor series c_0 + c_1 h + ... + c_n h^n about a base point.
///
/// Evaluating a formula on `Series::variable(x, n)` yields the first n
/// derivatives of that formula at x (c_k = f^(k)(x)/k!). Used for exact
/// derivatives of analytic profiles, complete-monotonicity checks and the
/// closed-form Gaussian transforms.
class Series {
 public:
  static constexpr int kMaxOrder = 16;

  Series() = default;
  explicit Series(int order, double c0 = 0.0) : order_(order) {
    if (order < 0 || order > kMaxOrder) {
      throw std::out_of_range("Series order must lie in [0, 16]");
    }
    c_.fill(0.0);
    c_[0] = c0;
  }

  static Series constant(double value, int order) { return Series(order, value); }
  static Series variable(double at, int order) {
    Series s(order, at);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  /// k-th derivative at the base point.
  double derivative(int k) const {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return c_[static_cast<std::size_t>(k)] * f;
  }

  Series& operator+=(const Series& o) {
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Series& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Series& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  Series& operator*=(double v) {
    for (int k = 0; k <= order_; ++k) c_[k] *= v;
    return *this;
  }
  Series& operator/=(double v) {
    for (int k = 0; k <= order_; ++k) c_[k] /= v;
    return *this;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series& operator/=(const Series& o) { return *this = *this / o; }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator+(Series a, double b) { return a += b; }
  friend Series operator+(double a, Series b) { return b += a; }
  friend Series operator-(Series a, double b) { return a -= b; }
  friend Series operator-(double a, const Series& b) { return Series(b.order_, a) - b; }
  friend Series operator*(Series a, double b) { return a *= b; }
  friend Series operator*(double a, Series b) { return b *= a; }
  friend Series operator/(Series a, double b) { return a /= b; }
  friend Series operator-(Series a) {
    for (int k = 0; k <= a.order_; ++k) a.c_[k] = -a.c_[k];
    return a;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Series operator/(const Series& a, const Series& b) {
    Series q(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }
  friend Series operator/(double a, const Series& b) { return Series(b.order_, a) / b; }

  friend Series exp(const Series& a) {
    Series e(a.order_);
    e.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * e.c_[k - j];
      e.c_[k] = s / k;
    }
    return e;
  }

  friend Series log(const Series& a) {
    Series l(a.order_);
    l.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j < k; ++j) s += j * l.c_[j] * a.c_[k - j];
      l.c_[k] = (a.c_[k] - s / k) / a.c_[0];
    }
    return l;
  }

  // a^p for a non-vanishing base value (J.C.P. Miller recurrence).
  friend Series pow(const Series& a, double p) {
    Series r(a.order_);
    r.c_[0] = std::pow(a.c_[0], p);
    for (int k = 1; k <= a.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / (k * a.c_[0]);
    }
    return r;
  }

  friend Series sqrt(const Series& a) { return pow(a, 0.5); }

 private:
  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

}  // namespace ppd
