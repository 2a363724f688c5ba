#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ppd::quad {

namespace detail {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <typename V>
double magnitude(const V& v) {
  return v.magnitude();
}

template <typename V>
struct Panel {
  double a, b;
  V value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One 21-point Kronrod / 10-point Gauss evaluation on [a, b].
template <typename V, typename F>
Panel<V> kronrod_panel(F& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  V fc = f(c);
  V k = fc * wk[0];
  V g = V(0);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    V s = f(c - h * xk[i]) + f(c + h * xk[i]);
    k += s * wk[i];
    if (i % 2 == 1) g += s * wg[(i - 1) / 2];
  }
  return {a, b, k * h, magnitude(k * h - g * h)};
}

}  // namespace detail

/// Fixed 21-point Kronrod rule applied on `panels` equal sub-intervals.
/// Exact for polynomials of degree 31 per panel.
template <typename V, typename F>
V fixed_panels(F&& f, double a, double b, int panels) {
  const auto& xk = detail::Kronrod::abscissa();
  const auto& wk = detail::Kronrod::weights();
  V total = V(0);
  const double step = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * step;
    const double hi = p + 1 == panels ? b : lo + step;
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    V s = f(c) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) s += (f(c - h * xk[i]) + f(c + h * xk[i])) * wk[i];
    total += s * h;
  }
  return total;
}

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_panels = 4000;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of f over [a, b].
///
/// `breaks` are optional interior points where f is not smooth; the initial
/// partition is aligned to them. Works for double, std::complex<double> and
/// vector types with a magnitude() member.
template <typename V, typename F>
V integrate(F&& f, double a, double b, const Options& opt = {}, const std::vector<double>& breaks = {},
            double* error_out = nullptr) {
  if (!(b > a)) {
    if (error_out) *error_out = 0.0;
    return V(0);
  }
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel<V>> heap;
  V total = V(0);
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto p = detail::kronrod_panel<V>(f, cuts[i], cuts[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int count = static_cast<int>(heap.size());
  while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total)) && count < opt.max_panels) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    auto left = detail::kronrod_panel<V>(f, worst.a, mid);
    auto right = detail::kronrod_panel<V>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  if (error_out) *error_out = err;
  return total;
}

/// Double-exponential quadrature for integrands with endpoint singularities.
/// Non-finite samples (an integrable singularity hit exactly) count as 0.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-11);

/// tanh_sinh over consecutive sub-intervals delimited by sorted `cuts`.
double tanh_sinh_split(const std::function<double(double)>& f, std::vector<double> cuts, double tol = 1e-11);

struct Minimum {
  double x;
  double value;
};

/// Golden-section minimisation of a unimodal function on [a, b].
template <typename F>
Minimum golden_section(F&& f, double a, double b, double xtol = 1e-13, int max_iter = 200) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > xtol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
}

/// Grid scan followed by golden-section refinement around the smallest sample.
template <typename F>
Minimum grid_minimum(F&& f, double a, double b, int points) {
  double best_x = a;
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  const double h = (b - a) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = i + 1 == points ? b : a + i * h;
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
      best_i = i;
    }
  }
  const double lo = std::max(a, a + (best_i - 1) * h);
  const double hi = std::min(b, a + (best_i + 1) * h);
  Minimum m = golden_section(f, lo, hi);
  return m.value < best ? m : Minimum{best_x, best};
}

/// Bisection for a sign change of f on [a, b].
template <typename F>
double bisect(F&& f, double a, double b, double xtol = 1e-15, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw std::domain_error("bisect: no sign change on the bracket");
  for (int it = 0; it < max_iter && (b - a) > xtol * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ppd::quad
