// Quadrature evaluation of convolutions that have no closed piecewise form.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppd/quadrature.hpp"
#include "ppd/radial.hpp"

namespace ppd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-11;

// Surface area of the unit sphere in R^n.
double sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

double reach(const RadialFunction& f) {
  const double R = f.support_radius();
  if (std::isfinite(R)) return R;
  const double H = f.decay().horizon(1e-18);
  if (!std::isfinite(H)) throw UnsupportedOperation("convolution factor '" + f.label() + "' has no decay bound");
  return H;
}

double on_line(const RadialFunction& f, const RadialFunction& g, double x) {
  const double Rf = reach(f);
  const double Rg = reach(g);
  const double lo = std::max(-Rf, x - Rg);
  const double hi = std::min(Rf, x + Rg);
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts{lo, hi, 0.0, x};
  for (double b : f.breakpoints()) {
    cuts.push_back(b);
    cuts.push_back(-b);
  }
  for (double b : g.breakpoints()) {
    cuts.push_back(x - b);
    cuts.push_back(x + b);
  }
  std::vector<double> kept;
  for (double c : cuts)
    if (c >= lo && c <= hi) kept.push_back(c);
  return quad::tanh_sinh_split([&](double y) { return f(y) * g(x - y); }, kept, kTol);
}

// d >= 2: integrate over spheres |y| = s, with u = |y - x| as inner variable.
double in_space(const RadialFunction& f, const RadialFunction& g, int d, double rho) {
  const double Rf = reach(f);
  const double Rg = reach(g);
  if (rho == 0.0) {
    auto h = [&](double s) { return f(s) * g(s) * std::pow(s, d - 1); };
    std::vector<double> cuts{0.0, std::min(Rf, Rg)};
    for (double b : f.breakpoints()) cuts.push_back(std::min(b, cuts[1]));
    for (double b : g.breakpoints()) cuts.push_back(std::min(b, cuts[1]));
    return sphere_area(d) * quad::tanh_sinh_split(h, cuts, kTol);
  }
  const double area = sphere_area(d - 1);
  const auto gb = g.breakpoints();
  // polar angle theta between y and x, u^2 = s^2 + rho^2 - 2 s rho cos(theta)
  auto inner = [&](double s) {
    const double two_s_rho = 2.0 * s * rho;
    const double base = s * s + rho * rho;
    std::vector<double> cuts{0.0, kPi};
    for (double b : gb) {
      const double c = (base - b * b) / two_s_rho;
      if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c));
    }
    auto integrand = [&](double t) {
      const double u = std::sqrt(std::max(0.0, base - two_s_rho * std::cos(t)));
      return g(u) * std::pow(std::sin(t), d - 2);
    };
    return area * quad::tanh_sinh_split(integrand, cuts, kTol);
  };
  std::vector<double> cuts{0.0, Rf};
  for (double b : f.breakpoints()) cuts.push_back(b);
  for (double b : gb) {
    for (double c : {rho + b, rho - b, b - rho})
      if (c > 0.0 && c < Rf) cuts.push_back(c);
  }
  if (rho < Rf) cuts.push_back(rho);
  return quad::tanh_sinh_split([&](double s) { return s > 0.0 ? f(s) * std::pow(s, d - 1) * inner(s) : 0.0; }, cuts,
                               kTol);
}

}  // namespace

double convolution_value(const Convolution& c, int dim, double rho) {
  if (dim == 1) return on_line(c.left, c.right, rho);
  return in_space(c.left, c.right, dim, rho);
}

}  // namespace ppd
