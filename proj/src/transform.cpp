#include "ppd/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "ppd/quadrature.hpp"

namespace ppd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);
// Below this many radians per piece, boundary-term sums cancel badly.
constexpr double kClosedFormCutoff = 8.0;
constexpr int kMaxCuts = 200000;

double radial_constant(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

void add_oscillation_cuts(std::vector<double>& cuts, double a, double b, double freq) {
  if (!(freq > 0.0)) return;
  const double n = std::ceil((b - a) * 2.0 * freq);
  const int count = static_cast<int>(std::min(n, static_cast<double>(kMaxCuts)));
  for (int i = 1; i < count; ++i) cuts.push_back(a + (b - a) * i / count);
}

// c_d int_a^b f0(r) K(2 pi r xi) r^{d-1} dr for real xi.
double kernel_integral_real(const RadialFunction& f, double a, double b, double xi) {
  const int d = f.dim();
  const double lambda = 0.5 * d - 1.0;
  auto integrand = [&](double r) {
    const double v = f(r);
    if (v == 0.0) return 0.0;
    return v * bessel_kernel(lambda, 2.0 * kPi * r * xi) * std::pow(r, d - 1);
  };
  std::vector<double> cuts;
  for (double x : f.breakpoints())
    if (x > a && x < b) cuts.push_back(x);
  add_oscillation_cuts(cuts, a, b, xi);
  double value;
  if (f.bounded()) {
    value = quad::integrate<double>(integrand, a, b, {}, cuts);
  } else {
    cuts.push_back(a);
    cuts.push_back(b);
    value = quad::tanh_sinh_split(integrand, cuts);
  }
  return radial_constant(d) * value;
}

// Same integral at complex z, or its z-derivative.
cplx kernel_integral(const RadialFunction& f, double a, double b, cplx z, bool deriv) {
  if (z.imag() == 0.0 && !deriv) return kernel_integral_real(f, a, b, z.real());
  const int d = f.dim();
  const double lambda = 0.5 * d - 1.0;
  auto integrand = [&](double r) -> cplx {
    const double v = f(r);
    if (v == 0.0) return 0.0;
    const cplx s = 2.0 * kPi * r * z;
    if (!deriv) return v * bessel_kernel(lambda, s) * std::pow(r, d - 1);
    return v * bessel_kernel_derivative(lambda, s) * 2.0 * kPi * std::pow(r, d);
  };
  std::vector<double> cuts;
  for (double x : f.breakpoints())
    if (x > a && x < b) cuts.push_back(x);
  add_oscillation_cuts(cuts, a, b, std::abs(z));
  cplx value;
  if (f.bounded()) {
    value = quad::integrate<cplx>(integrand, a, b, {}, cuts);
  } else {
    cuts.push_back(a);
    cuts.push_back(b);
    const double re = quad::tanh_sinh_split([&](double r) { return integrand(r).real(); }, cuts);
    const double im = quad::tanh_sinh_split([&](double r) { return integrand(r).imag(); }, cuts);
    value = cplx(re, im);
  }
  return radial_constant(d) * value;
}

struct LinePiece {
  double a;
  double b;
  Poly q;
};

// Pieces of r^rpow f0(|r|) on [-R, R].
std::vector<LinePiece> line_pieces(const PiecewisePoly& pp, int rpow) {
  const Poly weight = Poly::monomial(rpow);
  std::vector<LinePiece> out;
  for (std::size_t i = 0; i < pp.pieces.size(); ++i) {
    if (pp.pieces[i].is_zero()) continue;
    out.push_back({pp.breaks[i], pp.breaks[i + 1], weight * pp.pieces[i]});
    out.push_back({-pp.breaks[i + 1], -pp.breaks[i], weight * pp.pieces[i].reflect()});
  }
  return out;
}

// exp(i w r) sum_k (-1)^k q^(k)(r) / (i w)^(k+1): antiderivative of q(r) exp(i w r).
cplx boundary_term(const Poly& q, double r, cplx w) {
  const cplx iw = kI * w;
  cplx sum = 0.0;
  cplx denom = iw;
  Poly p = q;
  double sign = 1.0;
  while (!p.is_zero()) {
    sum += sign * p(r) / denom;
    p = p.derivative();
    denom *= iw;
    sign = -sign;
  }
  return std::exp(iw * r) * sum;
}

// int over the pieces of q(r) exp(i w r) dr.
cplx line_fourier(const std::vector<LinePiece>& pieces, cplx w) {
  const double aw = std::abs(w);
  cplx total = 0.0;
  for (const auto& p : pieces) {
    const double len = p.b - p.a;
    if (aw * len >= std::max(kClosedFormCutoff, 2.0 * p.q.degree())) {
      total += boundary_term(p.q, p.b, w) - boundary_term(p.q, p.a, w);
    } else {
      const int panels = static_cast<int>(std::ceil(aw * len / 2.0)) + 1;
      total += quad::fixed_panels<cplx>([&](double r) { return p.q(r) * std::exp(kI * w * r); }, p.a, p.b, panels);
    }
  }
  return total;
}

cplx piecewise_transform(const RadialFunction& f, const PiecewisePoly& pp, cplx z, bool deriv) {
  const int d = f.dim();
  const cplx w = 2.0 * kPi * z;
  if ((d != 1 && d != 3) || std::abs(w) * pp.radius() < kClosedFormCutoff)
    return kernel_integral(f, 0.0, pp.radius(), z, deriv);
  if (d == 1) {
    if (!deriv) return line_fourier(line_pieces(pp, 0), w);
    return 2.0 * kPi * kI * line_fourier(line_pieces(pp, 1), w);
  }
  // d = 3: f^ = 4 pi / w int_0^R r f0 sin(w r) dr = -2 pi i E1 / w
  const cplx e1 = line_fourier(line_pieces(pp, 1), w);
  if (!deriv) return -2.0 * kPi * kI * e1 / w;
  const cplx e2 = line_fourier(line_pieces(pp, 2), w);
  return 2.0 * kPi * (-2.0 * kPi * kI) * (kI * e2 / w - e1 / (w * w));
}

cplx gaussian_poly_value(const GaussianPoly& g, cplx z, bool deriv) {
  const cplx p = g.poly(z);
  const cplx e = std::exp(-g.rate * z * z);
  if (!deriv) return p * e;
  return (g.poly.derivative()(z) - 2.0 * g.rate * z * p) * e;
}

double stretched_transform(const RadialFunction& f, const Decay& decay, double xi) {
  const int d = f.dim();
  const double h1 = std::max(1.0, decay.horizon(1e-3));
  const double mass = quad::integrate<double>(
      [&](double r) { return std::abs(f(r)) * std::pow(r, d - 1); }, 0.0, h1, {}, f.breakpoints());
  // the tail beyond H carries at most 1e-16 of the absolute mass
  double H = h1;
  while (decay.tail_mass(H, d) > 1e-16 * mass) H *= 1.25;
  return kernel_integral_real(f, 0.0, H, xi);
}

boost::math::quadrature::ooura_fourier_cos<double>& ooura_cos() {
  thread_local boost::math::quadrature::ooura_fourier_cos<double> q(1e-12);
  return q;
}

boost::math::quadrature::ooura_fourier_sin<double>& ooura_sin() {
  thread_local boost::math::quadrature::ooura_fourier_sin<double> q(1e-12);
  return q;
}

double ooura_transform(const RadialFunction& f, double xi) {
  const int d = f.dim();
  const double w = 2.0 * kPi * xi;
  if (d == 1) return 2.0 * ooura_cos().integrate([&](double r) { return f(r); }, w).first;
  if (d == 3) return 4.0 * kPi / w * ooura_sin().integrate([&](double r) { return r * f(r); }, w).first;
  throw UnsupportedOperation("oscillatory tail integration is available in dimensions 1 and 3 only");
}

double algebraic_transform(const RadialFunction& f, double xi) {
  const int d = f.dim();
  if (xi > 0.0) return ooura_transform(f, xi);
  boost::math::quadrature::exp_sinh<double> es;
  return radial_constant(d) * es.integrate([&](double r) { return f(r) * std::pow(r, d - 1); }, 0.0,
                                           std::numeric_limits<double>::infinity(), 1e-12);
}

cplx transform(const RadialFunction& f, cplx z, bool deriv) {
  const int d = f.dim();
  const bool real_value = z.imag() == 0.0 && !deriv;
  return std::visit(
      [&](const auto& rep) -> cplx {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PiecewisePoly>) {
          return piecewise_transform(f, rep, z, deriv);
        } else if constexpr (std::is_same_v<T, GaussianPoly>) {
          return gaussian_poly_value(gaussian_poly_transform(rep, d), z, deriv);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          cplx s = 0.0;
          const int p = deriv ? d + 1 : d;
          for (const auto& n : rep.measure.nodes()) s += n.mass * std::pow(n.t, p) * transform(rep.base, n.t * z, deriv);
          return s;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          const double lam = rep.factor;
          const int p = deriv ? d + 1 : d;
          return std::pow(lam, -p) * transform(rep.inner, z / lam, deriv);
        } else if constexpr (std::is_same_v<T, Convolution>) {
          const cplx a = transform(rep.left, z, false);
          const cplx b = transform(rep.right, z, false);
          if (!deriv) return a * b;
          return transform(rep.left, z, true) * b + a * transform(rep.right, z, true);
        } else {
          if constexpr (std::is_same_v<T, Analytic>) {
            if (rep.fourier && real_value) return rep.fourier(z.real(), d);
          }
          const double R = f.support_radius();
          if (std::isfinite(R)) return kernel_integral(f, 0.0, R, z, deriv);
          if (!real_value) throw UnsupportedOperation("'" + f.label() + "' has no entire transform extension");
          const Decay decay = f.decay();
          if (!decay.integrable(d))
            throw UnsupportedOperation("'" + f.label() + "' is not integrable in dimension " + std::to_string(d));
          if (decay.kind == Decay::Kind::Stretched) return stretched_transform(f, decay, z.real());
          return algebraic_transform(f, z.real());
        }
      },
      f.node().rep);
}

}  // namespace

double fourier_radial(const RadialFunction& f, double xi) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw std::domain_error("fourier_radial needs a finite xi >= 0");
  if (!f.integrable())
    throw UnsupportedOperation("'" + f.label() + "' is not integrable in dimension " + std::to_string(f.dim()));
  return transform(f, cplx(xi, 0.0), false).real();
}

namespace {

void check_extension_domain(const RadialFunction& f, cplx z) {
  if (!std::isfinite(f.support_radius()))
    throw UnsupportedOperation("analytic extension needs a compactly supported function, got '" + f.label() + "'");
  if (!(std::abs(z) <= 30.0)) throw std::range_error("analytic extension is evaluated for |z| <= 30");
}

}  // namespace

cplx analytic_extension(const RadialFunction& f, cplx z) {
  check_extension_domain(f, z);
  return transform(f, z, false);
}

cplx analytic_extension_derivative(const RadialFunction& f, cplx z) {
  check_extension_domain(f, z);
  return transform(f, z, true);
}

GaussianPoly gaussian_poly_transform(const GaussianPoly& g, int dim) {
  if (dim < 1) throw std::domain_error("dimension must be a positive integer");
  const double a = g.rate;
  const double half = 0.5 * dim;
  const int K = g.poly.degree() / 2;
  // (-d/da)^k [a^{-d/2} exp(-c/a)] = sum_j table[k][j] c^j a^{-d/2-k-j} exp(-c/a), c = pi^2 xi^2
  std::vector<std::vector<double>> table(K + 1);
  table[0] = {1.0};
  for (int k = 0; k < K; ++k) {
    table[k + 1].assign(k + 2, 0.0);
    for (int j = 0; j <= k; ++j) {
      table[k + 1][j] += (half + k + j) * table[k][j];
      table[k + 1][j + 1] -= table[k][j];
    }
  }
  std::vector<double> out(2 * K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    const double c = g.poly.coeff(2 * k);
    if (c == 0.0) continue;
    for (int j = 0; j <= k; ++j)
      out[2 * j] += c * std::pow(kPi, half + 2.0 * j) * table[k][j] * std::pow(a, -half - k - j);
  }
  GaussianPoly t{Poly(out), kPi * kPi / a, std::nullopt};
  if (g.hermite && dim == 1 && a == kPi) t.hermite = hermite_transform(g.hermite->first, g.hermite->second);
  return t;
}

std::pair<double, double> hermite_transform(double a, double b) { return {-a, b}; }

double fourier_radial_improper(const RadialFunction& f, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw std::domain_error("improper transform needs xi > 0");
  return ooura_transform(f, xi);
}

}  // namespace ppd
