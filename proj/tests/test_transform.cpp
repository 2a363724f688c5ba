#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "ppd/errors.hpp"
#include "ppd/radial.hpp"
#include "ppd/transform.hpp"

using namespace ppd;
constexpr double kPi = std::numbers::pi;

namespace {

double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

// Transform on the line by direct quadrature of f(x) cos(2 pi x xi).
double line_transform(const RadialFunction& f, double xi, double R, int panels = 64) {
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = R * i / panels;
    const double b = R * (i + 1) / panels;
    s += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double x) { return f(x) * std::cos(2 * kPi * x * xi); }, a, b);
  }
  return 2.0 * s;
}

double triangle_hat(double xi) {
  if (xi == 0.0) return 4.0;
  const double s = std::sin(2 * kPi * xi) / (kPi * xi);
  return s * s;
}

// Gamma(alpha + 1) / pi^alpha J_{d/2+alpha}(2 pi xi) / xi^{d/2+alpha}
double m_alpha_hat(double alpha, int d, double xi) {
  const double nu = 0.5 * d + alpha;
  return std::tgamma(alpha + 1) / std::pow(kPi, alpha) * boost::math::cyl_bessel_j(nu, 2 * kPi * xi) /
         std::pow(xi, nu);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("gaussian is a fixed point") {
  const auto g = make_gaussian();
  for (double xi = 0.0; xi <= 3.0; xi += 0.125) CHECK(std::abs(fourier_radial(g, xi) - std::exp(-kPi * xi * xi)) < 1e-12);
  for (int d = 2; d <= 5; ++d) {
    const auto gd = make_gaussian(kPi, d);
    for (double xi : {0.0, 0.4, 1.1}) CHECK(std::abs(fourier_radial(gd, xi) - std::exp(-kPi * xi * xi)) < 1e-12);
  }
  CHECK(fourier_radial(g, 1.0) == doctest::Approx(0.0432139).epsilon(1e-6));
}

TEST_CASE("triangle transform") {
  const auto t = make_indicator_conv(2.0);
  for (double xi = 0.0; xi <= 4.0; xi += 0.0625) CHECK(std::abs(fourier_radial(t, xi) - triangle_hat(xi)) < 1e-10);
  CHECK(std::abs(fourier_radial(t, 0.5)) < 1e-12);
}

TEST_CASE("m_alpha and its self-convolution against Bessel closed forms") {
  for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
    for (int d : {1, 2, 3}) {
      const auto m = make_m_alpha(alpha, d);
      for (double xi : {0.05, 0.3, 1.0, 2.7}) {
        INFO("alpha=" << alpha << " d=" << d << " xi=" << xi);
        CHECK(std::abs(fourier_radial(m, xi) - m_alpha_hat(alpha, d, xi)) < 1e-9);
      }
    }
  }
  CHECK(fourier_radial(make_m_alpha(1.0), 1.0) == doctest::Approx(std::tgamma(2.0) / kPi *
                                                                   boost::math::cyl_bessel_j(1.5, 2 * kPi)));
  for (double alpha : {1.0, 2.0}) {
    for (int d : {1, 3}) {
      const auto msq = make_m_alpha_sq(alpha, d);
      for (double xi = 0.05; xi <= 4.0; xi += 0.0975) {
        const double want = std::pow(m_alpha_hat(alpha, d, xi), 2);
        INFO("alpha=" << alpha << " d=" << d << " xi=" << xi);
        CHECK(std::abs(fourier_radial(msq, xi) - want) <= 1e-6 * want + 1e-14);
      }
    }
  }
}

TEST_CASE("radial transforms of exp(-r) in d = 1, 2, 3") {
  const auto e1 = make_exp_pow(1.0, 1);
  const auto e2 = make_exp_pow(1.0, 2);
  const auto e3 = make_exp_pow(1.0, 3);
  for (double xi : {0.0, 0.1, 0.5, 1.3}) {
    const double q = 1 + 4 * kPi * kPi * xi * xi;
    CHECK(rel(fourier_radial(e1, xi), 2 / q) < 1e-8);
    CHECK(rel(fourier_radial(e2, xi), 2 * kPi / std::pow(q, 1.5)) < 1e-8);
    CHECK(rel(fourier_radial(e3, xi), 8 * kPi / (q * q)) < 1e-8);
  }
}

TEST_CASE("algebraic decay: Cauchy profile") {
  const auto c = make_linnik(2.0);
  for (double xi : {0.0, 0.2, 0.7, 1.5}) CHECK(rel(fourier_radial(c, xi), kPi * std::exp(-2 * kPi * xi)) < 1e-8);
  const auto imq = make_inverse_multiquadric(1.0, 1.0);
  for (double xi : {0.0, 0.2, 0.7}) CHECK(rel(fourier_radial(imq, xi), kPi * std::exp(-2 * kPi * xi)) < 1e-10);
  // Not integrable: only the oscillatory improper integral exists.
  const auto l1 = make_linnik(1.0);
  CHECK_THROWS_AS(fourier_radial(l1, 0.5), UnsupportedOperation);
  for (double xi : {0.25, 0.5, 1.0}) {
    // Alternating series of half-period integrals; the mean of two
    // consecutive partial sums cancels the leading tail term.
    double sum = 0.0;
    double prev = 0.0;
    for (int k = 0; k < 4000; ++k) {
      const double a = k / (2.0 * xi);
      prev = sum;
      sum += 2 * boost::math::quadrature::gauss<double, 30>::integrate(
                     [&](double x) { return std::cos(2 * kPi * x * xi) / (1 + x); }, a, a + 1 / (2.0 * xi));
    }
    const double want = 0.5 * (sum + prev);
    CHECK(std::abs(fourier_radial_improper(l1, xi) - want) < 1e-7);
    CHECK(fourier_radial_improper(l1, xi) > 0.0);
  }
}

TEST_CASE("hermite quartics are mapped to (-a, b)") {
  CHECK(hermite_transform(0.0, 0.3) == std::pair<double, double>(0.0, 0.3));
  const auto [a1, b1] = hermite_transform(0.2, 0.1);
  CHECK(hermite_transform(a1, b1) == std::pair<double, double>(0.2, 0.1));
  for (auto [a, b] : {std::pair{0.1, 0.05}, std::pair{-0.3, 0.2}, std::pair{0.0, 1.0 / 6}}) {
    const auto f = make_hermite_quartic(a, b);
    const auto [ta, tb] = hermite_transform(a, b);
    const auto ft = make_hermite_quartic(ta, tb);
    for (double xi : {0.0, 0.5, 1.0, 2.0}) {
      INFO("a=" << a << " b=" << b << " xi=" << xi);
      CHECK(std::abs(fourier_radial(f, xi) - ft(xi)) < 1e-12);
      CHECK(std::abs(fourier_radial(f, xi) - line_transform(f, xi, 8.0)) < 1e-8);
    }
  }
}

TEST_CASE("gaussian polynomial transform in several dimensions") {
  // |x|^2 e^{-pi |x|^2} in R^d has transform (d / (2 pi) - |xi|^2) e^{-pi |xi|^2}.
  for (int d = 1; d <= 4; ++d) {
    const GaussianPoly g{Poly{0.0, 0.0, 1.0}, kPi, std::nullopt};
    const auto t = gaussian_poly_transform(g, d);
    const auto f = make_gaussian_poly(g.poly, kPi, d);
    for (double xi : {0.0, 0.3, 1.2}) {
      const double want = (d / (2 * kPi) - xi * xi) * std::exp(-kPi * xi * xi);
      CHECK(std::abs(t.poly(xi) * std::exp(-t.rate * xi * xi) - want) < 1e-13);
      CHECK(std::abs(fourier_radial(f, xi) - want) < 1e-13);
    }
  }
}

TEST_CASE("analytic extension") {
  const auto phi = make_phi();
  for (double x : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    const cplx v = analytic_extension(phi, x);
    CHECK(std::abs(v.real() - fourier_radial(phi, x)) < 1e-10);
    CHECK(std::abs(v.imag()) < 1e-12);
  }
  const cplx up = analytic_extension(phi, cplx(0, 2));
  CHECK(std::abs(up.imag()) < 1e-9 * std::abs(up));
  CHECK(up.real() > 0.0);
  CHECK(std::abs(analytic_extension(make_indicator_conv(2), 0.5)) < 1e-10);

  // Triangle: (sin(2 pi z) / (pi z))^2 off the real axis.
  for (cplx z : {cplx(0.3, 0.7), cplx(-1.2, 2.0), cplx(4.1, -3.3)}) {
    const cplx s = std::sin(2 * kPi * z) / (kPi * z);
    CHECK(std::abs(analytic_extension(make_indicator_conv(2), z) - s * s) < 1e-10 * std::abs(s * s) + 1e-12);
  }

  // Derivative against central differences.
  for (cplx z : {cplx(0.4, 0.2), cplx(1.7, -0.9)}) {
    const double h = 1e-5;
    const cplx fd = (analytic_extension(phi, z + h) - analytic_extension(phi, z - h)) / (2 * h);
    CHECK(std::abs(analytic_extension_derivative(phi, z) - fd) < 1e-7 * std::abs(fd) + 1e-9);
  }

  CHECK_THROWS_AS(analytic_extension(make_gaussian(), 1.0), UnsupportedOperation);
  CHECK_THROWS_AS(analytic_extension(phi, cplx(25, 25)), std::range_error);
}

TEST_CASE("property: linearity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  const auto f = make_phi();
  const auto g = make_wu();
  for (int i = 0; i < 50; ++i) {
    const double a = c(rng);
    const double b = c(rng);
    const double xi = u(rng);
    const auto h = linear_combination({{a, f}, {b, g}});
    const double want = a * fourier_radial(f, xi) + b * fourier_radial(g, xi);
    CHECK(std::abs(fourier_radial(h, xi) - want) < 1e-10);
  }
}

TEST_CASE("property: convolution theorem on the line") {
  const auto tri = make_indicator_conv(2.0);
  const auto m1 = make_m_alpha(1.0);
  const std::vector<std::pair<RadialFunction, RadialFunction>> pairs{{tri, tri}, {m1, m1}, {make_phi(), tri}};
  for (const auto& [f, g] : pairs) {
    const auto h = convolve(f, g);
    const double scale = fourier_radial(h, 0.0);
    for (int k = 0; k <= 30; ++k) {
      const double xi = 0.1 * k;
      const double want = fourier_radial(f, xi) * fourier_radial(g, xi);
      INFO(f.label() << " * " << g.label() << " at xi=" << xi);
      // Relative error; at exact zeros of the product it is measured against
      // 1e-8 of the peak, the rounding level of either side.
      CHECK(std::abs(fourier_radial(h, xi) - want) < 1e-6 * std::max(std::abs(want), 1e-8 * scale));
    }
  }
}

TEST_CASE("property: value at the origin is the integral") {
  for (const auto& f : {make_phi(), make_wu(), make_indicator_conv(2), make_wendland33()}) {
    const double R = f.support_radius();
    const double integral = 2 * gk([&](double x) { return f(x); }, 0.0, R);
    CHECK(fourier_radial(f, 0.0) > 0.0);
    CHECK(std::abs(fourier_radial(f, 0.0) - integral) < 1e-12);
  }
  for (double alpha : {-0.25, 0.5, 1.5}) {
    // int (1 - x^2)_+^alpha dx = B(1/2, alpha + 1)
    const double beta = std::sqrt(kPi) * std::tgamma(alpha + 1) / std::tgamma(alpha + 1.5);
    CHECK(std::abs(fourier_radial(make_m_alpha(alpha), 0.0) - beta) < 1e-9);
  }
  const auto e = make_exp_pow(0.5);
  const double integral = 2 * std::tgamma(3.0);  // 2 int e^{-sqrt x} = 4
  CHECK(std::abs(fourier_radial(e, 0.0) - integral) < 1e-9);
}

TEST_CASE("property: even and conjugate symmetry of the extension") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (const auto& f : {make_phi(), make_indicator_conv(2), make_wu(), make_m_alpha_sq(2, 1)}) {
    for (int i = 0; i < 20; ++i) {
      const cplx z(u(rng), 0.5 * u(rng));
      const cplx v = analytic_extension(f, z);
      const double tol = 1e-10 * std::max(std::abs(v), 1.0);
      CHECK(std::abs(analytic_extension(f, -z) - v) < tol);
      CHECK(std::abs(analytic_extension(f, std::conj(z)) - std::conj(v)) < tol);
    }
  }
}

TEST_CASE("property: scaling covariance") {
  const std::vector<RadialFunction> fs{make_phi(), make_indicator_conv(2), make_hermite_quartic(0.1, 0.05),
                                       make_m_alpha(1.0, 3), make_gaussian(kPi, 2)};
  for (const auto& f : fs) {
    for (double lambda : {0.5, 2.0, 3.0}) {
      const auto g = scale(f, lambda);
      const int d = f.dim();
      for (double xi : {0.0, 0.35, 1.2}) {
        const double want = std::pow(lambda, -d) * fourier_radial(f, xi / lambda);
        const double peak = fourier_radial(g, 0.0);
        INFO(f.label() << " lambda=" << lambda << " xi=" << xi);
        CHECK(std::abs(fourier_radial(g, xi) - want) < 1e-8 * std::max(std::abs(want), 1e-6 * peak));
      }
    }
  }
}
