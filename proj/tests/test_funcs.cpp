#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ppd/radial.hpp"

using namespace ppd;
constexpr double kPi = std::numbers::pi;

namespace {

double gk(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

// Line convolution of two profiles by Gauss-Kronrod on [-R, R] split at the
// given points.
double line_convolution(const RadialFunction& f, const RadialFunction& g, double x, std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    s += gk([&](double y) { return f(y) * g(x - y); }, cuts[i], cuts[i + 1]);
  return s;
}

RadialFunction random_piecewise(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> npieces(1, 3);
  const int n = npieces(rng);
  std::vector<double> breaks{0.0};
  for (int i = 0; i < n; ++i) breaks.push_back(breaks.back() + 0.3 + 0.7 * std::abs(u(rng)));
  std::vector<Poly> pieces;
  double left = u(rng);
  for (int i = 0; i < n; ++i) {
    // p(r) = left + c1 (r - b_i) + c2 (r - b_i)^2
    const double c1 = u(rng);
    const double c2 = u(rng);
    const double b = breaks[i];
    Poly p{left - c1 * b + c2 * b * b, c1 - 2 * c2 * b, c2};
    pieces.push_back(p);
    left = p(breaks[i + 1]);
  }
  return make_piecewise(breaks, pieces);
}

}  // namespace

TEST_CASE("triangle") {
  const auto p = make_indicator_conv(2.0);
  CHECK(p(0.0) == 2.0);
  CHECK(p(2.0) == 0.0);
  CHECK(p(1.0) == 1.0);
  CHECK(p(3.0) == 0.0);
  CHECK(p(-0.5) == 1.5);
  CHECK_THROWS_AS(make_indicator_conv(0.0), std::domain_error);
  CHECK_THROWS_AS(make_indicator_conv(-1.0), std::domain_error);
  // overlap length of two shifted unit-half-width intervals
  const auto chi = make_m_alpha(0.0);
  const auto conv = convolve(chi, chi);
  for (double x = 0.0; x <= 2.5; x += 0.125) CHECK(conv(x) == doctest::Approx(p(x)).epsilon(1e-15));
  CHECK(make_indicator_conv(1.5)(0.0) == 1.5);
}

TEST_CASE("m_alpha") {
  CHECK(make_m_alpha(1.0)(0.0) == 1.0);
  CHECK(make_m_alpha(1.0)(0.5) == 0.75);
  CHECK(make_m_alpha(0.0)(0.999) == 1.0);
  CHECK(make_m_alpha(0.0)(1.001) == 0.0);
  CHECK(make_m_alpha(-0.3)(0.5) == doctest::Approx(std::pow(0.75, -0.3)));
  CHECK(std::isinf(make_m_alpha(-0.3)(1.0)));
  CHECK(make_m_alpha(2.5)(0.6) == doctest::Approx(std::pow(0.64, 2.5)));
  CHECK(make_m_alpha(2.5)(1.2) == 0.0);
  CHECK_THROWS_AS(make_m_alpha(-0.5), std::domain_error);
  CHECK_THROWS_AS(make_m_alpha(-1.0), std::domain_error);
}

TEST_CASE("m_alpha self-convolution") {
  const auto m2 = make_m_alpha_sq(2.0, 1);
  const auto phi = make_phi();
  REQUIRE(m2.as<PiecewisePoly>() != nullptr);
  for (double x = 0.0; x <= 2.0; x += 1.0 / 64) CHECK(std::abs(m2(x) - phi(x)) < 1e-12);
  // identical exact coefficients
  const auto* a = m2.as<PiecewisePoly>();
  const auto* b = phi.as<PiecewisePoly>();
  REQUIRE(a->exact());
  CHECK(a->exact_pieces == b->exact_pieces);

  const auto m1 = make_m_alpha_sq(1.0, 1);
  CHECK(m1(0.0) == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
  const double oracle = gk([](double t) { return (1 - t * t) * (1 - t * t); }, -1.0, 1.0);
  CHECK(m1(0.0) == doctest::Approx(oracle).epsilon(1e-14));
  for (double alpha : {0.0, 1.0, 2.0, 0.5, -0.25}) {
    const auto m = make_m_alpha_sq(alpha, 1);
    CHECK(std::abs(m(2.0)) < 1e-12);
    CHECK(m.support_radius() == 2.0);
  }
  // non-integer alpha: quadrature convolution against an independent oracle
  const auto mh = make_m_alpha_sq(0.5, 1);
  const auto base = make_m_alpha(0.5);
  for (double x : {0.0, 0.3, 1.1, 1.9}) {
    const double ref = line_convolution(base, base, x, {-1.0, x - 1.0, 1.0, x + 1.0});
    CHECK(mh(x) == doctest::Approx(ref).epsilon(1e-10));
  }
  // integrable endpoint singularity
  const auto ms = make_m_alpha_sq(-0.25, 1);
  const double at0 = 2.0 * std::tgamma(0.5) * std::tgamma(0.5) / std::tgamma(1.0) / 2.0;  // int (1-t^2)^{-1/2}
  CHECK(ms(0.0) == doctest::Approx(at0).epsilon(1e-8));
}

TEST_CASE("Wu function") {
  const auto w = make_wu();
  CHECK(w(0.0) == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
  CHECK(w(2.0) == 0.0);
  const double oracle = gk([](double t) { return (1 - t * t) * (1 - (1 - t) * (1 - t)); }, 0.0, 1.0);
  CHECK(w(1.0) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(w(1.0) == doctest::Approx(11.0 / 30.0).epsilon(1e-15));
  // closed form with constant 16/15 holds with (1 - |x|/2)^3 on [0, 2]
  for (double x = 0.0; x <= 2.0; x += 1.0 / 32) {
    const double closed = 16.0 / 15.0 * std::pow(1 - x / 2, 3) * (1 + 1.5 * x + x * x / 4);
    CHECK(std::abs(w(x) - closed) < 1e-14);
  }
  // the form with (1 - |x|)^3 disagrees inside the support
  CHECK(std::abs(w(0.5) - 16.0 / 15.0 * std::pow(0.5, 3) * (1 + 0.75 + 0.0625)) > 0.1);
}

TEST_CASE("phi") {
  const auto phi = make_phi();
  CHECK(phi(0.0) == doctest::Approx(256.0 / 315.0).epsilon(1e-15));
  CHECK(phi(2.0) == 0.0);
  CHECK(phi(1.0) == doctest::Approx(103.0 / 630.0).epsilon(1e-15));
  const auto* pp = phi.as<PiecewisePoly>();
  REQUIRE(pp->exact());
  const std::vector<Rational> expected{Rational(256, 315), Rational(0),      Rational(-128, 105), Rational(0),
                                       Rational(16, 15),   Rational(-8, 15), Rational(0),         Rational(4, 105),
                                       Rational(0),        Rational(-1, 630)};
  CHECK(pp->exact_pieces[0].coeffs() == expected);
  const auto m2 = make_m_alpha(2.0);
  for (double x : {0.0, 0.7, 1.3}) {
    const double ref = line_convolution(m2, m2, x, {-1.0, x - 1.0, 1.0, x + 1.0});
    CHECK(phi(x) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("derivatives of phi") {
  const auto phi = make_phi();
  const auto d2 = derivative(phi, 2);
  const auto d4 = derivative(phi, 4);
  CHECK(d2(1.0) == doctest::Approx(124.0 / 105.0).epsilon(1e-14));
  for (double x = 0.0; x <= 2.0; x += 1.0 / 16) {
    const double p2 = 4.0 / 105.0 * (3 * std::pow(x, 4) + 18 * std::pow(x, 3) + 30 * x * x - 12 * x - 8) *
                      std::pow(2 - x, 3);
    const double p4 = 8.0 / 5.0 * (3 * std::pow(x, 4) + 6 * std::pow(x, 3) - 8 * x * x - 16 * x + 8) * (2 - x);
    CHECK(std::abs(d2(x) - p2) < 1e-13);
    CHECK(std::abs(d4(x) - p4) < 1e-12);
  }
  // sign changes inside the truncated decimals 0.441... and 1.462...
  CHECK(d4(0.441) > 0.0);
  CHECK(d4(0.442) < 0.0);
  CHECK(d4(1.462) < 0.0);
  CHECK(d4(1.463) > 0.0);
  CHECK_NOTHROW(derivative(phi, 5));
  try {
    derivative(phi, 6);
    FAIL("sixth derivative should be rejected");
  } catch (const NotDifferentiable& e) {
    CHECK(e.point() == 0.0);
  }
  // k = 5 at once equals five single steps, including exact coefficients
  const auto* once = derivative(phi, 5).as<PiecewisePoly>();
  auto step = phi;
  for (int i = 0; i < 5; ++i) step = derivative(step, 1);
  CHECK(once->exact_pieces == step.as<PiecewisePoly>()->exact_pieces);
  CHECK(once->pieces == step.as<PiecewisePoly>()->pieces);
  CHECK_THROWS_AS(derivative(step, 1), NotDifferentiable);
  // triangle: one derivative only; the second fails at the origin
  CHECK_NOTHROW(derivative(make_indicator_conv(2.0), 1));
  CHECK_THROWS_AS(derivative(make_indicator_conv(2.0), 2), NotDifferentiable);
  // indicator: the jump at r = 1 blocks the first derivative
  try {
    derivative(make_m_alpha(0.0), 1);
    FAIL("indicator derivative should be rejected");
  } catch (const NotDifferentiable& e) {
    CHECK(e.point() == 1.0);
  }
}

TEST_CASE("derivative composition is exact") {
  std::mt19937_64 rng(7);
  for (const auto& f : {make_phi(), make_wu(), make_m_alpha_sq(3.0, 1), make_wendland33()}) {
    const auto a = derivative(derivative(f, 1), 1);
    const auto b = derivative(f, 2);
    CHECK(a.as<PiecewisePoly>()->pieces == b.as<PiecewisePoly>()->pieces);
  }
  const auto g = make_hermite_quartic(0.1, 0.05);
  const auto a = derivative(derivative(g, 1), 1);
  const auto b = derivative(g, 2);
  CHECK(a.as<GaussianPoly>()->poly == b.as<GaussianPoly>()->poly);
  CHECK(derivative(make_gaussian(), 1)(0.0) == 0.0);
  CHECK(derivative(make_gaussian(), 1)(0.3) ==
        doctest::Approx(-2 * kPi * 0.3 * std::exp(-kPi * 0.09)).epsilon(1e-14));
  CHECK_THROWS_AS(derivative(make_exp_pow(1.5), 1), UnsupportedOperation);
}

TEST_CASE("Hermite quartic") {
  const auto h0 = make_hermite_quartic(0.0, 0.0);
  for (double x : {0.0, 0.3, 1.2}) CHECK(h0(x) == doctest::Approx(std::exp(-kPi * x * x)).epsilon(1e-15));
  const double x3 = std::sqrt(3.0 / (4 * kPi));
  CHECK(std::abs(make_hermite_quartic(0.0, 1.0 / 6.0)(x3)) < 1e-15);
  CHECK(std::abs(make_hermite_quartic(0.5, 0.0)(0.0)) < 1e-15);
  // against the Hermite recursion H_{k+1} = 2 sqrt(pi) x H_k - k H_{k-1}
  for (double x : {0.1, 0.4, 0.9}) {
    double hm = 1.0;
    double h = 2 * std::sqrt(kPi) * x;
    double H[5] = {1.0, h, 0, 0, 0};
    for (int k = 1; k < 4; ++k) {
      const double next = 2 * std::sqrt(kPi) * x * h - k * hm;
      hm = h;
      h = next;
      H[k + 1] = h;
    }
    const double a = 0.13;
    const double b = 0.07;
    CHECK(make_hermite_quartic(a, b)(x) ==
          doctest::Approx((H[0] + 2 * a * H[2] + b * H[4]) * std::exp(-kPi * x * x)).epsilon(1e-13));
  }
}

TEST_CASE("scaling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const std::vector<RadialFunction> fs{make_phi(), make_gaussian(), make_exp_pow(1.2), make_m_alpha(0.5),
                                       make_hermite_quartic(0.1, 0.1)};
  for (const auto& f : fs) {
    const auto s1 = scale(f, 1.0);
    const auto s6 = scale(f, 6.0);
    const auto s23 = scale(scale(f, 2.0), 3.0);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      CHECK(s1(x) == f(x));
      CHECK(std::abs(s23(x) - s6(x)) <= 1e-12 * std::max(1.0, std::abs(s6(x))));
      CHECK(std::abs(s6(x) - f(6 * x)) <= 1e-12 * std::max(1.0, std::abs(f(6 * x))));
    }
  }
  CHECK(scale(make_indicator_conv(2.0), 2.0).support_radius() == 1.0);
  CHECK_THROWS_AS(scale(make_phi(), 0.0), std::domain_error);
  CHECK_THROWS_AS(scale(make_phi(), -2.0), std::domain_error);
}

TEST_CASE("mixtures") {
  const auto tri = make_indicator_conv(2.0);
  const auto d = mixture(tri, ScaleMeasure::dirac(1.7));
  const auto s = scale(tri, 1.0 / 1.7);
  for (double x = 0.0; x < 4.0; x += 0.05) CHECK(std::abs(d(x) - s(x)) < 1e-12);
  const auto two = mixture(tri, ScaleMeasure({{1.0, 1.0}, {2.0, 1.0}}));
  CHECK(two(0.0) == 4.0);
  const auto dens = mixture(tri, ScaleMeasure::from_density([](double t) { return t * std::exp(-t); }, 1e-6, 60.0,
                                                            20001, false));
  CHECK(dens(0.0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(two.support_radius() == 4.0);
  CHECK_THROWS_AS(ScaleMeasure({{0.0, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(ScaleMeasure({{1.0, -1.0}}), std::domain_error);
  CHECK_THROWS_AS(ScaleMeasure({{1.0, std::numeric_limits<double>::infinity()}}), std::domain_error);
  CHECK_THROWS_AS(mixture(make_m_alpha(-0.25), ScaleMeasure::dirac(1.0)), std::domain_error);
}

TEST_CASE("products and convolutions") {
  const auto phi = make_phi();
  const auto one = make_constant(1.0);
  const auto p = product(phi, one);
  for (double x = 0.0; x < 2.5; x += 0.1) CHECK(p(x) == phi(x));
  const auto g = make_gaussian();
  const auto gg = convolve(g, g);
  CHECK(gg(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(gg(0.4) == doctest::Approx(std::exp(-kPi * 0.16 / 2) / std::sqrt(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(convolve(make_phi(1), make_phi(3)), std::domain_error);
  CHECK_THROWS_AS(product(make_phi(1), make_gaussian(kPi, 2)), std::domain_error);
  CHECK_THROWS_AS(convolve(make_linnik(1.0), make_phi()), std::domain_error);
  CHECK(convolve(make_phi(), make_indicator_conv(1.0)).support_radius() == 3.0);
  CHECK(product(make_phi(), make_indicator_conv(1.0)).support_radius() == 1.0);
  const auto pp = product(make_phi(), make_indicator_conv(1.0));
  for (double x = 0.0; x < 1.5; x += 0.1) CHECK(pp(x) == doctest::Approx(make_phi()(x) * std::max(0.0, 1 - x)));
}

TEST_CASE("exact convolution agrees with quadrature on random pairs") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_piecewise(rng);
    const auto g = random_piecewise(rng);
    const auto h = convolve(f, g);
    REQUIRE(h.as<PiecewisePoly>() != nullptr);
    const double R = f.support_radius() + g.support_radius();
    for (double x = 0.0; x <= R; x += R / 13) {
      std::vector<double> cuts{-f.support_radius(), f.support_radius()};
      for (double b : f.as<PiecewisePoly>()->breaks) {
        cuts.push_back(b);
        cuts.push_back(-b);
      }
      for (double b : g.as<PiecewisePoly>()->breaks) {
        cuts.push_back(x - b);
        cuts.push_back(x + b);
      }
      std::vector<double> kept;
      for (double c : cuts)
        if (std::abs(c) <= f.support_radius()) kept.push_back(c);
      CHECK(std::abs(h(x) - line_convolution(f, g, x, kept)) < 1e-9);
    }
  }
}

TEST_CASE("convolution in higher dimension") {
  // unit balls: lens volume in R^3 and lens area in R^2
  const auto b3 = make_m_alpha(0.0, 3);
  const auto c3 = convolve(b3, b3);
  for (double s : {0.0, 0.3, 1.0, 1.7}) {
    const double lens = kPi / 12.0 * (4 + s) * (2 - s) * (2 - s);
    CHECK(c3(s) == doctest::Approx(lens).epsilon(1e-8));
  }
  const auto b2 = make_m_alpha(0.0, 2);
  const auto c2 = convolve(b2, b2);
  for (double s : {0.0, 0.5, 1.2, 1.9}) {
    const double lens = 2 * std::acos(s / 2) - (s / 2) * std::sqrt(4 - s * s);
    CHECK(c2(s) == doctest::Approx(lens).epsilon(1e-8));
  }
  // Gaussians in R^3: (pi/2a)^{3/2} exp(-a r^2 / 2)
  const auto g3 = make_gaussian(kPi, 3);
  const auto gc = convolve(g3, g3);
  CHECK(gc(0.5) == doctest::Approx(std::pow(0.5, 1.5) * std::exp(-kPi * 0.25 / 2)).epsilon(1e-8));
}

TEST_CASE("f_zeta") {
  const double r = 3.5;
  const double th = 0.6;
  const auto f = make_f_zeta(r, th);
  const auto phi = make_phi();
  const auto d2 = derivative(phi, 2);
  const auto d4 = derivative(phi, 4);
  for (int i = 0; i <= 100; ++i) {
    const double x = 2.0 * i / 100;
    const double ref = phi(x) + 2 * std::cos(2 * th) / (r * r) * d2(x) + d4(x) / std::pow(r, 4);
    CHECK(std::abs(f(x) - ref) < 1e-12);
  }
  const auto q = make_f_zeta(4.0, kPi / 4);
  for (double x = 0.0; x <= 2.0; x += 0.01) {
    CHECK(q(x) == doctest::Approx(phi(x) + d4(x) / 256.0).epsilon(1e-14));
    CHECK(q(x) >= 0.0);
  }
  const auto big = make_f_zeta(1e6, kPi / 4);
  double sup4 = 0.0;
  for (double x = 0.0; x <= 2.0; x += 0.01) sup4 = std::max(sup4, std::abs(d4(x)));
  for (double x = 0.0; x <= 2.0; x += 0.01) CHECK(std::abs(big(x) - phi(x)) < 1e-20 * sup4 + 1e-16);
  CHECK(q.support_radius() == 2.0);
  CHECK_THROWS_AS(make_f_zeta(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(make_f_zeta(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(make_f_zeta(1.0, kPi / 2), std::domain_error);
}

TEST_CASE("m_lambda tends to the Gaussian") {
  const double lambda = 1e4;
  const auto m = make_m_alpha(lambda);
  double worst = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double x = 3.0 * i / 3000;
    worst = std::max(worst, std::abs(m(std::sqrt(kPi) * x / std::sqrt(lambda)) - std::exp(-kPi * x * x)));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("catalogue evaluators") {
  CHECK(make_linnik(1.5)(2.0) == doctest::Approx(1 / (1 + std::pow(2.0, 1.5))));
  CHECK(make_exp_pow(0.5)(4.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(make_inverse_multiquadric(1.0, 0.5)(0.0) == 1.0);
  CHECK(make_wendland33()(0.5) == doctest::Approx(0.125 * 2.5));
  CHECK(make_wendland33()(1.5) == 0.0);
  const auto e = make_exp_pow(1.3);
  const Series s = e.jet(0.7, 3);
  const double h = 1e-5;
  CHECK(s.derivative(1) == doctest::Approx((e(0.7 + h) - e(0.7 - h)) / (2 * h)).epsilon(1e-8));
  CHECK_THROWS_AS(make_linnik(0.0), std::domain_error);
  CHECK_THROWS_AS(make_exp_pow(2.5), std::domain_error);
}

TEST_CASE("jets at breakpoints respect the side") {
  const auto tri = make_indicator_conv(2.0);
  CHECK(tri.jet(2.0, 1, Side::Left).derivative(1) == -1.0);
  CHECK(tri.jet(2.0, 1, Side::Right).derivative(1) == 0.0);
  const auto mix = mixture(tri, ScaleMeasure({{1.0, 1.0}, {3.0, 1.0}}));
  CHECK(mix.jet(2.0, 1, Side::Left).derivative(1) == doctest::Approx(-1.0 - 1.0 / 3.0));
  CHECK(mix.jet(2.0, 1, Side::Right).derivative(1) == doctest::Approx(-1.0 / 3.0));
}
