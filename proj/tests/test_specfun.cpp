#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ppd/specfun.hpp"

using ppd::calJ;
using ppd::cplx;
constexpr double kPi = std::numbers::pi;

namespace {

// Plain power series of J_lambda(x)/x^lambda, long double, for zero brackets.
long double series_oracle(long double lambda, long double x) {
  long double term = std::pow(2.0L, -lambda) / std::tgamma(lambda + 1.0L);
  long double sum = 0.0L;
  const long double q = -x * x / 4.0L;
  for (int k = 0; k < 200; ++k) {
    sum += term;
    term *= q / ((k + 1.0L) * (k + lambda + 1.0L));
  }
  return sum;
}

double series_zero(double lambda, double lo, double hi) {
  long double a = lo;
  long double b = hi;
  long double fa = series_oracle(lambda, a);
  for (int i = 0; i < 200; ++i) {
    long double m = 0.5L * (a + b);
    long double fm = series_oracle(lambda, m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return static_cast<double>(0.5L * (a + b));
}

// Poisson integral with t = sin(u) to remove the endpoint weight singularity.
double poisson_oracle(double lambda, double x) {
  auto f = [&](double u) {
    const double c = std::cos(u);
    return std::pow(c, 2.0 * lambda) * std::cos(x * std::sin(u));
  };
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -kPi / 2, kPi / 2, 15, 1e-15);
  return std::pow(2.0, -lambda) / (std::tgamma(lambda + 0.5) * std::sqrt(kPi)) * I;
}

}  // namespace

TEST_CASE("gamma values") {
  CHECK(ppd::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ppd::gamma(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(ppd::gamma(2.5) == doctest::Approx(0.75 * std::sqrt(kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(ppd::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(ppd::gamma(-1.5), std::domain_error);
}

TEST_CASE("bessel order validation") {
  CHECK_NOTHROW(ppd::BesselOrder(-0.5));
  CHECK_THROWS_AS(ppd::BesselOrder(-0.6), std::domain_error);
}

TEST_CASE("calJ reference values") {
  CHECK(calJ(-0.5, cplx(0.0)) == cplx(1.0));
  const double z0 = series_zero(0.0, 2.0, 3.0);
  CHECK(std::abs(z0 - 2.4048255577) < 1e-9);
  CHECK(std::abs(calJ(0.0, cplx(2.4048255577))) < 1e-10);
  const cplx v = calJ(0.5, cplx(0.0, 1.0));
  CHECK(v.imag() == 0.0);
  CHECK(v.real() > 0.0);
  // calJ(1/2, i) = sqrt(2/pi) sinh(1)
  CHECK(v.real() == doctest::Approx(std::sqrt(2.0 / kPi) * std::sinh(1.0)).epsilon(1e-13));
}

TEST_CASE("bessel_j reference values") {
  CHECK(std::abs(ppd::bessel_j(0.5, kPi)) < 1e-12);
  CHECK(std::abs(ppd::bessel_j(0.0, 1e-8) - 1.0) < 1e-8);
  const double z1 = series_zero(1.0, 3.5, 4.0);
  CHECK(std::abs(z1 - 3.8317059702) < 1e-9);
  CHECK(std::abs(ppd::bessel_j(1.0, 3.8317059702)) < 1e-9);
  CHECK_THROWS_AS(ppd::bessel_j(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ppd::bessel_j(1.0, -1.0), std::domain_error);
  for (double lambda : {0.0, 0.3, 1.0, 2.5, 4.0}) {
    for (double x : {0.1, 1.0, 5.0, 9.0, 17.0, 40.0}) {
      const double ref = std::cyl_bessel_j(lambda, x);
      const double got = ppd::bessel_j(lambda, x);
      CHECK(std::abs(got - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("bessel_j agrees with calJ times x^lambda") {
  for (double lambda : {0.0, 0.5, 1.0, 1.7, 3.5}) {
    for (double x = 0.25; x < 30.0; x += 0.37) {
      const double j = ppd::bessel_j(lambda, x);
      if (std::abs(j) <= 1e-8) continue;
      const double via = std::pow(x, lambda) * calJ(lambda, cplx(x)).real();
      CHECK(std::abs(j - via) <= 1e-12 * std::abs(j));
    }
  }
}

TEST_CASE("evenness and conjugate symmetry on random arguments") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (double lambda : {-0.5, 0.0, 0.5, 1.0, 1.5, 0.3}) {
    int checked = 0;
    while (checked < 1000) {
      const cplx z(u(rng), u(rng));
      if (std::abs(z) > 20.0) continue;
      ++checked;
      const cplx a = calJ(lambda, z);
      const cplx b = calJ(lambda, -z);
      const cplx c = calJ(lambda, std::conj(z));
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
      CHECK(c == std::conj(a));
    }
  }
}

TEST_CASE("real axis gives real values and imaginary axis gives positive values") {
  for (double lambda : {-0.5, 0.0, 0.5, 1.0, 2.0, 0.7}) {
    for (double x = -20.0; x <= 20.0; x += 0.5) {
      CHECK(calJ(lambda, cplx(x, 0.0)).imag() == 0.0);
      const cplx v = calJ(lambda, cplx(0.0, x));
      CHECK(v.imag() == 0.0);
      CHECK(v.real() > 0.0);
    }
  }
}

TEST_CASE("agreement with quadrature of the Poisson integral") {
  for (double lambda : {0.0, 0.5, 1.0, 1.5}) {
    for (double x = 0.0; x <= 15.0; x += 0.25) {
      CHECK(std::abs(calJ(lambda, cplx(x)).real() - poisson_oracle(lambda, x)) < 1e-10);
    }
  }
}

TEST_CASE("complex branches agree with the power series") {
  // The series is accurate for moderate |z|; compare every branch at |z| in (8, 12).
  for (double lambda : {0.0, 1.0, 0.5, 1.5, 2.5, 0.3, 2.0}) {
    for (double angle : {0.2, 0.7, 1.1, 1.4}) {
      for (double r : {8.5, 10.0, 12.0}) {
        const cplx z = std::polar(r, angle);
        cplx term = std::pow(2.0, -lambda) / std::tgamma(lambda + 1.0);
        std::complex<long double> sum = 0.0L;
        std::complex<long double> t(term.real(), term.imag());
        const std::complex<long double> q = -0.25L * std::complex<long double>(z.real(), z.imag()) *
                                            std::complex<long double>(z.real(), z.imag());
        for (int k = 0; k < 300; ++k) {
          sum += t;
          t *= q / static_cast<long double>((k + 1.0) * (k + lambda + 1.0));
        }
        const cplx ref(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
        const cplx got = calJ(lambda, z);
        CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("half-integer closed forms") {
  // calJ(1/2, z) = sqrt(2/pi) sin z / z, calJ(3/2, z) = sqrt(2/pi) (sin z / z - cos z) / z^2
  for (double x = 0.5; x < 25.0; x += 0.7) {
    for (double y : {0.0, 0.4, 2.0}) {
      const cplx z(x, y);
      const cplx s = std::sqrt(2.0 / kPi) * std::sin(z) / z;
      const cplx t = std::sqrt(2.0 / kPi) * (std::sin(z) / z - std::cos(z)) / (z * z);
      CHECK(std::abs(calJ(0.5, z) - s) <= 1e-12 * std::max(1.0, std::abs(s)));
      CHECK(std::abs(calJ(1.5, z) - t) <= 1e-12 * std::max(1.0, std::abs(t)));
    }
  }
}

TEST_CASE("normalised kernel") {
  CHECK(ppd::bessel_kernel(-0.5, 0.3) == std::cos(0.3));
  CHECK(ppd::bessel_kernel(0.5, 0.0) == 1.0);
  CHECK(ppd::bessel_kernel(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ppd::bessel_kernel(0.0, 2.0) == doctest::Approx(std::cyl_bessel_j(0.0, 2.0)).epsilon(1e-13));
  const cplx s(3.0, 0.5);
  const double h = 1e-6;
  for (double lambda : {-0.5, 0.0, 0.5, 1.0}) {
    const cplx num = (ppd::bessel_kernel(lambda, s + h) - ppd::bessel_kernel(lambda, s - h)) / (2 * h);
    CHECK(std::abs(ppd::bessel_kernel_derivative(lambda, s) - num) < 1e-8);
  }
}

TEST_CASE("range guard") { CHECK_THROWS_AS(calJ(0.0, cplx(1.0, 800.0)), std::range_error); }
