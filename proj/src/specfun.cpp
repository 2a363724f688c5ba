#include "ppd/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ppd/quadrature.hpp"

namespace ppd {

namespace {

constexpr double kSeriesRadius = 8.0;
constexpr double kMaxImag = 700.0;
constexpr double kPi = std::numbers::pi;

// Neumaier-compensated running sum.
struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

bool is_integer(double v) { return v == std::floor(v); }
bool is_half_integer(double v) { return is_integer(v - 0.5); }

// sum_k (-1)^k (z/2)^{2k} / (k! Gamma(k+lambda+1)) * 2^-lambda
cplx series(double lambda, cplx z) {
  const cplx q = -0.25 * z * z;
  cplx term = std::pow(2.0, -lambda) / std::tgamma(lambda + 1.0);
  Compensated re;
  Compensated im;
  const double zabs = std::abs(z);
  for (int k = 0; k < 500; ++k) {
    re.add(term.real());
    im.add(term.imag());
    term *= q / ((k + 1.0) * (k + lambda + 1.0));
    const double mag = std::abs(term);
    if (k > zabs && mag <= 1e-17 * std::abs(cplx(re.value(), im.value()))) break;
    if (mag == 0.0) break;
  }
  return {re.value(), im.value()};
}

// Same series on the imaginary axis, where every term is positive.
double imaginary_axis(double lambda, double y) {
  const double q = 0.25 * y * y;
  double term = std::pow(2.0, -lambda) / std::tgamma(lambda + 1.0);
  double sum = 0.0;
  for (int k = 0; k < 5000; ++k) {
    sum += term;
    term *= q / ((k + 1.0) * (k + lambda + 1.0));
    if (k > y && term <= 1e-17 * sum) break;
  }
  return sum;
}

// calJ(n + 1/2, z) = sqrt(2/pi) j_n(z) / z^n via upward recurrence of the
// spherical Bessel functions (stable for n < |z|).
cplx half_integer(int n, cplx z) {
  cplx jm = std::cos(z) / z;  // j_{-1}
  cplx j = std::sin(z) / z;   // j_0
  for (int k = 0; k < n; ++k) {
    cplx next = (2.0 * k + 1.0) / z * j - jm;
    jm = j;
    j = next;
  }
  return std::sqrt(2.0 / kPi) * j / std::pow(z, n);
}

// J_n(z) = (1/pi) int_0^pi cos(n t - z sin t) dt by the periodic trapezoid rule.
cplx integer_order(int n, cplx z) {
  const int m = 2 * static_cast<int>(std::ceil(std::abs(z) + n)) + 40;
  const double h = kPi / m;
  cplx sum = 0.5 * (1.0 + (n % 2 == 0 ? 1.0 : -1.0));
  for (int j = 1; j < m; ++j) {
    const double t = j * h;
    sum += std::cos(n * t - z * std::sin(t));
  }
  return sum / static_cast<double>(m) / std::pow(z, n);
}

// Poisson representation:
// calJ(lambda, z) = 2^-lambda / (Gamma(lambda+1/2) sqrt(pi)) int_{-1}^{1} (1-t^2)^{lambda-1/2} cos(z t) dt
cplx poisson(double lambda, cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double p = lambda - 0.5;
  auto re = [=](double t) { return std::pow((1.0 - t) * (1.0 + t), p) * std::cos(x * t) * std::cosh(y * t); };
  auto im = [=](double t) { return -std::pow((1.0 - t) * (1.0 + t), p) * std::sin(x * t) * std::sinh(y * t); };
  const double pre = 2.0 * std::pow(2.0, -lambda) / (std::tgamma(lambda + 0.5) * std::sqrt(kPi));
  const double r = quad::tanh_sinh(re, 0.0, 1.0, 1e-14);
  const double i = y == 0.0 ? 0.0 : quad::tanh_sinh(im, 0.0, 1.0, 1e-14);
  return pre * cplx(r, i);
}

double real_axis(double lambda, double x) {
  if (lambda == -0.5) return std::cos(x);
  if (x <= kSeriesRadius) return series(lambda, cplx(x, 0.0)).real();
  return std::cyl_bessel_j(lambda, x) / std::pow(x, lambda);
}

// z strictly inside the first quadrant.
cplx first_quadrant(double lambda, cplx z) {
  if (lambda == -0.5) return std::cos(z);
  const double r = std::abs(z);
  if (r <= kSeriesRadius) return series(lambda, z);
  if (is_half_integer(lambda) && lambda < 7.0) return half_integer(static_cast<int>(lambda - 0.5), z);
  if (is_integer(lambda) && lambda < 40.0) return integer_order(static_cast<int>(lambda), z);
  return poisson(lambda, z);
}

}  // namespace

BesselOrder::BesselOrder(double lambda) : lambda_(lambda) {
  if (!(lambda >= -0.5)) throw std::domain_error("Bessel order must be >= -1/2");
}

double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: argument must be positive");
  return std::tgamma(x);
}

cplx calJ(BesselOrder order, cplx z) {
  double x = z.real();
  double y = z.imag();
  if (x < 0.0 || (x == 0.0 && y < 0.0)) {
    x = -x;
    y = -y;
  }
  const bool flip = y < 0.0;
  if (flip) y = -y;
  if (y > kMaxImag) throw std::range_error("calJ: |Im z| exceeds 700");
  const double lambda = order.value();
  cplx v;
  if (y == 0.0) {
    v = cplx(real_axis(lambda, x), 0.0);
  } else if (x == 0.0) {
    v = cplx(lambda == -0.5 ? std::cosh(y) : imaginary_axis(lambda, y), 0.0);
  } else {
    v = first_quadrant(lambda, cplx(x, y));
  }
  return flip ? std::conj(v) : v;
}

double calJ(BesselOrder order, double x) { return real_axis(order.value(), std::abs(x)); }

double bessel_j(BesselOrder order, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j: argument must be positive");
  const double lambda = order.value();
  if (lambda == -0.5) return std::sqrt(2.0 / (kPi * x)) * std::cos(x);
  return std::pow(x, lambda) * calJ(order, x);
}

cplx bessel_kernel(double lambda, cplx s) {
  if (lambda == -0.5) return std::cos(s);
  return std::tgamma(lambda + 1.0) * std::pow(2.0, lambda) * calJ(lambda, s);
}

double bessel_kernel(double lambda, double s) {
  if (lambda == -0.5) return std::cos(s);
  if (lambda == 0.5) return s == 0.0 ? 1.0 : std::sin(s) / s;
  return std::tgamma(lambda + 1.0) * std::pow(2.0, lambda) * calJ(lambda, s);
}

cplx bessel_kernel_derivative(double lambda, cplx s) {
  return -s / (2.0 * (lambda + 1.0)) * bessel_kernel(lambda + 1.0, s);
}

}  // namespace ppd
