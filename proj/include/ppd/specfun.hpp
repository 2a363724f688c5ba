#pragma once

#include <complex>

namespace ppd {

using cplx = std::complex<double>;

/// Bessel order lambda >= -1/2. lambda = -1/2 selects the cosine kernel.
class BesselOrder {
 public:
  BesselOrder(double lambda);  // NOLINT(implicit): orders are plain numbers at call sites
  double value() const { return lambda_; }
  bool is_cosine() const { return lambda_ == -0.5; }

 private:
  double lambda_;
};

/// Gamma function for x > 0; throws std::domain_error otherwise.
double gamma(double x);

/// Entire extension of J_lambda(z) / z^lambda, with calJ(-1/2, z) = cos z.
///
/// The value is even in z and satisfies calJ(conj z) = conj calJ(z) exactly;
/// real input gives a zero imaginary part. Throws std::range_error when
/// |Im z| > 700 (the value would overflow).
cplx calJ(BesselOrder order, cplx z);
double calJ(BesselOrder order, double x);

/// J_lambda(x) for x > 0.
double bessel_j(BesselOrder order, double x);

/// Kernel Gamma(lambda+1) 2^lambda J_lambda(s) / s^lambda, normalised to 1 at
/// s = 0; equals cos s for lambda = -1/2 and sin s / s for lambda = 1/2.
/// The radial Fourier transform in dimension d integrates against
/// bessel_kernel(d/2 - 1, 2 pi r xi).
cplx bessel_kernel(double lambda, cplx s);
double bessel_kernel(double lambda, double s);

/// d/ds of bessel_kernel(lambda, s) = -s / (2 (lambda + 1)) * bessel_kernel(lambda + 1, s).
cplx bessel_kernel_derivative(double lambda, cplx s);

}  // namespace ppd
