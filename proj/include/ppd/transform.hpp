#pragma once

#include <utility>

#include "ppd/radial.hpp"
#include "ppd/specfun.hpp"

namespace ppd {

/// Fourier transform of a radial function on R^d at |xi|, with the convention
/// f^(xi) = int f(x) exp(2 i pi <x, xi>) dx:
///
///   f^(xi) = 2 pi^{d/2} / Gamma(d/2) int_0^inf f0(r) K(2 pi r xi) r^{d-1} dr,
///
/// where K = bessel_kernel(d/2 - 1, .) is 1 at the origin.
///
/// Throws UnsupportedOperation when f is not integrable.
double fourier_radial(const RadialFunction& f, double xi);

/// Entire extension of the transform of a compactly supported f, |z| <= 30.
cplx analytic_extension(const RadialFunction& f, cplx z);
/// Complex derivative of analytic_extension.
cplx analytic_extension_derivative(const RadialFunction& f, cplx z);

/// Transform of poly(r) exp(-rate r^2) in dimension d, again of that form.
GaussianPoly gaussian_poly_transform(const GaussianPoly& g, int dim);

/// Hermite functions are Fourier eigenvectors: f_{a,b}^ = f_{-a,b}.
std::pair<double, double> hermite_transform(double a, double b);

/// Oscillatory improper integral for functions that decay but are not
/// integrable, in d = 1 or 3 and xi > 0 (Ooura's double exponential rule).
double fourier_radial_improper(const RadialFunction& f, double xi);

}  // namespace ppd
