#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ppd/measure.hpp"
#include "ppd/radial.hpp"

namespace ppd {

struct Witness {
  double x;
  double value;
};

/// Outcome of a numerical check. `margin` is the smallest observed slack
/// (negative exactly when the check failed).
struct Verdict {
  bool passed = true;
  std::optional<Witness> witness;
  double margin = 0.0;
  std::string notes;
};

/// Scalar function on (0, inf) with optional Taylor jets.
struct ScalarFunction {
  std::function<double(double)> value;
  std::function<Series(const Series&)> series;
  std::string label = "g";
};

/// g with f0(r) = g(r^2).
ScalarFunction generator_of(const RadialFunction& f);

Verdict check_nonneg(const RadialFunction& f, double radius, double tol = 1e-12);
Verdict check_posdef_fourier(const RadialFunction& f, double xi_max, double tol = 1e-10, int points = 401);
/// Minimum Gram eigenvalue over random point sets in [-spread, spread]^d
/// (spread <= 0 picks the support radius or a decay scale).
Verdict check_posdef_gram(const RadialFunction& f, int n, int trials, double tol = 1e-10, std::uint64_t seed = 1,
                          double spread = 0.0);
Verdict check_polya(const RadialFunction& f, double tol = 1e-9);
/// nu with f(x) = int (1 - |x|/t)_+ dnu(t).
ScaleMeasure recover_polya_measure(const RadialFunction& f);
Verdict check_gneiting(const RadialFunction& f, double tol = 1e-9);
Verdict check_completely_monotone(const ScalarFunction& g, int order_cap = 8, double tol = 1e-9);

/// (1 / pi^2) int (sin(pi t xi) / (t xi))^2 t dnu(t): the transform of the
/// triangle mixture, written with its spectral density.
double polya_spectral_density(const ScaleMeasure& nu, double xi);

/// Radius past which the profile is treated as vanished: 4 R for compact
/// support, else where the decay envelope drops below tol.
double decay_probe(const RadialFunction& f, double tol);

/// k-th derivative of the profile (k <= 2) from jets when available, else by
/// central differences.
double profile_derivative(const RadialFunction& f, double r, int k, Side side = Side::Right);

}  // namespace ppd
