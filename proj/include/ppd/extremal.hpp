#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppd/measure.hpp"
#include "ppd/radial.hpp"
#include "ppd/specfun.hpp"

namespace ppd {

struct Rect {
  double re0;
  double re1;
  double im0;
  double im1;

  Rect scaled(double s) const { return {re0 * s, re1 * s, im0 * s, im1 * s}; }
  bool contains(cplx z) const { return z.real() >= re0 && z.real() <= re1 && z.imag() >= im0 && z.imag() <= im1; }
};

enum class ZeroClass { Real, NonReal };

struct Zero {
  cplx location;
  int multiplicity;
  ZeroClass cls;
};

/// Zeros of the entire extension inside a rectangle, sorted by location.
struct ZeroReport {
  std::vector<Zero> zeros;
  Rect region;
  int total_count = 0;  // argument-principle count on the region boundary

  int count(ZeroClass c) const;
};

enum class Status { Extremal, NotExtremal, Inconclusive };

enum class Reason {
  AllZerosReal,         // only real zeros in the searched region
  NonRealZeros,         // non-real zeros present; sufficiency test silent
  NonDiracMixture,      // mixing measure charges two separated scales
  DiracMixture,         // single scale, extremality is that of the kernel
  HermiteRealRoots,     // P or its transform has only real zeros
  HermiteFewRealZeros,  // neither side reaches four real zeros
  HermiteUndecided,
};

struct Certificate {
  Status status = Status::Inconclusive;
  Reason reason = Reason::HermiteUndecided;
  std::string text;
  std::optional<ZeroReport> zeros;
  std::vector<double> scales;
  std::optional<Rect> searched_region;
};

const char* to_string(Status s);
const char* to_string(Reason r);
const char* to_string(ZeroClass c);

inline constexpr double kRealTolerance = 1e-7;

/// Argument-principle zero search for the extension of a compactly supported
/// transform.
ZeroReport find_zeros(const RadialFunction& f, const Rect& region, double tol = 1e-12);

inline constexpr Rect kDefaultSearch{-10.0, 10.0, -5.0, 5.0};

/// Extremal when the searched region holds only real zeros; the result is
/// conditional on that region.
Certificate certify_compact(const RadialFunction& f, const Rect& region = kDefaultSearch);

Certificate not_extremal_mixture(const RadialFunction& omega, const ScaleMeasure& nu);

enum class HermiteRegion { Exterior, Interior, Boundary };
enum class HermiteSide { None, TimeType, FrequencyType, Both };

struct HermiteClass {
  HermiteRegion region;
  HermiteSide side;
  double q_plus;
  double q_minus;
};

const char* to_string(HermiteRegion r);
const char* to_string(HermiteSide s);

/// (s a + 2 b)^2 + 2 (b - 1/4)^2
double hermite_q(double s, double a, double b);
HermiteClass classify_hermite4(double a, double b, double tol = 1e-10);

/// For P(x) exp(-rate x^2) with deg P = 4N.
Certificate certify_hermite(const RadialFunction& f, double tol = 1e-6);
Certificate certify_hermite(double a, double b, double tol = 1e-6);

struct DoubleZero {
  double r;
  double x_zeta;
};

/// Smallest r in [3, 4] with f_{r, theta} >= 0 on (0, 2), and the touching point.
DoubleZero solve_double_zero(double theta);

struct ZetaParameters {
  double rho;
  double psi;
};

/// phi'' phi^(5) - phi^(3) phi^(4)
double zeta_denominator(double x);
/// (rho, psi) for which f_{rho, psi} has a double zero at x.
ZetaParameters recover_zeta(double x);

}  // namespace ppd
