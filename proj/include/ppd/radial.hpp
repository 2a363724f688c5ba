#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ppd/errors.hpp"
#include "ppd/measure.hpp"
#include "ppd/polynomial.hpp"
#include "ppd/series.hpp"

namespace ppd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Side { Left, Right };

/// Envelope |f0(r)| <= C exp(-rate r^power) (Stretched) or C r^-power (Algebraic).
struct Decay {
  enum class Kind { Compact, Stretched, Algebraic, Unknown };
  Kind kind = Kind::Unknown;
  double constant = 1.0;
  double rate = 0.0;
  double power = 0.0;

  static Decay compact() { return {Kind::Compact, 1.0, 0.0, 0.0}; }
  static Decay stretched(double rate, double power, double constant = 1.0) {
    return {Kind::Stretched, constant, rate, power};
  }
  static Decay algebraic(double power, double constant = 1.0) { return {Kind::Algebraic, constant, 0.0, power}; }

  double envelope(double r) const;
  /// Smallest radius beyond which the envelope stays below tol (inf if unknown).
  double horizon(double tol) const;
  /// Bound on int_H^inf envelope(r) r^(d-1) dr.
  double tail_mass(double H, int d) const;
  bool integrable(int d) const;
};

struct Node;

/// Even function on R^d stored through its profile f0(r), r = |x| >= 0.
///
/// Immutable and cheap to copy (shared representation).
class RadialFunction {
 public:
  RadialFunction() = default;
  explicit RadialFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  double operator()(double r) const;
  /// Truncated Taylor expansion of the profile at r of the given order.
  /// At a breakpoint, `side` selects the piece used.
  Series jet(double r, int order, Side side = Side::Right) const;
  bool has_jet() const;

  int dim() const;
  double support_radius() const;
  Decay decay() const;
  bool integrable() const { return decay().integrable(dim()); }
  bool bounded() const;
  /// Points in (0, support) where the profile may fail to be smooth.
  std::vector<double> breakpoints() const;
  const std::string& label() const;

  const Node& node() const { return *node_; }
  template <typename T>
  const T* as() const;
  explicit operator bool() const { return static_cast<bool>(node_); }

 private:
  std::shared_ptr<const Node> node_;
};

/// Profile made of polynomial pieces in r on [b_0 = 0, b_1], ..., [b_{n-1}, b_n = R]
/// and zero beyond R.
struct PiecewisePoly {
  std::vector<double> breaks;
  std::vector<Poly> pieces;
  /// Exact rational copy, present when the source formula is rational.
  std::vector<Rational> exact_breaks;
  std::vector<RationalPoly> exact_pieces;
  /// Derivatives taken from an even profile; odd values mean the extension to
  /// the line is odd.
  int derivative_order = 0;

  bool exact() const { return !exact_pieces.empty(); }
  double radius() const { return breaks.back(); }
  std::size_t piece_index(double r, Side side) const;
  double value(double r) const;
};

/// poly(r) * exp(-rate r^2); poly holds even powers only.
struct GaussianPoly {
  Poly poly;
  double rate;
  std::optional<std::pair<double, double>> hermite;  // (a, b) of a Hermite quartic
};

struct Mixture {
  RadialFunction base;
  ScaleMeasure measure;
};

struct Product {
  RadialFunction left;
  RadialFunction right;
};

struct Convolution {
  RadialFunction left;
  RadialFunction right;
};

struct Scaled {
  RadialFunction inner;
  double factor;
};

struct Analytic {
  std::function<double(double)> value;
  std::function<Series(const Series&)> jet;  // optional
  double support = kInf;
  Decay decay;
  std::vector<double> kinks;
  bool bounded = true;
  /// exp_pow and inverse_multiquadric: the profile is g(r^2) with g completely
  /// monotone candidate; `generator` evaluates g on series arguments.
  std::function<Series(const Series&)> generator;
  /// Closed-form transform (xi, d), when known.
  std::function<double(double, int)> fourier;
};

struct Node {
  int dim = 1;
  std::string label;
  std::variant<PiecewisePoly, GaussianPoly, Mixture, Product, Convolution, Scaled, Analytic> rep;
};

template <typename T>
const T* RadialFunction::as() const {
  return std::get_if<T>(&node_->rep);
}

// Constructors of the function catalogue.

RadialFunction make_piecewise(std::vector<double> breaks, std::vector<Poly> pieces, int dim = 1,
                              std::string label = "piecewise");
RadialFunction make_piecewise_exact(std::vector<Rational> breaks, std::vector<RationalPoly> pieces, int dim = 1,
                                    std::string label = "piecewise");
RadialFunction make_gaussian_poly(Poly poly, double rate, int dim = 1, std::string label = "gaussian_poly");
RadialFunction make_analytic(Analytic a, int dim = 1, std::string label = "analytic");

/// chi_[-r/2, r/2] * chi_[-r/2, r/2]: profile r - x on [0, r].
RadialFunction make_indicator_conv(double r, int dim = 1);
/// (1 - r^2)_+^alpha, alpha > -1/2.
RadialFunction make_m_alpha(double alpha, int dim = 1);
/// m_alpha * m_alpha in dimension d; exact rational pieces for integer alpha when d = 1.
RadialFunction make_m_alpha_sq(double alpha, int dim = 1);
/// (1 - x^2)_+ * (1 - x^2)_+ on [0, 2].
RadialFunction make_wu(int dim = 1);
/// (2 - x)^5 (x^4 + 10 x^3 + 36 x^2 + 40 x + 16) / 630 on [0, 2].
RadialFunction make_phi(int dim = 1);
/// (H0 + 2a H2 + b H4) exp(-pi x^2), H2 = 4 pi x^2 - 1, H4 = (4 pi x^2)^2 - 6 (4 pi x^2) + 3.
RadialFunction make_hermite_quartic(double a, double b);
/// exp(-rate r^2).
RadialFunction make_gaussian(double rate = 3.141592653589793, int dim = 1);
/// (1 + (2 cos 2 theta / r^2) d^2 + (1 / r^4) d^4) phi.
RadialFunction make_f_zeta(double r, double theta);
/// 1 / (1 + r^beta), 0 < beta <= 2.
RadialFunction make_linnik(double beta, int dim = 1);
/// exp(-r^beta), 0 < beta <= 2.
RadialFunction make_exp_pow(double beta, int dim = 1);
/// (r^2 + alpha^2)^-beta.
RadialFunction make_inverse_multiquadric(double alpha, double beta, int dim = 1);
/// (1 - r)_+^3 (1 + 3 r).
RadialFunction make_wendland33(int dim = 1);
RadialFunction make_constant(double value, int dim = 1);

// Combinators.

RadialFunction scale(const RadialFunction& f, double lambda);
RadialFunction mixture(const RadialFunction& omega, const ScaleMeasure& nu);
RadialFunction product(const RadialFunction& f, const RadialFunction& g);
RadialFunction convolve(const RadialFunction& f, const RadialFunction& g);
/// k-th derivative of the profile (piecewise polynomial or Gaussian times polynomial).
RadialFunction derivative(const RadialFunction& f, int k);
RadialFunction linear_combination(const std::vector<std::pair<double, RadialFunction>>& terms);

/// Exact convolution on the line of two even piecewise polynomial profiles.
PiecewisePoly convolve_piecewise(const PiecewisePoly& f, const PiecewisePoly& g);

}  // namespace ppd
