#include "ppd/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace ppd {

double convolution_value(const Convolution& c, int dim, double rho);  // convolution.cpp

namespace {

constexpr double kPi = std::numbers::pi;

template <typename Rep>
RadialFunction make_node(Rep rep, int dim, std::string label) {
  if (dim < 1) throw std::domain_error("dimension must be a positive integer");
  auto node = std::make_shared<Node>();
  node->dim = dim;
  node->label = std::move(label);
  node->rep = std::move(rep);
  return RadialFunction(std::move(node));
}

Series rescale(Series s, double factor) {
  double p = 1.0;
  for (int k = 1; k <= s.order(); ++k) {
    p *= factor;
    s[k] *= p;
  }
  return s;
}

double poly_scale(const PiecewisePoly& pp) {
  double scale = 0.0;
  for (std::size_t i = 0; i < pp.pieces.size(); ++i) {
    scale = std::max(scale, std::abs(pp.pieces[i](pp.breaks[i])));
    scale = std::max(scale, std::abs(pp.pieces[i](pp.breaks[i + 1])));
  }
  return std::max(scale, 1e-300);
}

void check_breaks(const std::vector<double>& breaks, std::size_t pieces) {
  if (pieces == 0 || breaks.size() != pieces + 1) throw std::domain_error("piecewise: need n+1 breakpoints for n pieces");
  if (breaks.front() != 0.0) throw std::domain_error("piecewise: first breakpoint must be 0");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]) || !std::isfinite(breaks[i]))
      throw std::domain_error("piecewise: breakpoints must be finite and increasing");
}

RadialFunction piecewise_unchecked(PiecewisePoly pp, int dim, std::string label) {
  return make_node(std::move(pp), dim, std::move(label));
}

RadialFunction retag(const RadialFunction& f, int dim, std::string label) {
  if (dim < 1) throw std::domain_error("dimension must be a positive integer");
  auto node = std::make_shared<Node>(f.node());
  node->dim = dim;
  node->label = std::move(label);
  return RadialFunction(std::move(node));
}

// Gaussian envelope constant: |P(r)| e^{-a r^2} <= C e^{-a r^2 / 2}.
Decay gaussian_decay(const GaussianPoly& g) {
  double c = 0.0;
  const double top = 12.0 / std::sqrt(g.rate) + 1.0;
  for (int i = 0; i <= 2000; ++i) {
    const double r = top * i / 2000.0;
    c = std::max(c, std::abs(g.poly(r)) * std::exp(-0.5 * g.rate * r * r));
  }
  return Decay::stretched(0.5 * g.rate, 2.0, 1.5 * c + 1e-300);
}

}  // namespace

// Decay.

double Decay::envelope(double r) const {
  switch (kind) {
    case Kind::Compact:
      return 0.0;
    case Kind::Stretched:
      return constant * std::exp(-rate * std::pow(r, power));
    case Kind::Algebraic:
      return constant * std::pow(r, -power);
    case Kind::Unknown:
      break;
  }
  return kInf;
}

double Decay::horizon(double tol) const {
  switch (kind) {
    case Kind::Compact:
      return 0.0;
    case Kind::Stretched:
      return constant <= tol ? 0.0 : std::pow(std::log(constant / tol) / rate, 1.0 / power);
    case Kind::Algebraic:
      return std::pow(constant / tol, 1.0 / power);
    case Kind::Unknown:
      break;
  }
  return kInf;
}

double Decay::tail_mass(double H, int d) const {
  switch (kind) {
    case Kind::Compact:
      return 0.0;
    case Kind::Stretched: {
      // int_H^inf C e^{-a r^p} r^{d-1} dr = C / (p a^{d/p}) Gamma(d/p, a H^p)
      const double s = static_cast<double>(d) / power;
      return constant / (power * std::pow(rate, s)) * boost::math::tgamma(s, rate * std::pow(H, power));
    }
    case Kind::Algebraic:
      return power > d ? constant * std::pow(H, d - power) / (power - d) : kInf;
    case Kind::Unknown:
      break;
  }
  return kInf;
}

bool Decay::integrable(int d) const {
  switch (kind) {
    case Kind::Compact:
    case Kind::Stretched:
      return true;
    case Kind::Algebraic:
      return power > d;
    case Kind::Unknown:
      break;
  }
  return false;
}

// PiecewisePoly.

std::size_t PiecewisePoly::piece_index(double r, Side side) const {
  const auto begin = breaks.begin() + 1;
  const auto end = breaks.end() - 1;
  auto it = side == Side::Right ? std::upper_bound(begin, end, r) : std::lower_bound(begin, end, r);
  return static_cast<std::size_t>(it - begin);
}

double PiecewisePoly::value(double r) const {
  r = std::abs(r);
  if (r > radius()) return 0.0;
  const std::size_t i = piece_index(r, Side::Left);
  if (exact() && (r == breaks[i] || r == breaks[i + 1])) {
    const Rational& b = r == breaks[i] ? exact_breaks[i] : exact_breaks[i + 1];
    try {
      return exact_pieces[i].eval_exact(b).to_double();
    } catch (const std::overflow_error&) {
    }
  }
  return pieces[i](r);
}

// RadialFunction.

double RadialFunction::operator()(double r) const {
  r = std::abs(r);
  const int d = node_->dim;
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PiecewisePoly>) {
          return rep.value(r);
        } else if constexpr (std::is_same_v<T, GaussianPoly>) {
          return rep.poly(r) * std::exp(-rep.rate * r * r);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          double s = 0.0;
          for (const auto& n : rep.measure.nodes()) s += n.mass * rep.base(r / n.t);
          return s;
        } else if constexpr (std::is_same_v<T, Product>) {
          return rep.left(r) * rep.right(r);
        } else if constexpr (std::is_same_v<T, Convolution>) {
          return convolution_value(rep, d, r);
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return rep.inner(rep.factor * r);
        } else {
          if (r > rep.support) return 0.0;
          return rep.value(r);
        }
      },
      node_->rep);
}

Series RadialFunction::jet(double r, int order, Side side) const {
  return std::visit(
      [&](const auto& rep) -> Series {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PiecewisePoly>) {
          if (r > rep.radius() || (r == rep.radius() && side == Side::Right)) return Series(order);
          return rep.pieces[rep.piece_index(r, side)](Series::variable(r, order));
        } else if constexpr (std::is_same_v<T, GaussianPoly>) {
          const Series x = Series::variable(r, order);
          return rep.poly(x) * exp(-rep.rate * (x * x));
        } else if constexpr (std::is_same_v<T, Mixture>) {
          Series s(order);
          for (const auto& n : rep.measure.nodes()) s += n.mass * rescale(rep.base.jet(r / n.t, order, side), 1.0 / n.t);
          return s;
        } else if constexpr (std::is_same_v<T, Product>) {
          return rep.left.jet(r, order, side) * rep.right.jet(r, order, side);
        } else if constexpr (std::is_same_v<T, Convolution>) {
          throw UnsupportedOperation("jets are unavailable for quadrature convolutions");
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return rescale(rep.inner.jet(rep.factor * r, order, side), rep.factor);
        } else {
          if (r > rep.support || (r == rep.support && side == Side::Right)) return Series(order);
          if (!rep.jet) throw UnsupportedOperation("function '" + node_->label + "' has no derivative information");
          return rep.jet(Series::variable(r, order));
        }
      },
      node_->rep);
}

bool RadialFunction::has_jet() const {
  return std::visit(
      [](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PiecewisePoly> || std::is_same_v<T, GaussianPoly>) {
          return true;
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return rep.base.has_jet();
        } else if constexpr (std::is_same_v<T, Product>) {
          return rep.left.has_jet() && rep.right.has_jet();
        } else if constexpr (std::is_same_v<T, Convolution>) {
          return false;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return rep.inner.has_jet();
        } else {
          return static_cast<bool>(rep.jet);
        }
      },
      node_->rep);
}

int RadialFunction::dim() const { return node_->dim; }
const std::string& RadialFunction::label() const { return node_->label; }

double RadialFunction::support_radius() const {
  return std::visit(
      [](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PiecewisePoly>) {
          return rep.radius();
        } else if constexpr (std::is_same_v<T, GaussianPoly>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, Mixture>) {
          return rep.base.support_radius() * rep.measure.max_scale();
        } else if constexpr (std::is_same_v<T, Product>) {
          return std::min(rep.left.support_radius(), rep.right.support_radius());
        } else if constexpr (std::is_same_v<T, Convolution>) {
          return rep.left.support_radius() + rep.right.support_radius();
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return rep.inner.support_radius() / rep.factor;
        } else {
          return rep.support;
        }
      },
      node_->rep);
}

Decay RadialFunction::decay() const {
  if (std::isfinite(support_radius())) return Decay::compact();
  return std::visit(
      [](const auto& rep) -> Decay {
        using T = std::decay_t<decltype(rep)>;
        using K = Decay::Kind;
        if constexpr (std::is_same_v<T, GaussianPoly>) {
          return gaussian_decay(rep);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          Decay d = rep.base.decay();
          const double tmax = rep.measure.max_scale();
          d.constant *= rep.measure.total_mass();
          if (d.kind == K::Stretched) d.rate /= std::pow(tmax, d.power);
          if (d.kind == K::Algebraic) d.constant *= std::pow(tmax, d.power);
          return d;
        } else if constexpr (std::is_same_v<T, Product>) {
          const Decay a = rep.left.decay();
          const Decay b = rep.right.decay();
          if (a.kind == K::Stretched && b.kind == K::Stretched) {
            if (a.power == b.power) return Decay::stretched(a.rate + b.rate, a.power, a.constant * b.constant);
            const Decay& fast = a.power > b.power ? a : b;
            return Decay::stretched(fast.rate, fast.power, a.constant * b.constant);
          }
          if (a.kind == K::Stretched && b.kind == K::Algebraic) return a;
          if (b.kind == K::Stretched && a.kind == K::Algebraic) return b;
          if (a.kind == K::Algebraic && b.kind == K::Algebraic)
            return Decay::algebraic(a.power + b.power, a.constant * b.constant);
          return Decay{};
        } else if constexpr (std::is_same_v<T, Convolution>) {
          // one of |y|, |x - y| exceeds |x| / 2 inside the integral
          const Decay a = rep.left.decay();
          const Decay b = rep.right.decay();
          const int d = rep.left.dim();
          if (a.kind == K::Compact && b.kind == K::Compact) return Decay::compact();
          if (a.kind == K::Unknown || b.kind == K::Unknown) return Decay{};
          const double mass = a.tail_mass(0.0, d) + b.tail_mass(0.0, d) + 1.0;
          const double c = (a.constant + b.constant) * mass;
          if (a.kind == K::Stretched && b.kind == K::Stretched) {
            const double p = std::min(a.power, b.power);
            return Decay::stretched(std::min(a.rate, b.rate) / std::pow(2.0, p), p, c);
          }
          const double p = std::min(a.kind == K::Algebraic ? a.power : kInf, b.kind == K::Algebraic ? b.power : kInf);
          return Decay::algebraic(p, c * std::pow(2.0, p));
        } else if constexpr (std::is_same_v<T, Scaled>) {
          Decay d = rep.inner.decay();
          if (d.kind == K::Stretched) d.rate *= std::pow(rep.factor, d.power);
          if (d.kind == K::Algebraic) d.constant *= std::pow(rep.factor, -d.power);
          return d;
        } else if constexpr (std::is_same_v<T, Analytic>) {
          return rep.decay;
        } else {
          return Decay::compact();
        }
      },
      node_->rep);
}

bool RadialFunction::bounded() const {
  return std::visit(
      [](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Mixture>) {
          return rep.base.bounded();
        } else if constexpr (std::is_same_v<T, Product>) {
          return rep.left.bounded() && rep.right.bounded();
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return rep.inner.bounded();
        } else if constexpr (std::is_same_v<T, Analytic>) {
          return rep.bounded;
        } else {
          return true;
        }
      },
      node_->rep);
}

std::vector<double> RadialFunction::breakpoints() const {
  std::vector<double> out = std::visit(
      [](const auto& rep) -> std::vector<double> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PiecewisePoly>) {
          return {rep.breaks.begin() + 1, rep.breaks.end()};
        } else if constexpr (std::is_same_v<T, GaussianPoly>) {
          return {};
        } else if constexpr (std::is_same_v<T, Mixture>) {
          std::vector<double> v;
          for (double b : rep.base.breakpoints())
            for (const auto& a : rep.measure.nodes()) v.push_back(b * a.t);
          return v;
        } else if constexpr (std::is_same_v<T, Product>) {
          auto v = rep.left.breakpoints();
          auto w = rep.right.breakpoints();
          v.insert(v.end(), w.begin(), w.end());
          return v;
        } else if constexpr (std::is_same_v<T, Convolution>) {
          auto a = rep.left.breakpoints();
          auto b = rep.right.breakpoints();
          a.push_back(0.0);
          b.push_back(0.0);
          std::vector<double> v;
          for (double x : a)
            for (double y : b) {
              v.push_back(x + y);
              v.push_back(std::abs(x - y));
            }
          return v;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          auto v = rep.inner.breakpoints();
          for (double& x : v) x /= rep.factor;
          return v;
        } else {
          auto v = rep.kinks;
          if (std::isfinite(rep.support)) v.push_back(rep.support);
          return v;
        }
      },
      node_->rep);
  const double R = support_radius();
  std::vector<double> kept;
  for (double x : out)
    if (x > 0.0 && x <= R && std::isfinite(x)) kept.push_back(x);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

// Constructors.

RadialFunction make_piecewise(std::vector<double> breaks, std::vector<Poly> pieces, int dim, std::string label) {
  check_breaks(breaks, pieces.size());
  PiecewisePoly pp{std::move(breaks), std::move(pieces), {}, {}};
  const double scale = poly_scale(pp);
  for (std::size_t i = 1; i + 1 < pp.breaks.size(); ++i) {
    const double jump = std::abs(pp.pieces[i - 1](pp.breaks[i]) - pp.pieces[i](pp.breaks[i]));
    if (jump > 1e-12 * scale)
      throw std::domain_error("piecewise: profile is discontinuous at r = " + std::to_string(pp.breaks[i]));
  }
  return piecewise_unchecked(std::move(pp), dim, std::move(label));
}

RadialFunction make_piecewise_exact(std::vector<Rational> breaks, std::vector<RationalPoly> pieces, int dim,
                                    std::string label) {
  std::vector<double> db;
  for (const auto& b : breaks) db.push_back(b.to_double());
  check_breaks(db, pieces.size());
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i)
    if (pieces[i - 1].eval_exact(breaks[i]) != pieces[i].eval_exact(breaks[i]))
      throw std::domain_error("piecewise: profile is discontinuous at r = " + std::to_string(db[i]));
  PiecewisePoly pp;
  pp.breaks = std::move(db);
  for (const auto& p : pieces) pp.pieces.push_back(p.cast<double>());
  pp.exact_breaks = std::move(breaks);
  pp.exact_pieces = std::move(pieces);
  return piecewise_unchecked(std::move(pp), dim, std::move(label));
}

RadialFunction make_gaussian_poly(Poly poly, double rate, int dim, std::string label) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::domain_error("gaussian rate must be positive");
  for (int k = 1; k <= poly.degree(); k += 2)
    if (poly.coeff(k) != 0.0) throw std::domain_error("gaussian polynomial must contain even powers only");
  return make_node(GaussianPoly{std::move(poly), rate, std::nullopt}, dim, std::move(label));
}

RadialFunction make_analytic(Analytic a, int dim, std::string label) {
  if (!a.value) throw std::domain_error("analytic function needs an evaluator");
  return make_node(std::move(a), dim, std::move(label));
}

RadialFunction make_indicator_conv(double r, int dim) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("triangle width must be positive");
  if (r == std::floor(r) && r < 1e9) {
    const auto n = static_cast<std::int64_t>(r);
    return make_piecewise_exact({Rational(0), Rational(n)}, {RationalPoly{Rational(n), Rational(-1)}}, dim,
                                "triangle");
  }
  return make_piecewise({0.0, r}, {Poly{r, -1.0}}, dim, "triangle");
}

RadialFunction make_m_alpha(double alpha, int dim) {
  if (!(alpha > -0.5) || !std::isfinite(alpha)) throw std::domain_error("m_alpha requires alpha > -1/2");
  if (alpha == std::floor(alpha) && alpha <= 12.0) {
    RationalPoly p{Rational(1)};
    const RationalPoly base{Rational(1), Rational(0), Rational(-1)};
    for (int k = 0; k < static_cast<int>(alpha); ++k) p = p * base;
    return make_piecewise_exact({Rational(0), Rational(1)}, {p}, dim, "m_alpha");
  }
  Analytic a;
  a.value = [alpha](double r) {
    if (r < 1.0) return std::pow((1.0 - r) * (1.0 + r), alpha);
    if (r == 1.0) return alpha > 0.0 ? 0.0 : (alpha == 0.0 ? 1.0 : kInf);
    return 0.0;
  };
  a.jet = [alpha](const Series& r) { return pow((1.0 - r) * (1.0 + r), alpha); };
  a.support = 1.0;
  a.decay = Decay::compact();
  a.bounded = alpha >= 0.0;
  return make_analytic(std::move(a), dim, "m_alpha");
}

RadialFunction make_m_alpha_sq(double alpha, int dim) {
  const RadialFunction m = make_m_alpha(alpha, dim);
  return retag(convolve(m, m), dim, "m_alpha_sq");
}

RadialFunction make_wu(int dim) { return retag(make_m_alpha_sq(1.0, 1), dim, "wu"); }

RadialFunction make_phi(int dim) {
  const RationalPoly two_minus_x{Rational(2), Rational(-1)};
  RationalPoly p = RationalPoly{Rational(16), Rational(40), Rational(36), Rational(10), Rational(1)};
  for (int k = 0; k < 5; ++k) p = p * two_minus_x;
  p = p * Rational(1, 630);
  return make_piecewise_exact({Rational(0), Rational(2)}, {p}, dim, "phi");
}

RadialFunction make_hermite_quartic(double a, double b) {
  const double c = 4.0 * kPi;
  // 1 + 2a(X - 1) + b(X^2 - 6X + 3) with X = 4 pi r^2
  Poly p{1.0 - 2.0 * a + 3.0 * b, 0.0, (2.0 * a - 6.0 * b) * c, 0.0, b * c * c};
  return make_node(GaussianPoly{std::move(p), kPi, std::make_pair(a, b)}, 1, "hermite4");
}

RadialFunction make_gaussian(double rate, int dim) { return make_gaussian_poly(Poly{1.0}, rate, dim, "gaussian"); }

RadialFunction make_f_zeta(double r, double theta) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("f_zeta requires r > 0");
  if (!(theta > 0.0 && theta < kPi / 2.0)) throw std::domain_error("f_zeta requires 0 < theta < pi/2");
  double c2 = std::cos(2.0 * theta);
  if (std::abs(c2) < 4.0 * std::numeric_limits<double>::epsilon()) c2 = 0.0;
  const RadialFunction phi = make_phi();
  RadialFunction f = linear_combination(
      {{1.0, phi}, {2.0 * c2 / (r * r), derivative(phi, 2)}, {1.0 / (r * r * r * r), derivative(phi, 4)}});
  return retag(f, 1, "f_zeta");
}

RadialFunction make_linnik(double beta, int dim) {
  if (!(beta > 0.0 && beta <= 2.0)) throw std::domain_error("linnik requires 0 < beta <= 2");
  Analytic a;
  a.value = [beta](double r) { return 1.0 / (1.0 + std::pow(r, beta)); };
  a.jet = [beta](const Series& r) {
    if (beta == 2.0) return 1.0 / (1.0 + r * r);
    if (beta == 1.0) return 1.0 / (1.0 + r);
    return 1.0 / (1.0 + pow(r, beta));
  };
  a.decay = Decay::algebraic(beta);
  return make_analytic(std::move(a), dim, "linnik");
}

RadialFunction make_exp_pow(double beta, int dim) {
  if (!(beta > 0.0 && beta <= 2.0)) throw std::domain_error("exp_pow requires 0 < beta <= 2");
  Analytic a;
  a.value = [beta](double r) { return std::exp(-std::pow(r, beta)); };
  a.jet = [beta](const Series& r) {
    if (beta == 2.0) return exp(-(r * r));
    if (beta == 1.0) return exp(-r);
    return exp(-pow(r, beta));
  };
  a.generator = [beta](const Series& t) {
    if (beta == 2.0) return exp(-t);
    return exp(-pow(t, 0.5 * beta));
  };
  a.decay = Decay::stretched(1.0, beta);
  return make_analytic(std::move(a), dim, "exp_pow");
}

RadialFunction make_inverse_multiquadric(double alpha, double beta, int dim) {
  if (!(alpha != 0.0) || !std::isfinite(alpha)) throw std::domain_error("inverse_multiquadric requires alpha != 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("inverse_multiquadric requires beta > 0");
  const double a2 = alpha * alpha;
  Analytic a;
  a.value = [a2, beta](double r) { return std::pow(r * r + a2, -beta); };
  a.jet = [a2, beta](const Series& r) { return pow(r * r + a2, -beta); };
  a.generator = [a2, beta](const Series& t) { return pow(t + a2, -beta); };
  // Matern form, valid for beta > d/2
  const double al = std::abs(alpha);
  a.fourier = [al, beta](double xi, int d) {
    const double nu = 0.5 * d - beta;
    if (!(nu < 0.0)) throw UnsupportedOperation("inverse multiquadric is not integrable in this dimension");
    if (xi == 0.0) return std::pow(kPi, 0.5 * d) * std::tgamma(-nu) / std::tgamma(beta) * std::pow(al, 2.0 * nu);
    return 2.0 * std::pow(kPi, beta) / std::tgamma(beta) * std::pow(al / xi, nu) *
           boost::math::cyl_bessel_k(nu, 2.0 * kPi * al * xi);
  };
  a.decay = Decay::algebraic(2.0 * beta, std::pow(a2, -beta) * std::pow(1.0 + a2, beta) + 1.0);
  return make_analytic(std::move(a), dim, "inverse_multiquadric");
}

RadialFunction make_wendland33(int dim) {
  RationalPoly one_minus{Rational(1), Rational(-1)};
  RationalPoly p = one_minus * one_minus * one_minus * RationalPoly{Rational(1), Rational(3)};
  return make_piecewise_exact({Rational(0), Rational(1)}, {p}, dim, "wendland33");
}

RadialFunction make_constant(double value, int dim) {
  Analytic a;
  a.value = [value](double) { return value; };
  a.jet = [value](const Series& r) { return Series(r.order(), value); };
  return make_analytic(std::move(a), dim, "constant");
}

// Combinators.

RadialFunction scale(const RadialFunction& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("scale factor must be positive");
  if (lambda == 1.0) return f;
  if (const auto* pp = f.as<PiecewisePoly>()) {
    PiecewisePoly out;
    out.derivative_order = pp->derivative_order;
    for (double b : pp->breaks) out.breaks.push_back(b / lambda);
    for (const auto& p : pp->pieces) out.pieces.push_back(p.compose_linear(lambda, 0.0));
    return piecewise_unchecked(std::move(out), f.dim(), "scale");
  }
  if (const auto* g = f.as<GaussianPoly>()) {
    return make_node(GaussianPoly{g->poly.compose_linear(lambda, 0.0), g->rate * lambda * lambda, std::nullopt},
                     f.dim(), "scale");
  }
  if (const auto* s = f.as<Scaled>()) return scale(s->inner, s->factor * lambda);
  return make_node(Scaled{f, lambda}, f.dim(), "scale");
}

RadialFunction mixture(const RadialFunction& omega, const ScaleMeasure& nu) {
  if (!omega.bounded() || !std::isfinite(omega(0.0))) throw std::domain_error("mixture base must be bounded");
  if (!(nu.total_mass() > 0.0) || !std::isfinite(nu.total_mass()))
    throw std::domain_error("mixture measure must have finite mass");
  return make_node(Mixture{omega, nu}, omega.dim(), "mixture");
}

RadialFunction product(const RadialFunction& f, const RadialFunction& g) {
  if (f.dim() != g.dim()) throw std::domain_error("product: dimension mismatch");
  const auto* pf = f.as<PiecewisePoly>();
  const auto* pg = g.as<PiecewisePoly>();
  if (pf && pg) {
    const double R = std::min(pf->radius(), pg->radius());
    std::set<double> cut{0.0, R};
    for (double b : pf->breaks)
      if (b < R) cut.insert(b);
    for (double b : pg->breaks)
      if (b < R) cut.insert(b);
    PiecewisePoly out;
    out.breaks.assign(cut.begin(), cut.end());
    for (std::size_t i = 0; i + 1 < out.breaks.size(); ++i) {
      const double mid = 0.5 * (out.breaks[i] + out.breaks[i + 1]);
      out.pieces.push_back(pf->pieces[pf->piece_index(mid, Side::Right)] *
                           pg->pieces[pg->piece_index(mid, Side::Right)]);
    }
    if (pf->exact() && pg->exact()) {
      std::set<Rational> ecut{Rational(0)};
      const Rational ER = std::min(pf->exact_breaks.back(), pg->exact_breaks.back());
      ecut.insert(ER);
      for (const auto& b : pf->exact_breaks)
        if (b < ER) ecut.insert(b);
      for (const auto& b : pg->exact_breaks)
        if (b < ER) ecut.insert(b);
      out.exact_breaks.assign(ecut.begin(), ecut.end());
      for (std::size_t i = 0; i + 1 < out.exact_breaks.size(); ++i) {
        const double mid = 0.5 * (out.breaks[i] + out.breaks[i + 1]);
        out.exact_pieces.push_back(pf->exact_pieces[pf->piece_index(mid, Side::Right)] *
                                   pg->exact_pieces[pg->piece_index(mid, Side::Right)]);
      }
    }
    return piecewise_unchecked(std::move(out), f.dim(), "product");
  }
  const auto* gf = f.as<GaussianPoly>();
  const auto* gg = g.as<GaussianPoly>();
  if (gf && gg) return make_node(GaussianPoly{gf->poly * gg->poly, gf->rate + gg->rate, std::nullopt}, f.dim(), "product");
  return make_node(Product{f, g}, f.dim(), "product");
}

RadialFunction convolve(const RadialFunction& f, const RadialFunction& g) {
  if (f.dim() != g.dim()) throw std::domain_error("convolve: dimension mismatch");
  if (!f.integrable() || !g.integrable()) throw std::domain_error("convolve: both factors must be integrable");
  const auto* pf = f.as<PiecewisePoly>();
  const auto* pg = g.as<PiecewisePoly>();
  if (f.dim() == 1 && pf && pg) return piecewise_unchecked(convolve_piecewise(*pf, *pg), 1, "convolve");
  return make_node(Convolution{f, g}, f.dim(), "convolve");
}

namespace {

// Continuity of the even (j even) or odd (j odd) extension of the j-th derivative.
void require_continuous(const PiecewisePoly& pp, int j, const std::string& label) {
  const std::size_t n = pp.pieces.size();
  auto fail = [&](double x) {
    throw NotDifferentiable("derivative of '" + label + "': order " + std::to_string(j) +
                                " derivative is discontinuous at r = " + std::to_string(x),
                            x);
  };
  if (pp.exact()) {
    if (j % 2 == 1 && pp.exact_pieces[0].eval_exact(Rational(0)) != Rational(0)) fail(0.0);
    for (std::size_t i = 1; i < n; ++i)
      if (pp.exact_pieces[i - 1].eval_exact(pp.exact_breaks[i]) != pp.exact_pieces[i].eval_exact(pp.exact_breaks[i]))
        fail(pp.breaks[i]);
    if (pp.exact_pieces[n - 1].eval_exact(pp.exact_breaks[n]) != Rational(0)) fail(pp.breaks[n]);
    return;
  }
  const double tol = 1e-10 * poly_scale(pp);
  if (j % 2 == 1 && std::abs(pp.pieces[0](0.0)) > tol) fail(0.0);
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(pp.pieces[i - 1](pp.breaks[i]) - pp.pieces[i](pp.breaks[i])) > tol) fail(pp.breaks[i]);
  if (std::abs(pp.pieces[n - 1](pp.breaks[n])) > tol) fail(pp.breaks[n]);
}

}  // namespace

RadialFunction derivative(const RadialFunction& f, int k) {
  if (k < 0) throw std::domain_error("derivative order must be nonnegative");
  if (k == 0) return f;
  if (const auto* pp = f.as<PiecewisePoly>()) {
    PiecewisePoly cur = *pp;
    for (int step = 0; step < k; ++step) {
      require_continuous(cur, cur.derivative_order, f.label());
      for (auto& p : cur.pieces) p = p.derivative();
      for (auto& p : cur.exact_pieces) p = p.derivative();
      ++cur.derivative_order;
    }
    return piecewise_unchecked(std::move(cur), f.dim(), "d" + std::to_string(k) + "(" + f.label() + ")");
  }
  if (const auto* g = f.as<GaussianPoly>()) {
    Poly p = g->poly;
    for (int step = 0; step < k; ++step) p = p.derivative() - Poly{0.0, 2.0 * g->rate} * p;
    auto node = std::make_shared<Node>();
    node->dim = f.dim();
    node->label = "d" + std::to_string(k) + "(" + f.label() + ")";
    node->rep = GaussianPoly{std::move(p), g->rate, std::nullopt};
    return RadialFunction(std::move(node));
  }
  throw UnsupportedOperation("derivative is defined for piecewise polynomial and Gaussian profiles only");
}

RadialFunction linear_combination(const std::vector<std::pair<double, RadialFunction>>& terms) {
  if (terms.empty()) throw std::domain_error("linear_combination needs at least one term");
  std::set<double> cut{0.0};
  const int dim = terms.front().second.dim();
  for (const auto& [c, f] : terms) {
    const auto* pp = f.as<PiecewisePoly>();
    if (!pp) throw UnsupportedOperation("linear_combination supports piecewise polynomial terms only");
    if (f.dim() != dim) throw std::domain_error("linear_combination: dimension mismatch");
    cut.insert(pp->breaks.begin(), pp->breaks.end());
  }
  PiecewisePoly out;
  out.breaks.assign(cut.begin(), cut.end());
  for (std::size_t i = 0; i + 1 < out.breaks.size(); ++i) {
    const double mid = 0.5 * (out.breaks[i] + out.breaks[i + 1]);
    Poly sum;
    for (const auto& [c, f] : terms) {
      const auto* pp = f.as<PiecewisePoly>();
      if (mid < pp->radius()) sum = sum + pp->pieces[pp->piece_index(mid, Side::Right)] * c;
    }
    out.pieces.push_back(sum);
  }
  return piecewise_unchecked(std::move(out), dim, "combination");
}

}  // namespace ppd
