#include "ppd/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "ppd/quadrature.hpp"
#include "ppd/transform.hpp"

namespace ppd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

Verdict finish(double margin, double at, double value, std::string notes = {}) {
  Verdict v;
  v.passed = margin >= 0.0;
  v.margin = margin;
  if (!v.passed) v.witness = Witness{at, value};
  v.notes = std::move(notes);
  return v;
}

std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  g.back() = b;
  return g;
}

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  g.back() = b;
  return g;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

double decay_probe(const RadialFunction& f, double tol) {
  const double R = f.support_radius();
  if (std::isfinite(R)) return 4.0 * R;
  return f.decay().horizon(0.5 * tol);
}

double profile_derivative(const RadialFunction& f, double r, int k, Side side) {
  if (k == 0) return f(r);
  if (f.has_jet()) return f.jet(r, k, side).derivative(k);
  if (k == 1) {
    const double h = std::cbrt(kEps) * std::max(1.0, std::abs(r));
    return (f(r + h) - f(r - h)) / (2.0 * h);
  }
  if (k == 2) {
    const double h = std::pow(kEps, 0.25) * std::max(1.0, std::abs(r));
    return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
  }
  throw UnsupportedOperation("finite differences are provided up to order 2");
}

ScalarFunction generator_of(const RadialFunction& f) {
  ScalarFunction g;
  g.label = f.label();
  g.value = [f](double t) { return f(std::sqrt(t)); };
  if (const auto* a = f.as<Analytic>()) {
    if (a->generator) g.series = a->generator;
  }
  return g;
}

Verdict check_nonneg(const RadialFunction& f, double radius, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("check_nonneg needs tol > 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::domain_error("check_nonneg needs a finite radius > 0");
  auto xs = uniform_grid(0.0, radius, 4001);
  for (double b : f.breakpoints())
    if (b <= radius) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  std::size_t worst = 0;
  std::vector<double> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vals[i] = f(xs[i]);
    if (vals[i] < vals[worst]) worst = i;
  }
  double x = xs[worst];
  double v = vals[worst];
  const double lo = xs[worst == 0 ? 0 : worst - 1];
  const double hi = xs[std::min(worst + 1, xs.size() - 1)];
  if (hi > lo) {
    const auto m = quad::golden_section([&](double t) { return f(t); }, lo, hi);
    if (m.value < v) {
      x = m.x;
      v = m.value;
    }
  }
  return finish(v + tol, x, v);
}

Verdict check_posdef_fourier(const RadialFunction& f, double xi_max, double tol, int points) {
  if (!(xi_max > 0.0) || !std::isfinite(xi_max)) throw std::domain_error("check_posdef_fourier needs xi_max > 0");
  if (points < 2) throw std::domain_error("check_posdef_fourier needs at least two grid points");
  std::string notes;
  std::function<double(double)> F;
  double start = 0.0;
  if (f.integrable()) {
    F = [&](double xi) { return fourier_radial(f, xi); };
  } else {
    const auto kind = f.decay().kind;
    if (kind == Decay::Kind::Unknown || (f.dim() != 1 && f.dim() != 3))
      throw UnsupportedOperation("no Fourier transform available for '" + f.label() + "'");
    F = [&](double xi) { return fourier_radial_improper(f, xi); };
    start = xi_max / (points - 1);
    notes = "improper oscillatory integral; xi = 0 omitted (transform is +inf there)";
  }
  auto xs = uniform_grid(start, xi_max, points);
  std::size_t worst = 0;
  std::vector<double> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vals[i] = F(xs[i]);
    if (vals[i] < vals[worst]) worst = i;
  }
  double x = xs[worst];
  double v = vals[worst];
  const double lo = xs[worst == 0 ? 0 : worst - 1];
  const double hi = xs[std::min(worst + 1, xs.size() - 1)];
  if (hi > lo) {
    const auto m = quad::golden_section(F, lo, hi, 1e-10);
    if (m.value < v) {
      x = m.x;
      v = m.value;
    }
  }
  return finish(v + tol, x, v, notes);
}

Verdict check_posdef_gram(const RadialFunction& f, int n, int trials, double tol, std::uint64_t seed,
                          double spread) {
  if (n < 2) throw std::domain_error("check_posdef_gram needs n >= 2");
  if (trials < 1) throw std::domain_error("check_posdef_gram needs at least one trial");
  if (!(spread > 0.0)) {
    const double R = f.support_radius();
    const double H = f.decay().horizon(1e-2);
    spread = std::isfinite(R) ? R : (std::isfinite(H) && H > 0.0 ? H : 2.0);
  }
  const int d = f.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  double worst = std::numeric_limits<double>::infinity();
  int worst_trial = 0;
  Eigen::MatrixXd pts(n, d);
  Eigen::MatrixXd G(n, n);
  for (int trial = 0; trial < trials; ++trial) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k) pts(i, k) = u(rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) G(i, j) = G(j, i) = f((pts.row(i) - pts.row(j)).norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    const double m = es.eigenvalues().minCoeff();
    if (m < worst) {
      worst = m;
      worst_trial = trial;
    }
  }
  return finish(worst + tol, worst_trial, worst,
                "seed=" + std::to_string(seed) + " spread=" + std::to_string(spread) +
                    "; witness x is the trial index, value the minimum eigenvalue");
}

namespace {

// Smallest slack of f >= 0, f nonincreasing and f convex on the grid.
struct PolyaScan {
  double slack;
  double at;
  double value;
};

PolyaScan polya_scan(const RadialFunction& f, const std::vector<double>& xs, double allowance) {
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
  PolyaScan s{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  auto consider = [&](double slack, double x, double value) {
    if (slack < s.slack) s = {slack, x, value};
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    consider(v[i] + allowance, xs[i], v[i]);
    if (i + 1 < xs.size()) consider(v[i] - v[i + 1] + allowance, xs[i], v[i + 1] - v[i]);
    if (i > 0 && i + 1 < xs.size()) {
      // second divided difference scaled to the uniform-step form
      const double h0 = xs[i] - xs[i - 1];
      const double h1 = xs[i + 1] - xs[i];
      const double dd = 2.0 * ((v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0) / (h0 + h1);
      const double second = dd * h0 * h1;
      consider(second + allowance, xs[i], second);
    }
  }
  return s;
}

}  // namespace

Verdict check_polya(const RadialFunction& f, double tol) {
  if (f.dim() != 1) throw PreconditionFailed("the Polya criterion is stated in dimension 1");
  const double scale = std::max(std::abs(f(0.0)), std::numeric_limits<double>::min());
  const double X = decay_probe(f, tol);
  if (!std::isfinite(X)) return finish(-1.0, 0.0, f(0.0), "no decay information to place the probe");
  const double allowance = tol * scale;
  auto xs = uniform_grid(0.0, X, 2001);
  PolyaScan s = polya_scan(f, xs, allowance);
  // refinement pass around the smallest slack
  const double h = X / 2000.0;
  const auto local = uniform_grid(std::max(0.0, s.at - h), std::min(X, s.at + h), 2001);
  const PolyaScan r = polya_scan(f, local, allowance);
  if (r.slack < s.slack) s = r;
  const double tail = f(X);
  std::string notes = "probe radius " + std::to_string(X);
  if (allowance - std::abs(tail) < s.slack) s = {allowance - std::abs(tail), X, tail};
  return finish(s.slack, s.at, s.value, notes);
}

namespace {

// Linear profile c (1 - r / R) on [0, R].
std::optional<std::pair<double, double>> triangle_shape(const RadialFunction& f) {
  const auto* pp = f.as<PiecewisePoly>();
  if (!pp) return std::nullopt;
  if (pp->pieces.size() != 1 || pp->pieces[0].degree() != 1) return std::nullopt;
  const double c = pp->pieces[0].coeff(0);
  const double R = pp->radius();
  if (!(c > 0.0) || std::abs(pp->pieces[0](R)) > 1e-14 * c) return std::nullopt;
  return std::make_pair(c, R);
}

}  // namespace

ScaleMeasure recover_polya_measure(const RadialFunction& f) {
  const Verdict v = check_polya(f);
  if (!v.passed) throw PreconditionFailed("recover_polya_measure: '" + f.label() + "' is not of Polya type");
  if (const auto* mix = f.as<Mixture>()) {
    if (const auto tri = triangle_shape(mix->base)) {
      // int c (1 - x / (R t))_+ dnu(t): push nu forward by t -> R t
      const auto [c, R] = *tri;
      std::vector<Atom> atoms;
      for (const auto& a : mix->measure.atoms()) atoms.push_back({R * a.t, c * a.mass});
      std::vector<double> grid;
      std::vector<double> dens;
      for (std::size_t i = 0; i < mix->measure.grid().size(); ++i) {
        grid.push_back(R * mix->measure.grid()[i]);
        dens.push_back(c * mix->measure.density()[i] / R);
      }
      return ScaleMeasure(std::move(atoms), std::move(grid), std::move(dens));
    }
  }
  const double scale = std::abs(f(0.0));
  const double R = f.support_radius();
  const double X = std::isfinite(R) ? R : f.decay().horizon(1e-12);
  if (!std::isfinite(X)) throw PreconditionFailed("recover_polya_measure needs a decay bound");
  // atoms: t times the slope jump of f at each kink
  std::vector<Atom> atoms;
  for (double b : f.breakpoints()) {
    if (b > X) continue;
    const double jump = profile_derivative(f, b, 1, Side::Right) - profile_derivative(f, b, 1, Side::Left);
    if (jump > 1e-8 * scale) atoms.push_back({b, b * jump});
  }
  // density: t f''(t) on a uniform grid, with a first node next to the origin
  const int n = 40001;
  std::vector<double> grid{X * 1e-12};
  std::vector<double> dens{0.0};
  double peak = 0.0;
  for (int i = 1; i < n; ++i) {
    const double t = X * i / (n - 1);
    const double rho = std::max(0.0, t * profile_derivative(f, t, 2, Side::Left));
    grid.push_back(t);
    dens.push_back(rho);
    peak = std::max(peak, rho);
  }
  if (peak * X <= 1e-8 * scale) {
    grid.clear();
    dens.clear();
  }
  if (atoms.empty() && grid.empty()) throw PreconditionFailed("recover_polya_measure found no mass");
  return ScaleMeasure(std::move(atoms), std::move(grid), std::move(dens));
}

namespace {

struct GneitingScan {
  double slack;
  double at;
  double value;
};

GneitingScan gneiting_scan(const std::function<double(double)>& g, const std::vector<double>& ts, double tol) {
  std::vector<double> v(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) v[i] = g(ts[i]);
  GneitingScan s{std::numeric_limits<double>::infinity(), ts.front(), 0.0};
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double h0 = ts[i] - ts[i - 1];
    const double h1 = ts[i + 1] - ts[i];
    const double dd = 2.0 * ((v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0) / (h0 + h1);
    // relative to the rounding scale of the divided difference
    const double unit = (std::abs(v[i - 1]) + 2.0 * std::abs(v[i]) + std::abs(v[i + 1])) / (h0 * h1) +
                        std::numeric_limits<double>::min();
    const double slack = dd / unit + tol;
    if (slack < s.slack) s = {slack, ts[i], dd};
  }
  return s;
}

}  // namespace

Verdict check_gneiting(const RadialFunction& f, double tol) {
  if (f.dim() != 1) throw PreconditionFailed("the Gneiting criterion is stated in dimension 1");
  if (!f.bounded()) throw UnsupportedOperation("'" + f.label() + "' is not differentiable at the origin");
  const double f0 = f(0.0);
  if (!(f0 > 0.0)) return finish(-1.0, 0.0, f0, "phi(0) must be positive");
  const double X = decay_probe(f, tol);
  if (!std::isfinite(X)) return finish(-1.0, 0.0, f0, "no decay information to place the probe");
  const double tail = f(X);
  if (std::abs(tail) >= tol * f0) return finish(tol * f0 - std::abs(tail), X, tail, "profile does not vanish at the probe");

  const double R = f.support_radius();
  const double top = std::isfinite(R) ? 4.0 * R * R : X * X;
  auto g = [&](double t) {
    const double s = std::sqrt(t);
    return (s * profile_derivative(f, s, 2, Side::Left) - profile_derivative(f, s, 1, Side::Left)) / t;
  };
  auto ts = log_grid(1e-10 * std::min(top, 1.0), top, 4001);
  GneitingScan s = gneiting_scan(g, ts, tol);
  const auto it = std::lower_bound(ts.begin(), ts.end(), s.at);
  if (it != ts.begin() && it + 1 != ts.end()) {
    const GneitingScan r = gneiting_scan(g, log_grid(*(it - 1), *(it + 1), 2001), tol);
    if (r.slack < s.slack) s = r;
  }
  return finish(s.slack, s.at, s.value,
                "convexity of (sqrt(t) phi''(sqrt(t)) - phi'(sqrt(t))) / t; witness in the t = x^2 variable");
}

Verdict check_completely_monotone(const ScalarFunction& g, int order_cap, double tol) {
  if (order_cap < 0 || order_cap > 8) throw std::domain_error("check_completely_monotone needs 0 <= order_cap <= 8");
  const auto ts = log_grid(1e-3, 1e3, 601);
  double worst = std::numeric_limits<double>::infinity();
  double at = 0.0;
  double value = 0.0;
  int worst_k = 0;
  for (double t : ts) {
    std::vector<double> der(order_cap + 1);
    std::vector<double> noise(order_cap + 1, 0.0);
    if (g.series) {
      const Series s = g.series(Series::variable(t, order_cap));
      for (int k = 0; k <= order_cap; ++k) der[k] = s.derivative(k);
    } else {
      der[0] = g.value(t);
      for (int k = 1; k <= order_cap; ++k) {
        // k-th central difference on k + 1 nodes
        const double h = t * std::min(0.1, 4.0 * std::pow(kEps, 1.0 / (k + 2)));
        double acc = 0.0;
        double binom = 1.0;
        double big = 0.0;
        for (int j = 0; j <= k; ++j) {
          const double v = g.value(t + (j - 0.5 * k) * h);
          acc += ((k - j) % 2 == 0 ? 1.0 : -1.0) * binom * v;
          big = std::max(big, std::abs(v));
          binom = binom * (k - j) / (j + 1);
        }
        der[k] = acc / std::pow(h, k);
        // rounding noise of the difference quotient
        noise[k] = 4.0 * std::pow(2.0, k) * kEps * big / std::pow(h, k);
      }
    }
    const double base = std::abs(der[0]);
    for (int k = 0; k <= order_cap; ++k) {
      const double signed_der = (k % 2 == 0 ? 1.0 : -1.0) * der[k];
      const double slack = signed_der + noise[k] + tol * (1.0 + factorial(k) * base / std::pow(t, k));
      if (slack < worst) {
        worst = slack;
        at = t;
        value = signed_der;
        worst_k = k;
      }
    }
  }
  return finish(worst, at, value, "worst derivative order k=" + std::to_string(worst_k) + "; value is (-1)^k g^(k)");
}

double polya_spectral_density(const ScaleMeasure& nu, double xi) {
  double s = 0.0;
  for (const auto& n : nu.nodes()) {
    const double u = kPi * n.t * xi;
    const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
    // (sin(pi t xi) / (t xi))^2 t / pi^2 = t sinc^2
    s += n.mass * n.t * sinc * sinc;
  }
  return s;
}

}  // namespace ppd
