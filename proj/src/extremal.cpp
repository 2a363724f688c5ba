#include "ppd/extremal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ppd/criteria.hpp"
#include "ppd/errors.hpp"
#include "ppd/quadrature.hpp"
#include "ppd/transform.hpp"

namespace ppd {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr cplx kI(0.0, 1.0);

// Contour moments (1 / 2 pi i) \oint (z - c)^k F'/F dz, k = 0, 1, 2, about the
// cell center c.
struct Moments {
  std::array<cplx, 3> m{};

  Moments() = default;
  explicit Moments(double v) { m.fill(cplx(v)); }

  Moments& operator+=(const Moments& o) {
    for (int k = 0; k < 3; ++k) m[k] += o.m[k];
    return *this;
  }
  friend Moments operator+(Moments a, const Moments& b) { return a += b; }
  friend Moments operator-(Moments a, const Moments& b) {
    for (int k = 0; k < 3; ++k) a.m[k] -= b.m[k];
    return a;
  }
  friend Moments operator*(Moments a, double s) {
    for (auto& v : a.m) v *= s;
    return a;
  }
  double magnitude() const { return std::abs(m[0]) + std::abs(m[1]) + std::abs(m[2]); }
};

class ZeroSearch {
 public:
  ZeroSearch(const RadialFunction& f, double tol) : f_(f), tol_(tol), norm_(std::abs(analytic_extension(f, 0.0))) {}

  // Empty when the contour passes too close to a zero.
  std::optional<Moments> moments(const Rect& c) const {
    const std::array<cplx, 5> corner{cplx(c.re0, c.im0), cplx(c.re1, c.im0), cplx(c.re1, c.im1), cplx(c.re0, c.im1),
                                     cplx(c.re0, c.im0)};
    const cplx center(0.5 * (c.re0 + c.re1), 0.5 * (c.im0 + c.im1));
    Moments total;
    double err_total = 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-8;
    opt.rel_tol = 1e-10;
    opt.max_panels = 400;
    for (int e = 0; e < 4; ++e) {
      const cplx a = corner[e];
      const cplx d = corner[e + 1] - a;
      double err = 0.0;
      const Moments edge = quad::integrate<Moments>(
          [&](double t) {
            const cplx z = a + t * d;
            const cplx w = analytic_extension_derivative(f_, z) / analytic_extension(f_, z) * d;
            const cplx u = z - center;
            Moments r;
            r.m = {w, u * w, u * u * w};
            return r;
          },
          0.0, 1.0, opt, {}, &err);
      total += edge;
      err_total += err;
    }
    for (auto& v : total.m) v /= 2.0 * kPi * kI;
    err_total /= 2.0 * kPi;
    const cplx n = total.m[0];
    if (!std::isfinite(n.real()) || !std::isfinite(n.imag())) return std::nullopt;
    if (std::abs(n.real() - std::round(n.real())) > 1e-3 || std::abs(n.imag()) > 1e-3 || err_total > 1e-3)
      return std::nullopt;
    return total;
  }

  void process(const Rect& c, const Moments& mom, std::vector<Zero>& out, int depth) const {
    const int n = static_cast<int>(std::lround(mom.m[0].real()));
    if (n <= 0) return;
    const double size = std::max(c.re1 - c.re0, c.im1 - c.im0);
    const cplx shift = mom.m[1] / static_cast<double>(n);
    const cplx var = mom.m[2] / static_cast<double>(n) - shift * shift;
    const cplx mean = cplx(0.5 * (c.re0 + c.re1), 0.5 * (c.im0 + c.im1)) + shift;
    // Zeros closer than 1e-4 are one cluster: rounding splits double zeros
    // where |F| is small.
    if (n == 1 || std::abs(var) <= std::max(1e-6 * size * size, 1e-8) || size < 1e-7 || depth > 60) {
      out.push_back(polish(mean, n, c));
      return;
    }
    static constexpr std::array<std::pair<double, double>, 6> kSplits{
        {{0.5371, 0.4629}, {0.4483, 0.5517}, {0.5813, 0.4139}, {0.4027, 0.5911}, {0.6234, 0.3797}, {0.3612, 0.6387}}};
    for (const auto& [fr, fi] : kSplits) {
      const double xr = c.re0 + fr * (c.re1 - c.re0);
      const double xi = c.im0 + fi * (c.im1 - c.im0);
      const std::array<Rect, 4> cells{Rect{c.re0, xr, c.im0, xi}, Rect{xr, c.re1, c.im0, xi},
                                      Rect{c.re0, xr, xi, c.im1}, Rect{xr, c.re1, xi, c.im1}};
      std::array<std::optional<Moments>, 4> sub;
      int sum = 0;
      bool ok = true;
      for (int k = 0; k < 4 && ok; ++k) {
        sub[k] = moments(cells[k]);
        ok = sub[k].has_value();
        if (ok) sum += static_cast<int>(std::lround(sub[k]->m[0].real()));
      }
      if (!ok || sum != n) continue;
      for (int k = 0; k < 4; ++k) process(cells[k], *sub[k], out, depth + 1);
      return;
    }
    throw std::runtime_error("find_zeros: every subdivision contour passes too close to a zero");
  }

 private:
  cplx F(cplx z) const { return analytic_extension(f_, z); }
  cplx dF(cplx z) const { return analytic_extension_derivative(f_, z); }

  Zero polish(cplx z0, int n, const Rect& c) const {
    const double size = std::max(c.re1 - c.re0, c.im1 - c.im0);
    if (n % 2 == 0 && std::abs(z0.imag()) < kRealTolerance) {
      // Real zero of even order: F' changes sign there.
      const double x0 = z0.real();
      auto g = [&](double x) { return dF(cplx(x, 0.0)).real(); };
      double h = 1e-6 * std::max(1.0, std::abs(x0));
      while (h < size && (g(x0 - h) > 0) == (g(x0 + h) > 0)) h *= 4.0;
      double x = x0;
      if (h < size) x = quad::bisect(g, x0 - h, x0 + h, 1e-16);
      return {cplx(x, 0.0), n, ZeroClass::Real};
    }
    cplx z = z0;
    for (int it = 0; it < 60; ++it) {
      const cplx d = F(z) / dF(z) * static_cast<double>(n);
      if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) break;
      z -= d;
      if (std::abs(d) <= 1e-15 * std::max(1.0, std::abs(z)) || std::abs(F(z)) <= tol_ * norm_ * 1e-4) break;
    }
    if (!(std::abs(z - z0) < size) || std::abs(F(z)) > std::abs(F(z0))) z = z0;
    if (std::abs(z.imag()) < kRealTolerance) return {cplx(z.real(), 0.0), n, ZeroClass::Real};
    return {z, n, ZeroClass::NonReal};
  }

  const RadialFunction& f_;
  double tol_;
  double norm_;
};

std::vector<Zero> merge_real_pairs(std::vector<Zero> zs) {
  std::sort(zs.begin(), zs.end(), [](const Zero& a, const Zero& b) {
    return a.location.real() != b.location.real() ? a.location.real() < b.location.real()
                                                   : a.location.imag() < b.location.imag();
  });
  std::vector<Zero> out;
  for (const auto& z : zs) {
    if (!out.empty()) {
      Zero& last = out.back();
      if (std::abs(last.location.imag()) < kRealTolerance && std::abs(z.location.imag()) < kRealTolerance &&
          std::abs(last.location - z.location) < 1e-6 * std::max(1.0, std::abs(z.location))) {
        last.location = cplx(0.5 * (last.location.real() + z.location.real()), 0.0);
        last.multiplicity += z.multiplicity;
        last.cls = ZeroClass::Real;
        continue;
      }
    }
    out.push_back(z);
  }
  return out;
}

std::string region_text(const Rect& r) {
  std::ostringstream os;
  os << "[" << r.re0 << ", " << r.re1 << "] x [" << r.im0 << ", " << r.im1 << "]i";
  return os.str();
}

}  // namespace

int ZeroReport::count(ZeroClass c) const {
  int n = 0;
  for (const auto& z : zeros)
    if (z.cls == c) n += z.multiplicity;
  return n;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Extremal: return "EXTREMAL";
    case Status::NotExtremal: return "NOT_EXTREMAL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::AllZerosReal: return "ALL_ZEROS_REAL";
    case Reason::NonRealZeros: return "NON_REAL_ZEROS";
    case Reason::NonDiracMixture: return "NON_DIRAC_MIXTURE";
    case Reason::DiracMixture: return "DIRAC_MIXTURE";
    case Reason::HermiteRealRoots: return "HERMITE_REAL_ROOTS";
    case Reason::HermiteFewRealZeros: return "HERMITE_FEW_REAL_ZEROS";
    case Reason::HermiteUndecided: return "HERMITE_UNDECIDED";
  }
  return "?";
}

const char* to_string(ZeroClass c) { return c == ZeroClass::Real ? "Real" : "NonReal"; }

const char* to_string(HermiteRegion r) {
  switch (r) {
    case HermiteRegion::Exterior: return "Exterior";
    case HermiteRegion::Interior: return "Interior";
    case HermiteRegion::Boundary: return "Boundary";
  }
  return "?";
}

const char* to_string(HermiteSide s) {
  switch (s) {
    case HermiteSide::None: return "None";
    case HermiteSide::TimeType: return "TimeType";
    case HermiteSide::FrequencyType: return "FrequencyType";
    case HermiteSide::Both: return "Both";
  }
  return "?";
}

ZeroReport find_zeros(const RadialFunction& f, const Rect& region, double tol) {
  if (!std::isfinite(f.support_radius())) throw PreconditionFailed("find_zeros needs a compactly supported function");
  if (!(region.re1 > region.re0) || !(region.im1 > region.im0)) throw std::domain_error("find_zeros: empty region");
  ZeroSearch search(f, tol);
  const double size = std::max(region.re1 - region.re0, region.im1 - region.im0);
  for (int attempt = 0; attempt <= 5; ++attempt) {
    const double grow = 1.37e-3 * size * attempt;
    const Rect r{region.re0 - grow, region.re1 + grow, region.im0 - grow, region.im1 + grow};
    const auto mom = search.moments(r);
    if (!mom) continue;
    ZeroReport rep;
    rep.region = r;
    rep.total_count = static_cast<int>(std::lround(mom->m[0].real()));
    std::vector<Zero> zs;
    search.process(r, *mom, zs, 0);
    rep.zeros = merge_real_pairs(std::move(zs));
    return rep;
  }
  throw std::runtime_error("find_zeros: the region boundary passes too close to a zero after 5 retries");
}

Certificate certify_compact(const RadialFunction& f, const Rect& region) {
  const double R = f.support_radius();
  if (!std::isfinite(R)) throw PreconditionFailed("certify_compact needs a compactly supported function");
  const Verdict nonneg = check_nonneg(f, R);
  if (!nonneg.passed) throw PreconditionFailed("certify_compact: the function takes negative values");
  const double xi_max = std::max({std::abs(region.re0), std::abs(region.re1), 1.0});
  const Verdict posdef = check_posdef_fourier(f, xi_max);
  if (!posdef.passed) throw PreconditionFailed("certify_compact: the transform takes negative values");

  Certificate c;
  c.zeros = find_zeros(f, region);
  c.searched_region = c.zeros->region;
  const int nonreal = c.zeros->count(ZeroClass::NonReal);
  std::ostringstream os;
  if (nonreal == 0) {
    c.status = Status::Extremal;
    c.reason = Reason::AllZerosReal;
    os << "all " << c.zeros->total_count << " zeros of the transform extension in " << region_text(*c.searched_region)
       << " are real; the certificate covers this region only";
  } else {
    c.status = Status::Inconclusive;
    c.reason = Reason::NonRealZeros;
    os << nonreal << " non-real zeros in " << region_text(*c.searched_region)
       << "; elements of an interval through f have at most " << nonreal << " non-real zeros";
  }
  c.text = os.str();
  return c;
}

Certificate not_extremal_mixture(const RadialFunction& omega, const ScaleMeasure& nu) {
  const double X = std::isfinite(omega.support_radius()) ? omega.support_radius() : omega.decay().horizon(1e-12);
  const double f0 = omega(0.0);
  double prev = f0;
  for (int i = 1; i <= 2000; ++i) {
    const double v = omega(X * i / 2000.0);
    if (v > prev + 1e-12 * std::abs(f0)) throw PreconditionFailed("not_extremal_mixture: profile is not nonincreasing");
    prev = v;
  }
  if (!(omega(1e-3 * X) < f0)) throw PreconditionFailed("not_extremal_mixture: profile is not decreasing near 0");

  Certificate c;
  const auto s = nu.support();
  if (s.size() >= 2) {
    c.status = Status::NotExtremal;
    c.reason = Reason::NonDiracMixture;
    c.scales = {s.front(), s.back()};
    std::ostringstream os;
    os << "the mixing measure charges the separated scales " << s.front() << " and " << s.back()
       << ", splitting f into two non-proportional parts";
    c.text = os.str();
  } else {
    c.status = Status::Inconclusive;
    c.reason = Reason::DiracMixture;
    c.scales = {s.front()};
    c.text = "single scale: f is a dilation of the kernel and is extremal exactly when the kernel is";
  }
  return c;
}

double hermite_q(double s, double a, double b) {
  const double u = s * a + 2.0 * b;
  const double v = b - 0.25;
  return u * u + 2.0 * v * v;
}

HermiteClass classify_hermite4(double a, double b, double tol) {
  HermiteClass c{HermiteRegion::Interior, HermiteSide::None, hermite_q(1.0, a, b), hermite_q(-1.0, a, b)};
  const double top = std::max(c.q_plus, c.q_minus);
  if (top > 0.125 + tol) {
    c.region = HermiteRegion::Exterior;
  } else if (top >= 0.125 - tol) {
    c.region = HermiteRegion::Boundary;
    // Q(-1) = 1/8 is the discriminant of f_{a,b} vanishing.
    const bool time = std::abs(c.q_minus - 0.125) <= tol;
    const bool freq = std::abs(c.q_plus - 0.125) <= tol;
    c.side = time && freq ? HermiteSide::Both : time ? HermiteSide::TimeType : HermiteSide::FrequencyType;
  }
  return c;
}

namespace {

struct RootCount {
  int real = 0;
  bool even = true;
};

// Real zeros in x of q(x^2), q given by its coefficients in Y = x^2.
RootCount count_real_zeros(std::vector<double> q, double tol) {
  while (!q.empty() && q.back() == 0.0) q.pop_back();
  RootCount rc;
  int zero_mult = 0;
  while (!q.empty() && q.front() == 0.0) {
    q.erase(q.begin());
    ++zero_mult;
  }
  const int n = static_cast<int>(q.size()) - 1;
  std::vector<cplx> roots;
  if (n > 0) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -q[i] / q[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i]);
  }
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int m = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= tol * std::max(1.0, std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++m;
      }
    }
    const cplx c = sum / static_cast<double>(m);
    const double scale = std::max(1.0, std::abs(c));
    if (std::abs(c.imag()) > tol * scale || c.real() < -tol * scale) continue;
    if (std::abs(c.real()) <= tol * scale) {
      zero_mult += m;
      continue;
    }
    rc.real += 2 * m;
    rc.even = rc.even && m % 2 == 0;
  }
  rc.real += 2 * zero_mult;
  rc.even = rc.even && zero_mult % 2 == 0;
  return rc;
}

std::vector<double> even_part(const Poly& p) {
  std::vector<double> q;
  for (int k = 0; k <= p.degree(); k += 2) q.push_back(p.coeff(k));
  return q;
}

}  // namespace

Certificate certify_hermite(const RadialFunction& f, double tol) {
  const auto* g = f.as<GaussianPoly>();
  if (!g || f.dim() != 1) throw UnsupportedOperation("certify_hermite needs P(x) exp(-a x^2) on the line");
  const int deg = g->poly.degree();
  if (deg < 0 || deg % 4 != 0) throw std::domain_error("certify_hermite: the degree of P must be a multiple of 4");
  for (int k = 1; k <= deg; k += 2)
    if (g->poly.coeff(k) != 0.0) throw std::domain_error("certify_hermite: P must be even");

  // Dilating to rate pi keeps extremality and makes P~ the transform factor.
  const double s = std::sqrt(g->rate / kPi);
  std::vector<double> c(deg + 1);
  for (int k = 0; k <= deg; ++k) c[k] = g->poly.coeff(k) / std::pow(s, k);
  const GaussianPoly time{Poly(c), kPi, std::nullopt};
  const GaussianPoly freq = gaussian_poly_transform(time, 1);

  const auto ft = make_gaussian_poly(time.poly, kPi, 1);
  const auto ff = make_gaussian_poly(freq.poly, freq.rate, 1);
  double norm = 0.0;
  for (double v : c) norm = std::max(norm, std::abs(v));
  const double radius = 4.0 + std::sqrt(deg + 1.0);
  if (!check_nonneg(ft, radius, 1e-12 * norm).passed || !check_nonneg(ff, radius, 1e-12 * norm).passed)
    throw PreconditionFailed("certify_hermite: the function is not positive positive definite");

  const RootCount rt = count_real_zeros(even_part(time.poly), tol);
  const RootCount rf = count_real_zeros(even_part(freq.poly), tol);
  Certificate cert;
  std::ostringstream os;
  os << "degree " << deg << "; real zeros: P " << rt.real << ", P~ " << rf.real;
  if ((rt.real == deg && rt.even) || (rf.real == deg && rf.even)) {
    cert.status = Status::Extremal;
    cert.reason = Reason::HermiteRealRoots;
    os << "; " << (rt.real == deg && rt.even ? "P" : "P~") << " has only real zeros";
  } else if (rt.real < 4 && rf.real < 4) {
    cert.status = Status::NotExtremal;
    cert.reason = Reason::HermiteFewRealZeros;
    os << "; neither P nor P~ has 4 real zeros";
  } else {
    cert.status = Status::Inconclusive;
    cert.reason = Reason::HermiteUndecided;
  }
  cert.text = os.str();
  return cert;
}

Certificate certify_hermite(double a, double b, double tol) { return certify_hermite(make_hermite_quartic(a, b), tol); }

DoubleZero solve_double_zero(double theta) {
  if (!(theta > 0.0 && theta < 0.5 * kPi)) throw std::domain_error("solve_double_zero needs theta in (0, pi/2)");
  auto minimum = [theta](double r) {
    const auto f = make_f_zeta(r, theta);
    return quad::grid_minimum([&](double x) { return f(x); }, 0.0, 1.99, 4001);
  };
  const double lo = 3.0;
  const double hi = 4.0;
  if (!(minimum(lo).value < 0.0) || !(minimum(hi).value > 0.0))
    throw NoSolution("solve_double_zero: no bracket on r in [3, 4]");
  const double r = quad::bisect([&](double t) { return minimum(t).value; }, lo, hi, 1e-15);
  const auto m = minimum(r);
  if (std::abs(m.value) > 1e-10) throw NoSolution("solve_double_zero: bisection did not reach a double zero");
  return {r, m.x};
}

namespace {

std::array<double, 6> phi_jet(double x) {
  static const std::array<RadialFunction, 6> d = [] {
    std::array<RadialFunction, 6> out;
    const auto phi = make_phi();
    out[0] = phi;
    for (int k = 1; k < 6; ++k) out[k] = derivative(phi, k);
    return out;
  }();
  std::array<double, 6> v{};
  for (int k = 0; k < 6; ++k) v[k] = d[k](x);
  return v;
}

}  // namespace

double zeta_denominator(double x) {
  const auto p = phi_jet(x);
  return p[2] * p[5] - p[3] * p[4];
}

ZetaParameters recover_zeta(double x) {
  if (!(x > 0.0 && x < 2.0)) throw std::domain_error("recover_zeta needs x in (0, 2)");
  const auto p = phi_jet(x);
  const double den = p[2] * p[5] - p[3] * p[4];
  if (std::abs(den) < 1e-8) throw PreconditionFailed("recover_zeta: the denominator vanishes at x");
  const double two_cos_over_rho2 = (p[1] * p[4] - p[0] * p[5]) / den;
  const double inv_rho4 = (p[1] * p[2] - p[0] * p[3]) / -den;
  if (!(inv_rho4 > 0.0)) throw NoSolution("recover_zeta: 1/rho^4 is not positive");
  const double rho = std::pow(inv_rho4, -0.25);
  const double cos2psi = 0.5 * two_cos_over_rho2 * rho * rho;
  if (std::abs(cos2psi) > 1.0) throw NoSolution("recover_zeta: |cos 2 psi| exceeds 1");
  return {rho, 0.5 * std::acos(cos2psi)};
}

}  // namespace ppd
