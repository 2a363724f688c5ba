// Exact convolution of even piecewise polynomial profiles on the real line.

#include <algorithm>
#include <cstdint>

#include "ppd/radial.hpp"

namespace ppd {

namespace {

template <typename T>
struct LinePiece {
  T a;
  T b;
  Polynomial<T> p;
};

template <typename T>
struct Segment {
  T s;
  T e;
  Polynomial<T> h;
};

template <typename T>
std::vector<LinePiece<T>> mirror(const std::vector<T>& breaks, const std::vector<Polynomial<T>>& pieces) {
  std::vector<LinePiece<T>> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].is_zero()) continue;
    out.push_back({breaks[i], breaks[i + 1], pieces[i]});
    out.push_back({-breaks[i + 1], -breaks[i], pieces[i].reflect()});
  }
  return out;
}

template <typename T>
T binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return T(r);
}

// x^m-coefficients (polynomials in y) of the antiderivative in y of P(y) Q(x - y).
template <typename T>
std::vector<Polynomial<T>> kernel_antiderivative(const Polynomial<T>& P, const Polynomial<T>& Q) {
  const int dq = Q.degree();
  std::vector<Polynomial<T>> out;
  for (int m = 0; m <= dq; ++m) {
    Polynomial<T> inner;
    for (int j = m; j <= dq; ++j) {
      T c = Q.coeff(j) * binomial<T>(j, m);
      if ((j - m) % 2 == 1) c = -c;
      inner = inner + Polynomial<T>::monomial(j - m, c);
    }
    out.push_back((inner * P).antiderivative());
  }
  return out;
}

// sum_m x^m A_m(alpha x + beta)
template <typename T>
Polynomial<T> substitute(const std::vector<Polynomial<T>>& A, const T& alpha, const T& beta) {
  Polynomial<T> total;
  for (std::size_t m = 0; m < A.size(); ++m)
    total = total + A[m].compose_linear(alpha, beta) * Polynomial<T>::monomial(static_cast<int>(m));
  return total;
}

template <typename T>
PiecewisePoly convolve_impl(const std::vector<T>& fb, const std::vector<Polynomial<T>>& fp, const std::vector<T>& gb,
                            const std::vector<Polynomial<T>>& gp) {
  const auto F = mirror(fb, fp);
  const auto G = mirror(gb, gp);
  const T zero(0);
  const T one(1);
  const T two(2);
  std::vector<Segment<T>> segments;
  for (const auto& f : F) {
    for (const auto& g : G) {
      const auto A = kernel_antiderivative(f.p, g.p);
      std::vector<T> knots{f.a + g.a, f.a + g.b, f.b + g.a, f.b + g.b};
      std::sort(knots.begin(), knots.end());
      for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const T s = knots[k];
        const T e = knots[k + 1];
        if (!(s < e)) continue;
        if (e <= zero) continue;
        const T mid = (s + e) / two;
        // lower limit max(f.a, x - g.b), upper limit min(f.b, x - g.a)
        const bool lower_const = mid <= f.a + g.b;
        const bool upper_moving = mid <= f.b + g.a;
        Polynomial<T> up = upper_moving ? substitute(A, one, -g.a) : substitute(A, zero, f.b);
        Polynomial<T> lo = lower_const ? substitute(A, zero, f.a) : substitute(A, one, -g.b);
        segments.push_back({s, e, up - lo});
      }
    }
  }
  std::vector<T> cuts{zero};
  for (const auto& s : segments) {
    if (s.s > zero) cuts.push_back(s.s);
    cuts.push_back(s.e);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<T> breaks{cuts.front()};
  std::vector<Polynomial<T>> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Polynomial<T> sum;
    for (const auto& s : segments)
      if (s.s <= cuts[i] && cuts[i + 1] <= s.e) sum = sum + s.h;
    if (!pieces.empty() && pieces.back() == sum) {
      breaks.back() = cuts[i + 1];
    } else {
      pieces.push_back(sum);
      breaks.push_back(cuts[i + 1]);
    }
  }
  while (pieces.size() > 1 && pieces.back().is_zero()) {
    pieces.pop_back();
    breaks.pop_back();
  }

  PiecewisePoly out;
  for (const auto& b : breaks) out.breaks.push_back(to_double(b));
  for (const auto& p : pieces) out.pieces.push_back(p.template cast<double>());
  if constexpr (std::is_same_v<T, Rational>) {
    out.exact_breaks = breaks;
    out.exact_pieces = pieces;
  }
  return out;
}

}  // namespace

PiecewisePoly convolve_piecewise(const PiecewisePoly& f, const PiecewisePoly& g) {
  if (f.exact() && g.exact()) {
    try {
      return convolve_impl<Rational>(f.exact_breaks, f.exact_pieces, g.exact_breaks, g.exact_pieces);
    } catch (const std::overflow_error&) {
      // coefficients outgrew 64-bit rationals; fall through to floating point
    }
  }
  return convolve_impl<double>(f.breaks, f.pieces, g.breaks, g.pieces);
}

}  // namespace ppd
