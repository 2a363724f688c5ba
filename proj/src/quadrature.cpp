#include "ppd/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace ppd::quad {

namespace {

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts;
}

}  // namespace

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  auto safe = [&f](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  return integrator().integrate(safe, a, b, tol, &err, &l1);
}

double tanh_sinh_split(const std::function<double(double)>& f, std::vector<double> cuts, double tol) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += tanh_sinh(f, cuts[i], cuts[i + 1], tol);
  return total;
}

}  // namespace ppd::quad
