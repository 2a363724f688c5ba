#include "ppd/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppd {

ScaleMeasure::ScaleMeasure(std::vector<Atom> atoms, std::vector<double> grid, std::vector<double> density)
    : atoms_(std::move(atoms)), grid_(std::move(grid)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!(a.t > 0.0) || !std::isfinite(a.t)) throw std::domain_error("measure atom location must be positive");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw std::domain_error("measure atom mass must be positive");
  }
  if (grid_.size() != density_.size()) throw std::domain_error("density grid and values differ in length");
  if (grid_.size() == 1) throw std::domain_error("density grid needs at least two nodes");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(grid_[i] > 0.0) || !std::isfinite(grid_[i])) throw std::domain_error("density grid must be positive");
    if (i > 0 && !(grid_[i] > grid_[i - 1])) throw std::domain_error("density grid must be increasing");
    if (!(density_[i] >= 0.0) || !std::isfinite(density_[i]))
      throw std::domain_error("density values must be finite and nonnegative");
  }
  finalize();
}

ScaleMeasure ScaleMeasure::dirac(double t, double mass) { return ScaleMeasure({{t, mass}}); }

ScaleMeasure ScaleMeasure::from_density(const std::function<double(double)>& rho, double t0, double t1, int points,
                                        bool geometric) {
  if (!(t0 > 0.0) || !(t1 > t0) || points < 2) throw std::domain_error("invalid density grid");
  std::vector<double> grid(static_cast<std::size_t>(points));
  std::vector<double> values(grid.size());
  for (int i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / (points - 1);
    grid[i] = geometric ? t0 * std::pow(t1 / t0, s) : t0 + s * (t1 - t0);
    values[i] = rho(grid[i]);
  }
  grid.back() = t1;
  values.back() = rho(t1);
  return ScaleMeasure({}, std::move(grid), std::move(values));
}

void ScaleMeasure::finalize() {
  nodes_ = atoms_;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    double w = 0.0;
    if (i > 0) w += 0.5 * (grid_[i] - grid_[i - 1]);
    if (i + 1 < grid_.size()) w += 0.5 * (grid_[i + 1] - grid_[i]);
    const double m = w * density_[i];
    if (m > 0.0) nodes_.push_back({grid_[i], m});
  }
  total_ = 0.0;
  for (const auto& n : nodes_) total_ += n.mass;
  if (!(total_ > 0.0) || !std::isfinite(total_)) throw std::domain_error("measure must have finite positive mass");
}

double ScaleMeasure::min_scale() const {
  double m = nodes_.front().t;
  for (const auto& n : nodes_) m = std::min(m, n.t);
  return m;
}

double ScaleMeasure::max_scale() const {
  double m = nodes_.front().t;
  for (const auto& n : nodes_) m = std::max(m, n.t);
  return m;
}

std::vector<double> ScaleMeasure::support() const {
  std::vector<double> s;
  for (const auto& n : nodes_) s.push_back(n.t);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace ppd
