#pragma once

#include <functional>
#include <vector>

namespace ppd {

struct Atom {
  double t;
  double mass;
};

/// Positive bounded measure on (0, inf): point masses plus a density sampled
/// on a grid and integrated with trapezoidal weights on that grid.
class ScaleMeasure {
 public:
  ScaleMeasure() = default;
  explicit ScaleMeasure(std::vector<Atom> atoms, std::vector<double> grid = {}, std::vector<double> density = {});

  static ScaleMeasure dirac(double t, double mass = 1.0);
  /// Samples rho on `points` grid nodes in [t0, t1]; geometric spacing when requested.
  static ScaleMeasure from_density(const std::function<double(double)>& rho, double t0, double t1, int points,
                                   bool geometric = false);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& density() const { return density_; }
  bool has_density() const { return !grid_.empty(); }

  /// Atoms followed by density nodes with their trapezoidal masses (zero masses dropped).
  const std::vector<Atom>& nodes() const { return nodes_; }
  double total_mass() const { return total_; }
  double min_scale() const;
  double max_scale() const;

  /// Scales of the nodes that carry positive mass, in increasing order.
  std::vector<double> support() const;

 private:
  void finalize();

  std::vector<Atom> atoms_;
  std::vector<double> grid_;
  std::vector<double> density_;
  std::vector<Atom> nodes_;
  double total_ = 0.0;
};

}  // namespace ppd
