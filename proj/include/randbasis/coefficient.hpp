#pragma once

#include "randbasis/geometry.hpp"

#include <string>
#include <vector>

namespace randbasis {

/// Pointwise-evaluable scalar medium a(x,y) with ellipticity bounds.
/// Pure and immutable apart from the lazily calibrated bounds.
class CoefficientField {
 public:
  /// The oscillatory benchmark medium, defined on [-hw, hw]^2.
  static CoefficientField paper(double domain_half_width);
  static CoefficientField constant(double value, double domain_half_width);
  /// Cell values covering [-hw, hw]^2; text file: first line "nx ny", then
  /// nx*ny positive cell values row-major.
  static CoefficientField tabulated(const std::string& path, double domain_half_width);

  /// Value at a point of omega*. Throws std::domain_error outside the domain
  /// and std::runtime_error if a nonpositive value is produced.
  double eval(double x, double y) const;
  double eval(const Eigen::Vector2d& p) const { return eval(p.x(), p.y()); }

  /// Coefficient attached to a triangle: one-point quadrature at its centroid.
  double element_value(const StructuredMesh& mesh, int triangle) const;

  /// Scans all element centroids and records the min/max as the ellipticity
  /// bounds. Returns {alpha_star, beta_star}.
  std::pair<double, double> calibrate_bounds(const StructuredMesh& mesh);

  double alpha_star() const { return alpha_star_; }
  double beta_star() const { return beta_star_; }
  double domain_half_width() const { return half_width_; }

 private:
  enum class Kind { Paper, Constant, Tabulated };

  CoefficientField(Kind kind, double half_width) : kind_(kind), half_width_(half_width) {}

  Kind kind_;
  double half_width_ = 0.0;
  double constant_value_ = 1.0;
  int table_nx_ = 0;
  int table_ny_ = 0;
  std::vector<double> table_;
  double alpha_star_ = 0.0;
  double beta_star_ = 0.0;
};

}  // namespace randbasis
