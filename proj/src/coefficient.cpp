#include "randbasis/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace randbasis {

namespace {

double oscillatory_medium(double x, double y) {
  constexpr double pi = std::numbers::pi;
  const auto s = [](double k, double t) { return 1.1 + std::sin(k * pi * t); };
  const auto c = [](double k, double t) { return 1.1 + std::cos(k * pi * t); };
  return (s(7, x) / s(7, y) + s(9, y) / c(9, x) + c(13, y) / c(13, x) + c(9, x) / s(9, y) +
          s(7, y) / s(7, x)) /
         5.0;
}

}  // namespace

CoefficientField CoefficientField::paper(double domain_half_width) {
  CoefficientField f(Kind::Paper, domain_half_width);
  return f;
}

CoefficientField CoefficientField::constant(double value, double domain_half_width) {
  if (!(value > 0.0)) {
    throw std::invalid_argument("CoefficientField::constant: value must be positive");
  }
  CoefficientField f(Kind::Constant, domain_half_width);
  f.constant_value_ = value;
  f.alpha_star_ = value;
  f.beta_star_ = value;
  return f;
}

CoefficientField CoefficientField::tabulated(const std::string& path, double domain_half_width) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("CoefficientField::tabulated: cannot open '" + path + "'");
  }
  CoefficientField f(Kind::Tabulated, domain_half_width);
  if (!(in >> f.table_nx_ >> f.table_ny_) || f.table_nx_ < 1 || f.table_ny_ < 1) {
    throw std::runtime_error("CoefficientField::tabulated: bad header in '" + path +
                             "' (expected: nx ny)");
  }
  const std::size_t count = static_cast<std::size_t>(f.table_nx_) * f.table_ny_;
  f.table_.reserve(count);
  double v = 0.0;
  while (f.table_.size() < count && (in >> v)) {
    if (!(v > 0.0)) {
      throw std::runtime_error("CoefficientField::tabulated: nonpositive cell value in '" + path +
                               "' violates ellipticity");
    }
    f.table_.push_back(v);
  }
  if (f.table_.size() != count) {
    std::ostringstream msg;
    msg << "CoefficientField::tabulated: expected " << count << " cell values in '" << path
        << "', found " << f.table_.size();
    throw std::runtime_error(msg.str());
  }
  f.alpha_star_ = *std::min_element(f.table_.begin(), f.table_.end());
  f.beta_star_ = *std::max_element(f.table_.begin(), f.table_.end());
  return f;
}

double CoefficientField::eval(double x, double y) const {
  const double hw = half_width_;
  const double slack = 1e-12 * std::max(1.0, hw);
  if (std::abs(x) > hw + slack || std::abs(y) > hw + slack) {
    std::ostringstream msg;
    msg << "CoefficientField::eval: point (" << x << ", " << y << ") lies outside omega* = [-" << hw
        << ", " << hw << "]^2";
    throw std::domain_error(msg.str());
  }
  double value = 0.0;
  switch (kind_) {
    case Kind::Paper:
      value = oscillatory_medium(x, y);
      break;
    case Kind::Constant:
      value = constant_value_;
      break;
    case Kind::Tabulated: {
      auto cell = [&](double t, int cells) {
        const int i = static_cast<int>(std::floor((t + hw) / (2.0 * hw) * cells));
        return std::clamp(i, 0, cells - 1);
      };
      value = table_[static_cast<std::size_t>(cell(y, table_ny_)) * table_nx_ + cell(x, table_nx_)];
      break;
    }
  }
  if (!(value > 0.0)) {
    std::ostringstream msg;
    msg << "CoefficientField::eval: value " << value << " at (" << x << ", " << y
        << ") violates ellipticity";
    throw std::runtime_error(msg.str());
  }
  return value;
}

double CoefficientField::element_value(const StructuredMesh& mesh, int triangle) const {
  if (triangle < 0 || triangle >= mesh.num_triangles()) {
    throw std::invalid_argument("CoefficientField::element_value: triangle index out of range");
  }
  return eval(mesh.centroid(triangle));
}

std::pair<double, double> CoefficientField::calibrate_bounds(const StructuredMesh& mesh) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double v = element_value(mesh, t);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  alpha_star_ = lo;
  beta_star_ = hi;
  return {lo, hi};
}

}  // namespace randbasis
