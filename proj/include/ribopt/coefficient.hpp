#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ribopt/domain.hpp"
#include "ribopt/primitives.hpp"

namespace ribopt {

enum class CoefficientKind {
  Constant,         // c
  Affine,           // a + b x + c y
  RadialQuadratic,  // a + b |p - (x0, y0)|^2
  Exponential,      // a exp(b x)
  SquaredAffine,    // (a + b x + c y)^2
};

// Closed-form scalar field used for the weights rho and sigma.
class CoefficientField {
 public:
  CoefficientField(CoefficientKind kind, std::vector<double> params);

  static CoefficientField constant(double c);
  static CoefficientField affine(double a, double b, double c);
  static CoefficientField radial_quadratic(double a, double b, Vec2 center);
  static CoefficientField exponential(double a, double b);
  static CoefficientField squared_affine(double a, double b, double c);

  CoefficientKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  bool is_constant() const;

  double operator()(Vec2 p) const;

  // Exact extrema of the closed form over a box.
  double min_over(const Box& box) const;
  double max_over(const Box& box) const;

  // Round-trips through parse_coefficient.
  std::string to_string() const;

 private:
  CoefficientKind kind_;
  std::vector<double> params_;
};

// Parses `kind=<name> params=<comma separated reals>`.
CoefficientField parse_coefficient(std::string_view text);

// Throws InvalidInput unless the field is strictly positive on the
// bounding box of the domain.
void require_positive(const CoefficientField& field, const Domain& domain, std::string_view name);

}  // namespace ribopt
