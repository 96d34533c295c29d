#include "ribopt/quadrature.hpp"

#include <array>
#include <cmath>

namespace ribopt {

namespace {

struct TriangleNode {
  double l1, l2, l3, w;
};

// Radon's seven-point rule, exact for polynomials of degree 5.
const std::array<TriangleNode, 7>& seven_point_rule() {
  static const std::array<TriangleNode, 7> rule = [] {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0;
    const double b1 = (9.0 + 2.0 * s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0;
    const double b2 = (9.0 - 2.0 * s15) / 21.0;
    const double w1 = (155.0 - s15) / 1200.0;
    const double w2 = (155.0 + s15) / 1200.0;
    return std::array<TriangleNode, 7>{{
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
        {a1, a1, b1, w1},
        {a1, b1, a1, w1},
        {b1, a1, a1, w1},
        {a2, a2, b2, w2},
        {a2, b2, a2, w2},
        {b2, a2, a2, w2},
    }};
  }();
  return rule;
}

double single_triangle(const ScalarField& f, Vec2 a, Vec2 b, Vec2 c) {
  const double area = 0.5 * cross(b - a, c - a);
  if (area == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& n : seven_point_rule()) sum += n.w * f(a * n.l1 + b * n.l2 + c * n.l3);
  return area * sum;
}

}  // namespace

double integrate_triangle(const ScalarField& f, Vec2 a, Vec2 b, Vec2 c, int subdivisions) {
  const int k = std::max(1, subdivisions);
  const Vec2 e1 = (b - a) / k;
  const Vec2 e2 = (c - a) / k;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; i + j < k; ++j) {
      const Vec2 p = a + e1 * i + e2 * j;
      total += single_triangle(f, p, p + e1, p + e2);
      if (i + j + 1 < k) total += single_triangle(f, p + e1, p + e1 + e2, p + e2);
    }
  }
  return total;
}

double integrate_polygon(const ScalarField& f, const Polygon& poly, int subdivisions) {
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    total += integrate_triangle(f, poly[0], poly[i], poly[i + 1], subdivisions);
  }
  return total;
}

double integrate(const ScalarField& f, const Domain& domain, int subdivisions) {
  double total = integrate_polygon(f, domain.outer(), subdivisions);
  for (const auto& hole : domain.holes()) total += integrate_polygon(f, hole, subdivisions);
  return total;
}

double integrate(const ScalarField& f, const Domain& domain, const Box& box, int subdivisions) {
  double total = integrate_polygon(f, clip_polygon_to_box(domain.outer(), box), subdivisions);
  for (const auto& hole : domain.holes()) {
    total += integrate_polygon(f, clip_polygon_to_box(hole, box), subdivisions);
  }
  return total;
}

}  // namespace ribopt
