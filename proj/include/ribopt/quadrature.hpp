#pragma once

#include <functional>

#include "ribopt/domain.hpp"

namespace ribopt {

using ScalarField = std::function<double(Vec2)>;

// Degree-5 seven-point rule on a triangle, applied on a uniform
// subdivision into `subdivisions`^2 pieces. Signed by orientation.
double integrate_triangle(const ScalarField& f, Vec2 a, Vec2 b, Vec2 c, int subdivisions = 1);

// Signed integral over a simple polygon via a fan from its first vertex.
// f must be defined on the polygon's convex hull.
double integrate_polygon(const ScalarField& f, const Polygon& poly, int subdivisions = 4);

double integrate(const ScalarField& f, const Domain& domain, int subdivisions = 8);

// Integral over the part of the domain inside a box.
double integrate(const ScalarField& f, const Domain& domain, const Box& box, int subdivisions = 4);

}  // namespace ribopt
