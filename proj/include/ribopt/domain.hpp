#pragma once

#include <vector>

#include "ribopt/primitives.hpp"

namespace ribopt {

using Polygon = std::vector<Vec2>;

double signed_area(const Polygon& poly);
double perimeter(const Polygon& poly);
std::vector<Segment> polygon_edges(const Polygon& poly);
bool is_simple(const Polygon& poly);
int winding_number(Vec2 p, const Polygon& poly);

// Sutherland-Hodgman clip against a box; the result may carry degenerate
// edges, which do not affect area or integrals.
Polygon clip_polygon_to_box(const Polygon& poly, const Box& box);

// Bounded polygonal domain with polygonal holes. The outer loop is stored
// counter-clockwise and holes clockwise regardless of input orientation.
class Domain {
 public:
  explicit Domain(Polygon outer, std::vector<Polygon> holes = {});

  static Domain unit_square();
  static Domain rectangle(Vec2 lo, Vec2 hi);
  static Domain regular_polygon(Vec2 center, double circumradius, int sides);

  const Polygon& outer() const { return outer_; }
  const std::vector<Polygon>& holes() const { return holes_; }

  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  // Number of connected components of the boundary.
  int boundary_components() const { return 1 + static_cast<int>(holes_.size()); }
  const Box& bounding_box() const { return bbox_; }
  const std::vector<Segment>& boundary() const { return boundary_; }

  // Membership in the closed domain; points within tol of the boundary count.
  bool contains(Vec2 p, double tol = 1e-12) const;
  double distance_to_boundary(Vec2 p) const;

  // Pieces of s lying in the closed domain, in order along s.
  std::vector<Segment> clip_segment(const Segment& s) const;
  bool contains_segment(const Segment& s, double tol = 1e-12) const;

  // Lebesgue measure of the domain intersected with a box.
  double clipped_area(const Box& box) const;

 private:
  Polygon outer_;
  std::vector<Polygon> holes_;
  std::vector<Segment> boundary_;
  Box bbox_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
};

}  // namespace ribopt
