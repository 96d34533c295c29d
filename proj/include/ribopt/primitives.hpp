#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace ribopt {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct Segment {
  Vec2 a;
  Vec2 b;

  double length() const { return distance(a, b); }
  Vec2 midpoint() const { return (a + b) * 0.5; }
  Vec2 at(double t) const { return a + (b - a) * t; }
};

// Axis-aligned closed box.
struct Box {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol;
  }
  void expand(Vec2 p);
  static Box empty();
};

Box bounding_box(const Segment& s);

Vec2 closest_point_on_segment(Vec2 p, const Segment& s);
double point_segment_distance(Vec2 p, const Segment& s);

// Closest pair of points between two segments (first on s, second on t).
std::pair<Vec2, Vec2> closest_points(const Segment& s, const Segment& t);
double segment_segment_distance(const Segment& s, const Segment& t);

// True when the closed segments share at least one point (within tol).
bool segments_intersect(const Segment& s, const Segment& t, double tol = 1e-12);

// Parameters in (0,1) at which s crosses t transversally.
std::optional<double> crossing_parameter(const Segment& s, const Segment& t);

// Liang-Barsky clip of a segment to a closed box.
std::optional<Segment> clip_to_box(const Segment& s, const Box& box);

// Length of the part of s that lies on t (collinear overlap), zero otherwise.
double collinear_overlap(const Segment& s, const Segment& t, double tol = 1e-9);

}  // namespace ribopt
