#include "ribopt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ribopt/error.hpp"

namespace ribopt {

double signed_area(const Polygon& poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    a += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * a;
}

double perimeter(const Polygon& poly) {
  double p = 0.0;
  for (const auto& e : polygon_edges(poly)) p += e.length();
  return p;
}

std::vector<Segment> polygon_edges(const Polygon& poly) {
  std::vector<Segment> edges;
  const std::size_t n = poly.size();
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({poly[i], poly[(i + 1) % n]});
  }
  return edges;
}

bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  const auto edges = polygon_edges(poly);
  for (const auto& e : edges) {
    if (e.length() == 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Neighbours may only share their common vertex.
        const Segment& a = edges[i];
        const Segment& b = edges[j];
        if (collinear_overlap(a, b, 1e-12) > 1e-12) return false;
        continue;
      }
      if (segments_intersect(edges[i], edges[j], 1e-12)) return false;
    }
  }
  return true;
}

int winding_number(Vec2 p, const Polygon& poly) {
  int wn = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0.0) ++wn;
    } else {
      if (b.y <= p.y && cross(b - a, p - a) < 0.0) --wn;
    }
  }
  return wn;
}

Polygon clip_polygon_to_box(const Polygon& poly, const Box& box) {
  Polygon out = poly;
  // Each half-plane is {p : sign * (coord(p) - bound) <= 0}.
  struct HalfPlane {
    int axis;
    double bound;
    double sign;
  };
  const HalfPlane planes[4] = {{0, box.lo.x, -1.0}, {0, box.hi.x, 1.0},
                               {1, box.lo.y, -1.0}, {1, box.hi.y, 1.0}};
  for (const auto& hp : planes) {
    if (out.empty()) break;
    auto value = [&](Vec2 p) { return hp.sign * ((hp.axis == 0 ? p.x : p.y) - hp.bound); };
    Polygon next;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 cur = out[i];
      const Vec2 prev = out[(i + n - 1) % n];
      const double vc = value(cur);
      const double vp = value(prev);
      if (vc <= 0.0) {
        if (vp > 0.0) next.push_back(prev + (cur - prev) * (vp / (vp - vc)));
        next.push_back(cur);
      } else if (vp <= 0.0) {
        next.push_back(prev + (cur - prev) * (vp / (vp - vc)));
      }
    }
    out = std::move(next);
  }
  return out;
}

Domain::Domain(Polygon outer, std::vector<Polygon> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  if (!is_simple(outer_)) {
    throw InvalidInput("domain outer boundary is not a simple polygon");
  }
  if (signed_area(outer_) < 0.0) std::reverse(outer_.begin(), outer_.end());
  const auto outer_edges = polygon_edges(outer_);
  for (std::size_t h = 0; h < holes_.size(); ++h) {
    auto& hole = holes_[h];
    if (!is_simple(hole)) {
      throw InvalidInput("hole " + std::to_string(h) + " is not a simple polygon");
    }
    if (signed_area(hole) > 0.0) std::reverse(hole.begin(), hole.end());
    for (const Vec2& v : hole) {
      if (winding_number(v, outer_) == 0) {
        throw InvalidInput("hole " + std::to_string(h) + " is not inside the outer boundary");
      }
    }
    for (const auto& he : polygon_edges(hole)) {
      for (const auto& oe : outer_edges) {
        if (segments_intersect(he, oe, 1e-12)) {
          throw InvalidInput("hole " + std::to_string(h) + " touches the outer boundary");
        }
      }
    }
    for (std::size_t g = 0; g < h; ++g) {
      const auto& other = holes_[g];
      bool clash = winding_number(hole.front(), other) != 0 ||
                   winding_number(other.front(), hole) != 0;
      for (const auto& e1 : polygon_edges(hole)) {
        for (const auto& e2 : polygon_edges(other)) {
          clash = clash || segments_intersect(e1, e2, 1e-12);
        }
      }
      if (clash) {
        throw InvalidInput("holes " + std::to_string(g) + " and " + std::to_string(h) +
                           " overlap");
      }
    }
  }

  area_ = signed_area(outer_);
  perimeter_ = ribopt::perimeter(outer_);
  boundary_ = outer_edges;
  for (const auto& hole : holes_) {
    area_ += signed_area(hole);
    perimeter_ += ribopt::perimeter(hole);
    const auto he = polygon_edges(hole);
    boundary_.insert(boundary_.end(), he.begin(), he.end());
  }
  if (!(area_ > 0.0)) {
    throw InvalidInput("domain has non-positive area");
  }
  bbox_ = Box::empty();
  for (const Vec2& v : outer_) bbox_.expand(v);
}

Domain Domain::unit_square() { return rectangle({0.0, 0.0}, {1.0, 1.0}); }

Domain Domain::rectangle(Vec2 lo, Vec2 hi) {
  return Domain(Polygon{{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
}

Domain Domain::regular_polygon(Vec2 center, double circumradius, int sides) {
  if (sides < 3 || !(circumradius > 0.0)) {
    throw InvalidInput("regular polygon needs >= 3 sides and positive radius");
  }
  Polygon poly;
  for (int k = 0; k < sides; ++k) {
    const double a = 2.0 * std::numbers::pi * k / sides;
    poly.push_back({center.x + circumradius * std::cos(a), center.y + circumradius * std::sin(a)});
  }
  return Domain(std::move(poly));
}

double Domain::distance_to_boundary(Vec2 p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : boundary_) d = std::min(d, point_segment_distance(p, e));
  return d;
}

bool Domain::contains(Vec2 p, double tol) const {
  if (!bbox_.contains(p, tol)) return false;
  if (winding_number(p, outer_) != 0) {
    bool in_hole = false;
    for (const auto& hole : holes_) {
      if (winding_number(p, hole) != 0) {
        in_hole = true;
        break;
      }
    }
    if (!in_hole) return true;
  }
  return distance_to_boundary(p) <= tol;
}

std::vector<Segment> Domain::clip_segment(const Segment& s) const {
  std::vector<double> cuts{0.0, 1.0};
  const Vec2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    if (contains(s.a)) return {s};
    return {};
  }
  for (const auto& e : boundary_) {
    if (auto u = crossing_parameter(s, e)) cuts.push_back(*u);
    for (Vec2 v : {e.a, e.b}) {
      if (point_segment_distance(v, s) <= 1e-12) {
        cuts.push_back(std::clamp(dot(v - s.a, d) / len2, 0.0, 1.0));
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Segment> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double t0 = cuts[i];
    const double t1 = cuts[i + 1];
    if (t1 - t0 <= 1e-14) continue;
    if (!contains(s.at(0.5 * (t0 + t1)))) continue;
    if (!pieces.empty() && distance(pieces.back().b, s.at(t0)) <= 1e-14 * std::sqrt(len2)) {
      pieces.back().b = s.at(t1);
    } else {
      pieces.push_back({s.at(t0), s.at(t1)});
    }
  }
  return pieces;
}

bool Domain::contains_segment(const Segment& s, double tol) const {
  const auto pieces = clip_segment(s);
  double inside = 0.0;
  for (const auto& p : pieces) inside += p.length();
  return inside >= s.length() - tol;
}

double Domain::clipped_area(const Box& box) const {
  double a = signed_area(clip_polygon_to_box(outer_, box));
  for (const auto& hole : holes_) a += signed_area(clip_polygon_to_box(hole, box));
  return std::max(0.0, a);
}

}  // namespace ribopt
