#include "ribopt/primitives.hpp"

#include <algorithm>
#include <limits>

namespace ribopt {

void Box::expand(Vec2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

Box Box::empty() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Box{{inf, inf}, {-inf, -inf}};
}

Box bounding_box(const Segment& s) {
  return Box{{std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y)},
             {std::max(s.a.x, s.b.x), std::max(s.a.y, s.b.y)}};
}

Vec2 closest_point_on_segment(Vec2 p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    return s.a;
  }
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return s.a + d * t;
}

double point_segment_distance(Vec2 p, const Segment& s) {
  return distance(p, closest_point_on_segment(p, s));
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool proper_crossing(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

std::pair<Vec2, Vec2> closest_points(const Segment& s, const Segment& t) {
  if (proper_crossing(s, t)) {
    const auto u = crossing_parameter(s, t);
    if (u) {
      const Vec2 p = s.at(*u);
      return {p, p};
    }
  }
  std::pair<Vec2, Vec2> best{s.a, closest_point_on_segment(s.a, t)};
  double best_d = distance(best.first, best.second);
  auto consider = [&](Vec2 p, Vec2 q) {
    const double d = distance(p, q);
    if (d < best_d) {
      best_d = d;
      best = {p, q};
    }
  };
  consider(s.b, closest_point_on_segment(s.b, t));
  consider(closest_point_on_segment(t.a, s), t.a);
  consider(closest_point_on_segment(t.b, s), t.b);
  return best;
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  if (proper_crossing(s, t)) {
    return 0.0;
  }
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                   point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

bool segments_intersect(const Segment& s, const Segment& t, double tol) {
  return segment_segment_distance(s, t) <= tol;
}

std::optional<double> crossing_parameter(const Segment& s, const Segment& t) {
  const Vec2 ds = s.b - s.a;
  const Vec2 dt = t.b - t.a;
  const double denom = cross(ds, dt);
  if (std::abs(denom) <= 1e-14 * norm(ds) * norm(dt)) {
    return std::nullopt;
  }
  const Vec2 w = t.a - s.a;
  const double u = cross(w, dt) / denom;
  const double v = cross(w, ds) / denom;
  constexpr double eps = 1e-12;
  if (u < -eps || u > 1.0 + eps || v < -eps || v > 1.0 + eps) {
    return std::nullopt;
  }
  return std::clamp(u, 0.0, 1.0);
}

std::optional<Segment> clip_to_box(const Segment& s, const Box& box) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec2 d = s.b - s.a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {s.a.x - box.lo.x, box.hi.x - s.a.x, s.a.y - box.lo.y, box.hi.y - s.a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      if (r > t1) return std::nullopt;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return std::nullopt;
      t1 = std::min(t1, r);
    }
  }
  return Segment{s.at(t0), s.at(t1)};
}

double collinear_overlap(const Segment& s, const Segment& t, double tol) {
  const Vec2 ds = s.b - s.a;
  const double len = norm(ds);
  if (len == 0.0 || t.length() == 0.0) {
    return 0.0;
  }
  if (std::abs(cross(ds, t.a - s.a)) / len > tol || std::abs(cross(ds, t.b - s.a)) / len > tol) {
    return 0.0;
  }
  const double u0 = dot(t.a - s.a, ds) / (len * len);
  const double u1 = dot(t.b - s.a, ds) / (len * len);
  const double lo = std::max(0.0, std::min(u0, u1));
  const double hi = std::min(1.0, std::max(u0, u1));
  return std::max(0.0, hi - lo) * len;
}

}  // namespace ribopt
