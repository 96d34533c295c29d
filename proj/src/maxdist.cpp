#include "ribopt/maxdist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <numbers>
#include <queue>

#include "ribopt/error.hpp"

namespace ribopt {

namespace {

struct Cell {
  Vec2 centre;
  double half;   // half side
  double upper;  // bound on the distance over the cell
  int level;
};

struct ByUpper {
  bool operator()(const Cell& a, const Cell& b) const { return a.upper < b.upper; }
};

// f(p) = a.p + c
struct Affine {
  Vec2 a;
  double c;
  double operator()(Vec2 p) const { return dot(a, p) + c; }
};

std::array<Vec2, 4> corners_of(Vec2 c, double half) {
  return {c + Vec2{-half, -half}, c + Vec2{half, -half}, c + Vec2{half, half}, c + Vec2{-half, half}};
}

double box_segment_distance(const Box& box, const Segment& s) {
  if (box.contains(s.a) || box.contains(s.b)) return 0.0;
  const Vec2 c[4] = {box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}};
  double d = INFINITY;
  for (int k = 0; k < 4; ++k) d = std::min(d, segment_segment_distance(s, {c[k], c[(k + 1) % 4]}));
  return d;
}

// Distance to s is affine over the box when every point of the box projects
// into the interior of s and the box stays on one side of its line.
std::optional<Affine> affine_distance(const Segment& s, const std::array<Vec2, 4>& corners) {
  const double len = s.length();
  if (len <= 1e-14) return std::nullopt;
  const Vec2 dir = (s.b - s.a) / len;
  const Vec2 normal{-dir.y, dir.x};
  int sign = 0;
  for (const Vec2& c : corners) {
    const double t = dot(c - s.a, dir);
    if (t < 0.0 || t > len) return std::nullopt;
    const double off = dot(c - s.a, normal);
    const int sg = off > 0.0 ? 1 : (off < 0.0 ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign)) return std::nullopt;
    sign = sg;
  }
  const Vec2 a = normal * static_cast<double>(sign);
  return Affine{a, -dot(a, s.a)};
}

// Exact maximum over a box of the minimum of affine functions: the optimum of
// a linear program, found among box corners, crossings of pairwise equality
// lines with the box edges, and triple equality points inside the box.
std::pair<double, Vec2> max_min_affine(const std::vector<Affine>& fs, Vec2 centre, double half) {
  const auto corners = corners_of(centre, half);
  std::vector<Vec2> candidates(corners.begin(), corners.end());
  const double lo_x = centre.x - half, hi_x = centre.x + half;
  const double lo_y = centre.y - half, hi_y = centre.y + half;
  const double slack = 1e-12 * (1.0 + half);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const Vec2 g = fs[i].a - fs[j].a;
      const double gc = fs[i].c - fs[j].c;
      // g.p + gc = 0 on the four edges.
      if (std::abs(g.y) > 1e-15) {
        for (double x : {lo_x, hi_x}) {
          const double y = -(gc + g.x * x) / g.y;
          if (y >= lo_y - slack && y <= hi_y + slack) candidates.push_back({x, std::clamp(y, lo_y, hi_y)});
        }
      }
      if (std::abs(g.x) > 1e-15) {
        for (double y : {lo_y, hi_y}) {
          const double x = -(gc + g.y * y) / g.x;
          if (x >= lo_x - slack && x <= hi_x + slack) candidates.push_back({std::clamp(x, lo_x, hi_x), y});
        }
      }
      for (std::size_t k = j + 1; k < fs.size(); ++k) {
        const Vec2 h = fs[i].a - fs[k].a;
        const double hc = fs[i].c - fs[k].c;
        const double det = g.x * h.y - g.y * h.x;
        if (std::abs(det) < 1e-14) continue;
        const Vec2 p{(-gc * h.y + hc * g.y) / det, (-hc * g.x + gc * h.x) / det};
        if (p.x >= lo_x && p.x <= hi_x && p.y >= lo_y && p.y <= hi_y) candidates.push_back(p);
      }
    }
  }
  double best = -INFINITY;
  Vec2 arg = centre;
  for (const Vec2& p : candidates) {
    double v = INFINITY;
    for (const auto& f : fs) v = std::min(v, f(p));
    if (v > best) {
      best = v;
      arg = p;
    }
  }
  return {best, arg};
}

}  // namespace

DistanceFieldSummary max_distance(const Domain& domain, const SigmaNetwork& sigma, double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidInput("max_distance tolerance must be positive");
  const auto set = dirichlet_set(sigma, domain);
  const auto& features = set.segments;
  const Box bb = domain.bounding_box();
  const double side0 = std::max(bb.width(), bb.height()) / 32.0;
  const int nx = static_cast<int>(std::ceil(bb.width() / side0 - 1e-9));
  const int ny = static_cast<int>(std::ceil(bb.height() / side0 - 1e-9));

  DistanceFieldSummary best;
  best.T = -1.0;
  double discarded = -INFINITY;  // largest bound among pruned cells
  auto offer = [&](Vec2 p, double d) {
    if (d > best.T && domain.contains(p)) {
      best.T = d;
      best.argmax = p;
    }
  };
  std::priority_queue<Cell, std::vector<Cell>, ByUpper> queue;
  std::vector<Affine> affine;
  auto consider = [&](Vec2 c, double half, int level) {
    ++best.boxes;
    const double r = half * std::sqrt(2.0);
    if (!domain.contains(c) && domain.distance_to_boundary(c) > r) return;  // misses the domain
    const auto corners = corners_of(c, half);
    // U bounds the distance over the cell; only features within U of the
    // cell can be nearest somewhere in it.
    double U = INFINITY;
    for (const auto& s : features) {
      double m = 0.0;
      for (const Vec2& q : corners) m = std::max(m, point_segment_distance(q, s));
      U = std::min(U, m);
    }
    const Box box{corners[0], corners[2]};
    affine.clear();
    bool exact = true;
    double d_centre = INFINITY;
    for (const auto& s : features) {
      d_centre = std::min(d_centre, point_segment_distance(c, s));
      if (!exact || box_segment_distance(box, s) > U) continue;
      if (auto f = affine_distance(s, corners); f && affine.size() < 8) {
        affine.push_back(*f);
      } else {
        exact = false;
      }
    }
    offer(c, d_centre);
    double upper = std::min(U, d_centre + r);
    if (exact && !affine.empty()) {
      const auto [m, arg] = max_min_affine(affine, c, half);
      upper = std::min(upper, m);
      offer(arg, set.distance(arg));
    }
    if (upper > best.T + tolerance) {
      queue.push({c, half, upper, level});
    } else {
      discarded = std::max(discarded, upper);
    }
  };
  for (const Vec2& v : domain.outer()) offer(v, set.distance(v));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      consider(bb.lo + Vec2{(i + 0.5) * side0, (j + 0.5) * side0}, 0.5 * side0, 0);
    }
  }
  double finest = side0;
  while (!queue.empty()) {
    const Cell top = queue.top();
    if (top.upper <= best.T + tolerance) break;
    queue.pop();
    const double q = 0.5 * top.half;
    finest = std::min(finest, 2.0 * q);
    best.refinement_level = std::max(best.refinement_level, top.level + 1);
    for (int dj = -1; dj <= 1; dj += 2) {
      for (int di = -1; di <= 1; di += 2) consider(top.centre + Vec2{di * q, dj * q}, q, top.level + 1);
    }
  }
  best.T = set.distance(best.argmax);
  best.upper_bound = std::max({best.T, discarded, queue.empty() ? -INFINITY : queue.top().upper});
  best.h = finest;
  return best;
}

double theta_infinity_certificate(double L) {
  if (!(L > 0.0)) throw InvalidInput("budget must be positive");
  const double a = L + 4.0;
  return L / (a + std::sqrt(a * a + 2.0 * std::numbers::pi));
}

std::vector<double> distance_field(const GridDiscretization& grid, const Domain& domain,
                                   const SigmaNetwork& sigma) {
  const auto set = dirichlet_set(sigma, domain);
  std::vector<double> out(grid.classes.size(), 0.0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int k = grid.node_index(i, j);
      if (grid.classes[k] != NodeClass::Exterior) out[k] = set.distance(grid.node(i, j));
    }
  }
  return out;
}

}  // namespace ribopt
