#include "ribopt/sigma_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ribopt/error.hpp"

namespace ribopt {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool boxes_touch(const Box& a, const Box& b, double tol) {
  return a.lo.x <= b.hi.x + tol && b.lo.x <= a.hi.x + tol && a.lo.y <= b.hi.y + tol &&
         b.lo.y <= a.hi.y + tol;
}

}  // namespace

SigmaNetwork::SigmaNetwork(std::vector<Vec2> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) {
    throw InvalidInput("network needs at least one vertex");
  }
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& [i, j] : edges_) {
    if (i < 0 || j < 0 || i >= nv || j >= nv) {
      throw InvalidInput("edge references a missing vertex");
    }
    if (i == j || distance(vertices_[i], vertices_[j]) == 0.0) {
      throw InvalidInput("degenerate edge " + std::to_string(i) + "-" + std::to_string(j));
    }
  }
  const auto segs = segments();
  std::vector<Box> boxes;
  boxes.reserve(segs.size());
  for (const auto& s : segs) boxes.push_back(ribopt::bounding_box(s));
  for (std::size_t a = 0; a < segs.size(); ++a) {
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      if (!boxes_touch(boxes[a], boxes[b], 1e-9)) continue;
      if (collinear_overlap(segs[a], segs[b], 1e-9) > 1e-9) {
        throw InvalidInput("edges " + std::to_string(a) + " and " + std::to_string(b) +
                           " overlap");
      }
    }
  }
}

SigmaNetwork SigmaNetwork::point(Vec2 p) { return SigmaNetwork({p}, {}); }

std::vector<Segment> merge_collinear(std::span<const Segment> segments, double tol) {
  struct Item {
    double angle;
    double offset;
    Vec2 dir;
    Segment seg;
  };
  std::vector<Item> items;
  items.reserve(segments.size());
  for (const auto& s : segments) {
    const double len = s.length();
    if (len <= tol) continue;
    Vec2 dir = (s.b - s.a) / len;
    if (std::abs(dir.x) < 1e-12) dir = {0.0, 1.0};
    if (std::abs(dir.y) < 1e-12) dir = {1.0, 0.0};
    if (dir.x < 0.0 || (dir.x == 0.0 && dir.y < 0.0)) dir = dir * -1.0;
    items.push_back({std::atan2(dir.y, dir.x), cross(dir, s.a), dir, s});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    return a.offset < b.offset;
  });

  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i + 1;
    while (j < items.size() && items[j].angle - items[j - 1].angle <= 1e-9 &&
           std::abs(items[j].offset - items[j - 1].offset) <= tol) {
      ++j;
    }
    // Items [i, j) are collinear: merge their intervals along the line.
    const Vec2 dir = items[i].dir;
    struct Interval {
      double t0, t1;
      Vec2 p0, p1;
    };
    std::vector<Interval> iv;
    for (std::size_t k = i; k < j; ++k) {
      Vec2 p = items[k].seg.a;
      Vec2 q = items[k].seg.b;
      double tp = dot(p, dir);
      double tq = dot(q, dir);
      if (tp > tq) {
        std::swap(p, q);
        std::swap(tp, tq);
      }
      iv.push_back({tp, tq, p, q});
    }
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.t0 < b.t0; });
    Interval cur = iv.front();
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (iv[k].t0 <= cur.t1 + tol) {
        if (iv[k].t1 > cur.t1) {
          cur.t1 = iv[k].t1;
          cur.p1 = iv[k].p1;
        }
      } else {
        out.push_back({cur.p0, cur.p1});
        cur = iv[k];
      }
    }
    out.push_back({cur.p0, cur.p1});
    i = j;
  }
  return out;
}

SigmaNetwork SigmaNetwork::from_segments(std::span<const Segment> segments, double tol) {
  const auto merged = merge_collinear(segments, tol);
  if (merged.empty()) {
    if (segments.empty()) throw InvalidInput("network needs at least one segment or point");
    return point(segments.front().a);
  }
  std::vector<Vec2> vertices;
  std::map<std::pair<long long, long long>, int> index;
  auto vertex_id = [&](Vec2 p) {
    const auto key = std::make_pair(std::llround(p.x / tol), std::llround(p.y / tol));
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(vertices.size());
    vertices.push_back(p);
    index.emplace(key, id);
    return id;
  };
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& s : merged) {
    const int a = vertex_id(s.a);
    const int b = vertex_id(s.b);
    if (a != b) edges.emplace_back(a, b);
  }
  return SigmaNetwork(std::move(vertices), std::move(edges));
}

std::vector<Segment> SigmaNetwork::segments() const {
  std::vector<Segment> out;
  out.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) out.push_back(segment(e));
  return out;
}

std::vector<Vec2> SigmaNetwork::isolated_vertices() const {
  std::vector<bool> used(vertices_.size(), false);
  for (const auto& [i, j] : edges_) {
    used[i] = true;
    used[j] = true;
  }
  std::vector<Vec2> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (!used[v]) out.push_back(vertices_[v]);
  }
  return out;
}

double SigmaNetwork::length() const {
  double total = 0.0;
  for (std::size_t e = 0; e < edges_.size(); ++e) total += segment(e).length();
  return total;
}

Box SigmaNetwork::bounding_box() const {
  Box b = Box::empty();
  for (const Vec2& v : vertices_) b.expand(v);
  return b;
}

double length(const SigmaNetwork& sigma) { return sigma.length(); }

int count_components(const SigmaNetwork& sigma, double tol) {
  // Nodes: one per edge, then one per isolated vertex.
  const auto segs = sigma.segments();
  const auto isolated = sigma.isolated_vertices();
  const std::size_t ne = segs.size();
  UnionFind uf(ne + isolated.size());

  std::vector<int> first_edge(sigma.vertices().size(), -1);
  for (std::size_t e = 0; e < ne; ++e) {
    for (int v : {sigma.edges()[e].first, sigma.edges()[e].second}) {
      if (first_edge[v] < 0) {
        first_edge[v] = static_cast<int>(e);
      } else {
        uf.unite(e, static_cast<std::size_t>(first_edge[v]));
      }
    }
  }
  std::vector<Box> boxes;
  boxes.reserve(ne);
  for (const auto& s : segs) boxes.push_back(ribopt::bounding_box(s));
  for (std::size_t a = 0; a < ne; ++a) {
    for (std::size_t b = a + 1; b < ne; ++b) {
      if (uf.find(a) == uf.find(b)) continue;
      if (!boxes_touch(boxes[a], boxes[b], tol)) continue;
      if (segments_intersect(segs[a], segs[b], tol)) uf.unite(a, b);
    }
  }
  for (std::size_t k = 0; k < isolated.size(); ++k) {
    for (std::size_t e = 0; e < ne; ++e) {
      if (point_segment_distance(isolated[k], segs[e]) <= tol) uf.unite(ne + k, e);
    }
    for (std::size_t m = 0; m < k; ++m) {
      if (distance(isolated[k], isolated[m]) <= tol) uf.unite(ne + k, ne + m);
    }
  }
  int components = 0;
  for (std::size_t i = 0; i < ne + isolated.size(); ++i) {
    if (uf.find(i) == i) ++components;
  }
  return components;
}

bool is_connected(const SigmaNetwork& sigma, double tol) { return count_components(sigma, tol) == 1; }

bool lies_in(const SigmaNetwork& sigma, const Domain& domain, double tol) {
  for (const Vec2& v : sigma.vertices()) {
    if (!domain.contains(v, tol)) return false;
  }
  for (const auto& s : sigma.segments()) {
    if (!domain.contains_segment(s, tol)) return false;
  }
  return true;
}

double DirichletSet::distance(Vec2 p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : segments) d = std::min(d, point_segment_distance(p, s));
  return d;
}

DirichletSet dirichlet_set(const SigmaNetwork& sigma, const Domain& domain) {
  DirichletSet set;
  set.segments = domain.boundary();
  for (const auto& s : sigma.segments()) set.segments.push_back(s);
  for (const Vec2& v : sigma.isolated_vertices()) set.segments.push_back({v, v});
  return set;
}

double distance_to_set(Vec2 x, const SigmaNetwork& sigma, const Domain& domain) {
  return dirichlet_set(sigma, domain).distance(x);
}

}  // namespace ribopt
