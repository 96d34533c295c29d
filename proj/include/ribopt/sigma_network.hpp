#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ribopt/domain.hpp"
#include "ribopt/primitives.hpp"

namespace ribopt {

using Edge = std::pair<int, int>;

// A finite connected segment graph standing in for an admissible continuum.
// Edges are straight segments between vertices; collinear overlapping edges
// are rejected so that the total length is the one-dimensional measure.
class SigmaNetwork {
 public:
  SigmaNetwork(std::vector<Vec2> vertices, std::vector<Edge> edges);

  static SigmaNetwork point(Vec2 p);
  // Builds a network from loose segments: overlaps are merged, coincident
  // endpoints identified and degenerate pieces dropped.
  static SigmaNetwork from_segments(std::span<const Segment> segments, double tol = 1e-9);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  Segment segment(std::size_t e) const {
    return {vertices_[edges_[e].first], vertices_[edges_[e].second]};
  }
  std::vector<Segment> segments() const;
  // Vertices not incident to any edge.
  std::vector<Vec2> isolated_vertices() const;

  double length() const;
  Box bounding_box() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<Edge> edges_;
};

double length(const SigmaNetwork& sigma);

// Connected components of the point set, counting geometric crossings and
// touching as shared points.
int count_components(const SigmaNetwork& sigma, double tol = 1e-12);
bool is_connected(const SigmaNetwork& sigma, double tol = 1e-12);

// Every edge and vertex lies in the closed domain.
bool lies_in(const SigmaNetwork& sigma, const Domain& domain, double tol = 1e-9);

// Merge collinear overlapping segments into maximal ones.
std::vector<Segment> merge_collinear(std::span<const Segment> segments, double tol = 1e-9);

// Closed set carrying the Dirichlet condition: network plus domain boundary.
// Isolated vertices appear as zero-length segments.
struct DirichletSet {
  std::vector<Segment> segments;

  double distance(Vec2 p) const;
};

DirichletSet dirichlet_set(const SigmaNetwork& sigma, const Domain& domain);

double distance_to_set(Vec2 x, const SigmaNetwork& sigma, const Domain& domain);

}  // namespace ribopt
