#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ribopt/domain.hpp"
#include "ribopt/sigma_network.hpp"

namespace ribopt {

enum class NodeClass : std::uint8_t { Interior = 0, Dirichlet = 1, Exterior = 2 };

// Uniform node grid over the domain's bounding box, with at least one layer
// of non-interior nodes on every side. Node (i, j) sits at origin + h (i, j)
// and has linear index j * nx + i.
struct GridDiscretization {
  Vec2 origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<NodeClass> classes;
  std::vector<int> unknown;           // node -> unknown index, -1 if not interior
  std::vector<int> node_of_unknown;   // unknown index -> node
  std::vector<std::string> warnings;

  int num_unknowns() const { return static_cast<int>(node_of_unknown.size()); }
  int node_index(int i, int j) const { return j * nx + i; }
  Vec2 node(int i, int j) const { return origin + Vec2{i * h, j * h}; }
  Vec2 node_position(int index) const { return node(index % nx, index / nx); }
  NodeClass node_class(int i, int j) const { return classes[node_index(i, j)]; }
};

// Nodes outside the closed domain are exterior; nodes within band_factor*h
// of the network or the domain boundary are Dirichlet; the rest interior.
GridDiscretization discretize(const Domain& domain, const SigmaNetwork& sigma, double h,
                              double band_factor = 0.5);

// 4-connected components of interior nodes, as lists of unknown indices.
// Components are ordered by their smallest node index.
std::vector<std::vector<int>> connected_components(const GridDiscretization& grid);

// Grid estimate of |{x in domain : d(x, sigma u boundary) < t}| from cells of
// side h whose centre lies in the domain.
double sublevel_area(const Domain& domain, const SigmaNetwork& sigma, double t, double h);

}  // namespace ribopt
