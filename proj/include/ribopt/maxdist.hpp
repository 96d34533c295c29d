#pragma once

#include <vector>

#include "ribopt/discretize.hpp"
#include "ribopt/domain.hpp"
#include "ribopt/sigma_network.hpp"

namespace ribopt {

struct DistanceFieldSummary {
  double T = 0.0;          // distance at argmax, evaluated exactly
  Vec2 argmax;
  double upper_bound = 0.0;  // certified bound on the true maximum, T <= max <= upper_bound
  double h = 0.0;          // side of the finest box examined
  int refinement_level = 0;
  long boxes = 0;
};

// Maximum over the domain of the distance to the network and the boundary,
// by branch and bound on boxes using the 1-Lipschitz property of distance
// functions, until the maximum is bracketed within `tolerance`.
DistanceFieldSummary max_distance(const Domain& domain, const SigmaNetwork& sigma,
                                  double tolerance = 1e-5);

// Lower bound for L * max distance over connected networks of length L in
// the unit square.
double theta_infinity_certificate(double L);

// Distance to the network and the boundary at every node of a grid; exterior
// nodes carry 0.
std::vector<double> distance_field(const GridDiscretization& grid, const Domain& domain,
                                   const SigmaNetwork& sigma);

}  // namespace ribopt
