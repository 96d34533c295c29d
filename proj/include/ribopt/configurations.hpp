#pragma once

#include <vector>

#include "ribopt/domain.hpp"
#include "ribopt/quadrature.hpp"
#include "ribopt/sigma_network.hpp"

namespace ribopt {

// n+1 unit verticals at x = k/n plus the bottom side of the unit square.
SigmaNetwork build_comb(int n);

// n+1 horizontal and n+1 vertical unit lines in the unit square.
SigmaNetwork build_grid_structure(int n);

// Chords of the unit square on the lines x.nu = (k + offset)/n, with
// nu = (sin angle, -cos angle), together with the square's boundary.
SigmaNetwork build_oblique_comb(int n, double angle, double offset = 0.0);

// Pieces of the parallel lines x.nu = (k + offset) * spacing inside the
// domain, ordered by k; nu as in build_oblique_comb.
std::vector<Segment> parallel_chords(const Domain& domain, double angle, double spacing,
                                     double offset = 0.0);

// Unit-square tile: its boundary plus verticals at x = j/m, 0 < j < m.
SigmaNetwork build_boxed_comb_tile(int m);

// Length of the part of a tile inside the half-open unit square [0,1)^2.
double effective_tile_length(const SigmaNetwork& tile);

struct FittedCell {
  int ix = 0;  // lattice index: the cell is [ix s, (ix+1) s] x [iy s, (iy+1) s]
  int iy = 0;
  Box box;
  double alpha = 0.0;  // piecewise-constant density on the cell
  double area = 0.0;   // |domain intersected with cell|
};

// Piecewise-constant probability density on the lattice (sZ)^2.
struct FittedMeasure {
  double s = 0.0;
  std::vector<FittedCell> cells;

  double density_at(Vec2 p) const;
  // Sum of alpha |cell| over cells, which is 1 after normalization.
  double total_mass() const;
};

// Fits a probability density on the domain to the lattice of side s. Cells
// with zero clipped area are dropped.
FittedMeasure fit_measure_to_grid(const ScalarField& f, double s, const Domain& domain,
                                  int subdivisions = 4);

// Copies of the tile scaled by s/k_i placed k_i x k_i times in every cell,
// with k_i = floor(s alpha_i (L - sqrt L) / L_e), clipped to the domain,
// together with the domain boundary.
SigmaNetwork build_tiled_sigma(double L, const FittedMeasure& fitted, const SigmaNetwork& tile,
                               const Domain& domain);

// Tile multiplicity per fitted cell for the given budget; zero entries mean
// the budget is too small.
std::vector<int> tile_counts(double L, const FittedMeasure& fitted, const SigmaNetwork& tile);

}  // namespace ribopt
