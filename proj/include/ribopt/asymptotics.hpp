#pragma once

#include <string>
#include <vector>

#include "ribopt/coefficient.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/quadrature.hpp"
#include "ribopt/spectral.hpp"

namespace ribopt {

// Non-negative density on a domain.
struct DensityField {
  ScalarField f;
  std::string description;

  double operator()(Vec2 p) const { return f(p); }
};

DensityField uniform_density(const Domain& domain);
DensityField fitted_density(const FittedMeasure& fitted);

// Max of g over grid nodes of spacing <= resolution in the closed domain,
// plus the polygon vertices.
double grid_max(const ScalarField& g, const Domain& domain, double resolution);

// (1/Lambda_p) sup rho / (sigma f^p); +inf where f < 1e-12.
double gamma_limit_F(const DensityField& f, const CoefficientField& rho,
                     const CoefficientField& sigma_coef, double p, const Domain& domain,
                     double resolution = 1.0 / 256);

// f = (rho/sigma)^(1/p) / integral of (rho/sigma)^(1/p).
DensityField optimal_density(const CoefficientField& rho, const CoefficientField& sigma_coef,
                             double p, const Domain& domain);

// (integral of (rho/sigma)^(1/p))^p / Lambda_p.
double limit_value(const CoefficientField& rho, const CoefficientField& sigma_coef, double p,
                   const Domain& domain);

struct MeasureCell {
  int ix = 0;
  int iy = 0;
  Box box;
  double mass = 0.0;
};

// Normalized length of the network per cell of the lattice (sZ)^2 covering
// the network's bounding box. Length lying on an edge shared by two cells of
// the lattice range is split evenly between them.
struct EmpiricalMeasure {
  double s = 0.0;
  std::vector<MeasureCell> cells;

  double total() const;
};

EmpiricalMeasure empirical_measure(const SigmaNetwork& sigma, double s);

// L^p / lambda_p and L * max distance.
double scaled_objective(const SigmaNetwork& sigma, double L, double p, const CoefficientField& rho,
                        const CoefficientField& sigma_coef, const Domain& domain, double h,
                        const SolverOptions& options = {});
double scaled_objective_infinity(const SigmaNetwork& sigma, double L, const Domain& domain,
                                 double tolerance = 1e-6);

// (1/2) sup 1/f; +inf where f < 1e-12.
double gamma_limit_F_infinity(const DensityField& f, const Domain& domain,
                              double resolution = 1.0 / 256);

struct ThetaRow {
  int n = 0;
  double L = 0.0;
  double value = 0.0;  // eigenvalue, or the maximal distance when p is infinite
  double ratio = 0.0;  // L^p / lambda, or L * max distance
  double limit = 0.0;  // 1 / Lambda_p, or 1/2
};

enum class StudyStructure { Comb, Grid };

// Ratios for combs (length n + 2) or grid structures (length 2(n + 1)) on
// the unit square with unit weights. Eigenvalues use spacing
// h = 1 / (cells_per_gap * n) so that every line lies on grid nodes.
std::vector<ThetaRow> theta_study(double p, const std::vector<int>& n_list,
                                  StudyStructure structure = StudyStructure::Comb,
                                  int cells_per_gap = 16, const SolverOptions& options = {});

struct DensityRow {
  Vec2 cell_centre;
  double mass = 0.0;
  double target = 0.0;
};

// Empirical cell masses of a network against the target integral of f over
// the same cells of side s.
std::vector<DensityRow> density_discrepancy(const SigmaNetwork& sigma, const DensityField& f,
                                            const Domain& domain, double s);

}  // namespace ribopt
