#pragma once

#include <cstdint>
#include <vector>

#include "ribopt/coefficient.hpp"
#include "ribopt/discretize.hpp"
#include "ribopt/quadrature.hpp"

namespace ribopt {

struct SolverOptions {
  double tolerance = 1e-8;          // relative residual for p = 2
  int max_iterations = 500;         // outer inverse-iteration steps for p = 2
  int max_descent_iterations = 20000;
  double stall_tolerance = 1e-10;   // relative quotient decrease over the stall window
  int stall_window = 50;
  double band_factor = 0.5;
  std::uint64_t seed = 1;
  bool random_start = false;        // general p: start from a random positive vector
};

struct EigenResult {
  double lambda = 0.0;
  // Values on the grid's unknowns: the minimizing component's eigenfunction,
  // zero on the other components, normalized so that sum rho |u|^p h^2 = 1.
  std::vector<double> eigenfunction;
  double residual = 0.0;
  int iterations = 0;
  double h = 0.0;
  int component_id = 0;
  int num_components = 0;
  bool converged = true;
  GridDiscretization grid;

  // Eigenfunction on all grid nodes (zero off the interior), row-major.
  std::vector<double> node_values() const;
};

EigenResult lambda2(const Domain& domain, const SigmaNetwork& sigma, const CoefficientField& rho,
                    const CoefficientField& sigma_coef, double h, const SolverOptions& options = {});
EigenResult lambda2(GridDiscretization grid, const CoefficientField& rho,
                    const CoefficientField& sigma_coef, const SolverOptions& options = {});

EigenResult lambda_p(const Domain& domain, const SigmaNetwork& sigma, const CoefficientField& rho,
                     const CoefficientField& sigma_coef, double p, double h,
                     const SolverOptions& options = {});
EigenResult lambda_p(GridDiscretization grid, const CoefficientField& rho,
                     const CoefficientField& sigma_coef, double p, const SolverOptions& options = {});

// Reciprocal of the maximal distance to the network and the boundary.
double lambda_infinity(const Domain& domain, const SigmaNetwork& sigma, double tolerance = 1e-6);

// First Dirichlet p-eigenvalue of (0,1) with n_nodes interior nodes.
double lambda_1d(double p, int n_nodes, const SolverOptions& options = {});

// Discrete quotient of u given on the grid's unknowns. At p = 2 this is the
// five-point form used by lambda2; otherwise the corner-gradient form used by
// lambda_p.
double rayleigh_quotient(const GridDiscretization& grid, const std::vector<double>& u,
                         const CoefficientField& rho, const CoefficientField& sigma_coef, double p);
// Same, sampling u at the interior nodes of a fresh discretization.
double rayleigh_quotient(const ScalarField& u, const Domain& domain, const SigmaNetwork& sigma,
                         const CoefficientField& rho, const CoefficientField& sigma_coef, double p,
                         double h);

}  // namespace ribopt
