#pragma once

#include <optional>

#include "ribopt/domain.hpp"
#include "ribopt/sigma_network.hpp"

namespace ribopt {

// First Dirichlet p-eigenvalue of the unit interval; 2 at p = 1.
double Lambda_p(double p);

// Positive root of 2 sigma_len t + (kappa + 1) pi t^2 = area.
double tbar(double sigma_len, double area, int kappa);

// 2 sigma_len t + (kappa + 1) pi t^2, capped at area beyond tbar.
double H_of_t(double t, double sigma_len, double area, int kappa);

// Length of the union of the network and the domain boundary, counting
// pieces of the network lying on the boundary once.
double sigma_boundary_length(const Domain& domain, const SigmaNetwork& sigma);

struct LengthBoundContext {
  double sigma_len = 0.0;  // length of the network together with the boundary
  double area = 0.0;
  int kappa = 1;           // boundary components of the domain
  double tbar = 0.0;
  std::optional<double> T;  // maximal distance, when measured

  static LengthBoundContext make(const Domain& domain, const SigmaNetwork& sigma);
  double H(double t) const { return H_of_t(t, sigma_len, area, kappa); }
};

// Lambda_p / (2 tbar)^p * (1 + (kappa + 1) pi tbar / sigma_len).
double upper_bound_lambda(const Domain& domain, const SigmaNetwork& sigma, double p);
double upper_bound_lambda(const LengthBoundContext& ctx, double p);

// pi^2 (n^2 + 1): Dirichlet Laplacian eigenvalue of the rectangle (0,1/n) x (0,1).
double lambda2_rectangle(int n);

// Cheeger constant of the same rectangle, in the cancellation-free form.
double cheeger_rectangle(int n);
// (4 - pi) / (1 + 1/n - sqrt((1 - 1/n)^2 + pi/n)).
double cheeger_rectangle_direct(int n);

}  // namespace ribopt
