#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "ribopt/coefficient.hpp"
#include "ribopt/discretize.hpp"

namespace ribopt::detail {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Five-point stiffness and lumped mass on one component of interior nodes.
// Unknowns are numbered by position in `component`.
struct ComponentSystem {
  SparseMatrix K;            // (1/h^2) sum over edges of sigma(midpoint) (u_i - u_j)^2
  Eigen::VectorXd mass;      // rho at the node
};

ComponentSystem assemble_component(const GridDiscretization& grid, const std::vector<int>& component,
                                   const CoefficientField& rho, const CoefficientField& sigma);

// Corner-gradient discretization of sum_cells sigma |grad u|^p and of
// sum_nodes rho |u|^p on one component; both carry the h^2 area factor.
class PEnergy {
 public:
  PEnergy(const GridDiscretization& grid, const std::vector<int>& component,
          const CoefficientField& rho, const CoefficientField& sigma, double p);

  double numerator(const Eigen::VectorXd& u, Eigen::VectorXd* grad, double eps = 0.0) const;
  double denominator(const Eigen::VectorXd& u, Eigen::VectorXd* grad) const;
  double p() const { return p_; }

 private:
  struct Cell {
    int c[4];  // local unknowns at (i,j), (i+1,j), (i,j+1), (i+1,j+1); -1 where u = 0
    double weight;
  };
  std::vector<Cell> cells_;
  Eigen::VectorXd rho_h2_;
  double h_;
  double p_;
};

// Clamp a point into the domain's bounding box before evaluating a field,
// so that stencil points just outside the box stay in the checked region.
inline Vec2 clamp_to_box(Vec2 p, const Box& b) {
  return {std::clamp(p.x, b.lo.x, b.hi.x), std::clamp(p.y, b.lo.y, b.hi.y)};
}

}  // namespace ribopt::detail
