#pragma once

#include <Eigen/Sparse>
#include <functional>

namespace ribopt::detail {

// Value and gradient of one side of a quotient.
using QuotientPart = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>;

struct DescentOptions {
  int max_iterations = 20000;
  double residual_tolerance = 1e-8;
  double stall_tolerance = 1e-10;  // relative decrease over the stall window
  int stall_window = 50;
};

struct DescentResult {
  Eigen::VectorXd u;   // normalized so that the denominator equals 1
  double value = 0.0;  // numerator / denominator at u
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Minimizes numerator(u) / denominator(u), both positively homogeneous of the
// same degree, by nonlinear conjugate gradients on the log-quotient with the
// SPD matrix `preconditioner` as metric. `gradient_numerator` may differ from
// the exact gradient by a regularization; it is used for search directions.
DescentResult minimize_quotient(const QuotientPart& numerator, const QuotientPart& gradient_numerator,
                                const QuotientPart& denominator, double degree,
                                const Eigen::SparseMatrix<double>& preconditioner, Eigen::VectorXd u0,
                                const DescentOptions& options);

}  // namespace ribopt::detail
