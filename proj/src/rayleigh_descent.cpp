#include "rayleigh_descent.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <deque>
#include <limits>

#include "ribopt/error.hpp"

namespace ribopt::detail {

DescentResult minimize_quotient(const QuotientPart& numerator, const QuotientPart& gradient_numerator,
                                const QuotientPart& denominator, double degree,
                                const Eigen::SparseMatrix<double>& preconditioner, Eigen::VectorXd u0,
                                const DescentOptions& options) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(preconditioner);
  if (solver.info() != Eigen::Success) throw SolverError("preconditioner factorization failed");

  auto normalize = [&](Eigen::VectorXd& u) {
    const double d = denominator(u, nullptr);
    if (!(d > 0.0)) throw SolverError("quotient denominator vanished");
    u /= std::pow(d, 1.0 / degree);
  };

  struct State {
    Eigen::VectorXd u;
    double n = 0.0;  // numerator at normalized u (= quotient)
    Eigen::VectorXd g;  // gradient of log N - log D
    double residual = 0.0;
  };
  auto evaluate = [&](Eigen::VectorXd u) {
    normalize(u);
    State s;
    Eigen::VectorXd gn, gd;
    s.n = numerator(u, nullptr);
    gradient_numerator(u, &gn);
    denominator(u, &gd);
    s.g = gn / s.n - gd;
    const double gd_norm = gd.norm();
    s.residual = gd_norm > 0.0 ? (gn - s.n * gd).norm() / (s.n * gd_norm) : INFINITY;
    s.u = std::move(u);
    return s;
  };
  auto objective = [&](const Eigen::VectorXd& u) {
    const double d = denominator(u, nullptr);
    const double n = numerator(u, nullptr);
    if (!(d > 0.0) || !(n > 0.0)) return std::numeric_limits<double>::infinity();
    return std::log(n) - std::log(d);
  };

  State cur = evaluate(std::move(u0));
  DescentResult result;
  Eigen::VectorXd z = solver.solve(cur.g);
  Eigen::VectorXd dir = -z;
  double gz_prev = cur.g.dot(z);
  Eigen::VectorXd z_prev = z;
  double step = 1.0;
  std::deque<double> history{cur.n};
  int it = 0;
  bool converged = cur.residual <= options.residual_tolerance;

  while (!converged && it < options.max_iterations) {
    ++it;
    double slope = cur.g.dot(dir);
    if (!(slope < 0.0)) {
      dir = -z;
      slope = -cur.g.dot(z);
    }
    if (!(slope < 0.0)) {
      converged = true;  // stationary to rounding
      break;
    }
    const double j0 = std::log(cur.n);
    double alpha = step;
    bool accepted = false;
    Eigen::VectorXd trial;
    for (int bt = 0; bt < 60; ++bt) {
      trial = cur.u + alpha * dir;
      const double j1 = objective(trial);
      if (j1 <= j0 + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      // Quadratic interpolation of the backtracking step, safeguarded.
      double next = 0.5 * alpha;
      if (std::isfinite(j1)) {
        const double q = -slope * alpha * alpha / (2.0 * (j1 - j0 - slope * alpha));
        if (q > 0.1 * alpha && q < 0.5 * alpha) next = q;
      }
      alpha = next;
    }
    if (!accepted) {
      if (dir.isApprox(-z)) {
        // Not even the preconditioned gradient step decreases the quotient
        // in floating point: stationary to rounding.
        converged = true;
        break;
      }
      dir = -z;
      continue;
    }
    step = std::min(4.0 * alpha, 1e6);
    State next = evaluate(trial);
    const Eigen::VectorXd z_new = solver.solve(next.g);
    const double gz = next.g.dot(z_new);
    const double beta = std::max(0.0, next.g.dot(z_new - z_prev) / gz_prev);
    dir = -z_new + beta * dir;
    // u was rescaled by normalization; rescale the direction alongside.
    z = z_new;
    z_prev = z_new;
    gz_prev = gz;
    cur = std::move(next);
    converged = cur.residual <= options.residual_tolerance;
    history.push_back(cur.n);
    if (static_cast<int>(history.size()) > options.stall_window + 1) history.pop_front();
    if (static_cast<int>(history.size()) == options.stall_window + 1 &&
        history.front() - history.back() < options.stall_tolerance * history.back()) {
      converged = true;
    }
  }

  result.u = std::move(cur.u);
  result.value = cur.n;
  result.residual = cur.residual;
  result.iterations = it;
  result.converged = converged;
  return result;
}

}  // namespace ribopt::detail
