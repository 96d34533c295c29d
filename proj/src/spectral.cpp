#include "ribopt/spectral.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <numbers>
#include <random>

#include "grid_operators.hpp"
#include "ribopt/error.hpp"
#include "ribopt/maxdist.hpp"
#include "rayleigh_descent.hpp"

namespace ribopt {

using detail::SparseMatrix;
using Eigen::VectorXd;

namespace {

struct Eigenpair {
  double lambda = 0.0;
  VectorXd u;  // u^T M u = 1
  double residual = 0.0;
  int iterations = 0;
};

double relative_residual(const SparseMatrix& K, const VectorXd& mass, const VectorXd& u, double lambda,
                         VectorXd* r_out = nullptr) {
  const VectorXd mu = mass.cwiseProduct(u);
  VectorXd r = K * u - lambda * mu;
  const double res = r.norm() / (lambda * mu.norm());
  if (r_out) *r_out = std::move(r);
  return res;
}

// Smallest eigenpair of K u = lambda M u (M diagonal, both SPD) by shifted
// inverse iteration. Shifts stay below lambda_1, certified by a successful
// Cholesky factorization of K - shift M.
Eigenpair smallest_eigenpair(const SparseMatrix& K, const VectorXd& mass, double tol, int max_outer) {
  const Eigen::Index n = K.rows();
  Eigenpair out;
  if (n == 1) {
    out.lambda = K.coeff(0, 0) / mass[0];
    out.u = VectorXd::Constant(1, 1.0 / std::sqrt(mass[0]));
    return out;
  }
  SparseMatrix M(n, n);
  {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, mass[i]);
    M.setFromTriplets(t.begin(), t.end());
  }
  Eigen::SimplicialLLT<SparseMatrix> llt;
  llt.analyzePattern(K);
  llt.factorize(K);
  if (llt.info() != Eigen::Success) throw SolverError("stiffness matrix is not positive definite");
  double shift = 0.0;
  double safe_shift = 0.0;

  VectorXd u = VectorXd::Ones(n);
  u /= std::sqrt(u.dot(mass.cwiseProduct(u)));
  for (int it = 1; it <= max_outer; ++it) {
    VectorXd y = llt.solve(mass.cwiseProduct(u));
    u = y / std::sqrt(y.dot(mass.cwiseProduct(y)));
    const VectorXd Ku = K * u;
    const double rq = u.dot(Ku);
    VectorXd r;
    const double res = relative_residual(K, mass, u, rq, &r);
    out.lambda = rq;
    out.residual = res;
    out.iterations = it;
    if (res <= tol) {
      out.u = std::move(u);
      return out;
    }
    const double delta = std::sqrt(r.dot(r.cwiseQuotient(mass)));
    const double target = rq - std::max(2.0 * delta, 1e-7 * rq);
    if (target > shift && rq - target < 0.5 * (rq - shift)) {
      double candidate = target;
      for (int attempt = 0; attempt < 6; ++attempt) {
        SparseMatrix A = K - candidate * M;
        llt.factorize(A);
        if (llt.info() == Eigen::Success) {
          shift = candidate;
          safe_shift = candidate;
          break;
        }
        candidate = safe_shift + 0.5 * (candidate - safe_shift);
      }
      if (shift != safe_shift || llt.info() != Eigen::Success) {
        SparseMatrix A = K - safe_shift * M;
        llt.factorize(A);
        shift = safe_shift;
      }
    }
  }
  throw SolverError("inverse iteration did not converge in " + std::to_string(max_outer) +
                    " iterations (residual " + std::to_string(out.residual) + ", lambda " +
                    std::to_string(out.lambda) + ")");
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw InvalidInput("finite-p solver needs 1 < p < inf (got " + std::to_string(p) + ")");
  }
}

EigenResult assemble_result(GridDiscretization grid, int num_components) {
  EigenResult r;
  r.h = grid.h;
  r.num_components = num_components;
  r.lambda = INFINITY;
  r.eigenfunction.assign(grid.num_unknowns(), 0.0);
  r.grid = std::move(grid);
  return r;
}

VectorXd random_positive(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

std::vector<double> EigenResult::node_values() const {
  std::vector<double> out(grid.classes.size(), 0.0);
  for (int k = 0; k < grid.num_unknowns(); ++k) out[grid.node_of_unknown[k]] = eigenfunction[k];
  return out;
}

EigenResult lambda2(const Domain& domain, const SigmaNetwork& sigma, const CoefficientField& rho,
                    const CoefficientField& sigma_coef, double h, const SolverOptions& options) {
  require_positive(rho, domain, "rho");
  require_positive(sigma_coef, domain, "sigma");
  return lambda2(discretize(domain, sigma, h, options.band_factor), rho, sigma_coef, options);
}

EigenResult lambda2(GridDiscretization grid, const CoefficientField& rho,
                    const CoefficientField& sigma_coef, const SolverOptions& options) {
  const auto components = connected_components(grid);
  EigenResult best = assemble_result(std::move(grid), static_cast<int>(components.size()));
  const auto& g = best.grid;
  Eigenpair winner;
  int total_iterations = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto sys = detail::assemble_component(g, components[c], rho, sigma_coef);
    Eigenpair pair = smallest_eigenpair(sys.K, sys.mass, options.tolerance, options.max_iterations);
    total_iterations += pair.iterations;
    if (pair.lambda < best.lambda) {
      best.lambda = pair.lambda;
      best.component_id = static_cast<int>(c);
      best.residual = pair.residual;
      winner = std::move(pair);
    }
  }
  VectorXd u = winner.u;
  if (u.sum() < 0.0) u = -u;
  if (u.minCoeff() < -1e-6 * u.maxCoeff()) {
    throw SolverError("first eigenfunction changes sign; eigensolver converged to a wrong mode");
  }
  // u^T M u = 1 means sum rho u^2 = 1; the quadrature weight is h^2.
  u /= g.h;
  const auto& comp = components[best.component_id];
  for (std::size_t k = 0; k < comp.size(); ++k) best.eigenfunction[comp[k]] = u[k];
  best.iterations = total_iterations;
  return best;
}

EigenResult lambda_p(const Domain& domain, const SigmaNetwork& sigma, const CoefficientField& rho,
                     const CoefficientField& sigma_coef, double p, double h,
                     const SolverOptions& options) {
  check_p(p);
  require_positive(rho, domain, "rho");
  require_positive(sigma_coef, domain, "sigma");
  return lambda_p(discretize(domain, sigma, h, options.band_factor), rho, sigma_coef, p, options);
}

EigenResult lambda_p(GridDiscretization grid, const CoefficientField& rho,
                     const CoefficientField& sigma_coef, double p, const SolverOptions& options) {
  check_p(p);
  const auto components = connected_components(grid);
  EigenResult best = assemble_result(std::move(grid), static_cast<int>(components.size()));
  const auto& g = best.grid;
  detail::DescentOptions dopt;
  dopt.max_iterations = options.max_descent_iterations;
  dopt.residual_tolerance = options.tolerance;
  dopt.stall_tolerance = options.stall_tolerance;
  dopt.stall_window = options.stall_window;
  detail::DescentResult winner;
  int total_iterations = 0;
  bool all_converged = true;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto sys = detail::assemble_component(g, components[c], rho, sigma_coef);
    VectorXd u0;
    if (options.random_start) {
      u0 = random_positive(sys.K.rows(), options.seed + c);
    } else {
      u0 = smallest_eigenpair(sys.K, sys.mass, 1e-6, options.max_iterations).u.cwiseAbs();
    }
    const detail::PEnergy energy(g, components[c], rho, sigma_coef, p);
    const double eps = p < 2.0 ? 1e-8 * u0.cwiseAbs().maxCoeff() / g.h : 0.0;
    auto num = [&](const VectorXd& u, VectorXd* gr) { return energy.numerator(u, gr); };
    auto num_reg = [&](const VectorXd& u, VectorXd* gr) { return energy.numerator(u, gr, eps); };
    auto den = [&](const VectorXd& u, VectorXd* gr) { return energy.denominator(u, gr); };
    auto res = detail::minimize_quotient(num, num_reg, den, p, sys.K, std::move(u0), dopt);
    total_iterations += res.iterations;
    all_converged = all_converged && res.converged;
    if (res.value < best.lambda) {
      best.lambda = res.value;
      best.component_id = static_cast<int>(c);
      best.residual = res.residual;
      winner = std::move(res);
    }
  }
  VectorXd u = winner.u;
  if (u.sum() < 0.0) u = -u;
  const auto& comp = components[best.component_id];
  for (std::size_t k = 0; k < comp.size(); ++k) best.eigenfunction[comp[k]] = u[k];
  best.iterations = total_iterations;
  best.converged = all_converged;
  return best;
}

double lambda_infinity(const Domain& domain, const SigmaNetwork& sigma, double tolerance) {
  const double T = max_distance(domain, sigma, tolerance).T;
  if (!(T > 0.0)) throw InvalidInput("maximal distance vanishes");
  return 1.0 / T;
}

double lambda_1d(double p, int n_nodes, const SolverOptions& options) {
  check_p(p);
  if (n_nodes < 64) throw InvalidInput("lambda_1d needs at least 64 nodes");
  const int n = n_nodes;
  const double h = 1.0 / (n + 1);
  SparseMatrix P(n, n);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0 / h);
    if (i + 1 < n) {
      t.emplace_back(i, i + 1, -1.0 / h);
      t.emplace_back(i + 1, i, -1.0 / h);
    }
  }
  P.setFromTriplets(t.begin(), t.end());
  VectorXd u0(n);
  for (int i = 0; i < n; ++i) u0[i] = std::sin(std::numbers::pi * (i + 1) * h);

  auto numerator = [&](const VectorXd& u, VectorXd* grad, double eps) {
    if (grad) grad->setZero(n);
    double total = 0.0;
    for (int e = 0; e <= n; ++e) {
      const double left = e > 0 ? u[e - 1] : 0.0;
      const double right = e < n ? u[e] : 0.0;
      const double d = (right - left) / h;
      total += std::pow(std::abs(d), p) * h;
      if (grad) {
        const double f = p * std::pow(d * d + eps * eps, 0.5 * p - 1.0) * d;
        if (e < n) (*grad)[e] += f;
        if (e > 0) (*grad)[e - 1] -= f;
      }
    }
    return total;
  };
  const double eps = p < 2.0 ? 1e-8 / h : 0.0;
  auto num = [&](const VectorXd& u, VectorXd* g) { return numerator(u, g, 0.0); };
  auto num_reg = [&](const VectorXd& u, VectorXd* g) { return numerator(u, g, eps); };
  auto den = [&](const VectorXd& u, VectorXd* grad) {
    double total = 0.0;
    if (grad) grad->resize(n);
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(u[i]);
      const double ap = std::pow(a, p);
      total += ap * h;
      if (grad) (*grad)[i] = a > 0.0 ? p * ap * h / u[i] : 0.0;
    }
    return total;
  };
  detail::DescentOptions dopt;
  dopt.max_iterations = options.max_descent_iterations;
  dopt.residual_tolerance = options.tolerance;
  dopt.stall_tolerance = options.stall_tolerance;
  dopt.stall_window = options.stall_window;
  return detail::minimize_quotient(num, num_reg, den, p, P, std::move(u0), dopt).value;
}

double rayleigh_quotient(const GridDiscretization& grid, const std::vector<double>& u,
                         const CoefficientField& rho, const CoefficientField& sigma_coef, double p) {
  check_p(p);
  if (u.size() != static_cast<std::size_t>(grid.num_unknowns())) {
    throw InvalidInput("function size does not match the grid's unknowns");
  }
  std::vector<int> all(grid.num_unknowns());
  for (int k = 0; k < grid.num_unknowns(); ++k) all[k] = k;
  const VectorXd v = Eigen::Map<const VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
  double num = 0.0;
  double den = 0.0;
  if (p == 2.0) {
    const auto sys = detail::assemble_component(grid, all, rho, sigma_coef);
    num = v.dot(sys.K * v);
    den = v.dot(sys.mass.cwiseProduct(v));
  } else {
    const detail::PEnergy energy(grid, all, rho, sigma_coef, p);
    num = energy.numerator(v, nullptr);
    den = energy.denominator(v, nullptr);
  }
  if (!(den > 0.0)) throw InvalidInput("quotient of the zero function");
  return num / den;
}

double rayleigh_quotient(const ScalarField& u, const Domain& domain, const SigmaNetwork& sigma,
                         const CoefficientField& rho, const CoefficientField& sigma_coef, double p,
                         double h) {
  const auto grid = discretize(domain, sigma, h);
  std::vector<double> values(grid.num_unknowns());
  for (int k = 0; k < grid.num_unknowns(); ++k) values[k] = u(grid.node_position(grid.node_of_unknown[k]));
  return rayleigh_quotient(grid, values, rho, sigma_coef, p);
}

}  // namespace ribopt
