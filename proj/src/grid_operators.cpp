#include "grid_operators.hpp"

#include <cmath>
#include <unordered_map>

namespace ribopt::detail {

namespace {

Box grid_box(const GridDiscretization& grid) {
  return {grid.origin + Vec2{grid.h, grid.h},
          grid.origin + Vec2{(grid.nx - 2) * grid.h, (grid.ny - 2) * grid.h}};
}

std::vector<int> local_index(const GridDiscretization& grid, const std::vector<int>& component) {
  std::vector<int> local(grid.classes.size(), -1);
  for (std::size_t k = 0; k < component.size(); ++k) {
    local[grid.node_of_unknown[component[k]]] = static_cast<int>(k);
  }
  return local;
}

}  // namespace

ComponentSystem assemble_component(const GridDiscretization& grid, const std::vector<int>& component,
                                   const CoefficientField& rho, const CoefficientField& sigma) {
  const auto local = local_index(grid, component);
  const Box box = grid_box(grid);
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  const int n = static_cast<int>(component.size());
  ComponentSystem sys;
  sys.mass.resize(n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  for (int k = 0; k < n; ++k) {
    const int node = grid.node_of_unknown[component[k]];
    const int i = node % grid.nx;
    const int j = node / grid.nx;
    const Vec2 x = grid.node(i, j);
    sys.mass[k] = rho(clamp_to_box(x, box));
    double diag = 0.0;
    const int nbrs[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
    for (const auto& nb : nbrs) {
      const Vec2 mid = (x + grid.node(nb[0], nb[1])) * 0.5;
      const double w = sigma(clamp_to_box(mid, box)) * inv_h2;
      diag += w;
      const int m = local[grid.node_index(nb[0], nb[1])];
      if (m >= 0) trip.emplace_back(k, m, -w);
    }
    trip.emplace_back(k, k, diag);
  }
  sys.K.resize(n, n);
  sys.K.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

PEnergy::PEnergy(const GridDiscretization& grid, const std::vector<int>& component,
                 const CoefficientField& rho, const CoefficientField& sigma, double p)
    : h_(grid.h), p_(p) {
  const auto local = local_index(grid, component);
  const Box box = grid_box(grid);
  const int n = static_cast<int>(component.size());
  rho_h2_.resize(n);
  // Cells are keyed by their lower-left node; each interior node touches four.
  std::unordered_map<int, std::size_t> seen;
  for (int k = 0; k < n; ++k) {
    const int node = grid.node_of_unknown[component[k]];
    const int i = node % grid.nx;
    const int j = node / grid.nx;
    rho_h2_[k] = rho(clamp_to_box(grid.node(i, j), box)) * grid.h * grid.h;
    for (int ci = i - 1; ci <= i; ++ci) {
      for (int cj = j - 1; cj <= j; ++cj) {
        const int key = grid.node_index(ci, cj);
        if (seen.count(key)) continue;
        seen.emplace(key, cells_.size());
        Cell cell{};
        cell.c[0] = local[grid.node_index(ci, cj)];
        cell.c[1] = local[grid.node_index(ci + 1, cj)];
        cell.c[2] = local[grid.node_index(ci, cj + 1)];
        cell.c[3] = local[grid.node_index(ci + 1, cj + 1)];
        const Vec2 centre = grid.node(ci, cj) + Vec2{0.5 * grid.h, 0.5 * grid.h};
        cell.weight = sigma(clamp_to_box(centre, box)) * grid.h * grid.h / 4.0;
        cells_.push_back(cell);
      }
    }
  }
}

double PEnergy::numerator(const Eigen::VectorXd& u, Eigen::VectorXd* grad, double eps) const {
  if (grad) grad->setZero(u.size());
  const double inv_h = 1.0 / h_;
  const double eps2 = eps * eps;
  double total = 0.0;
  auto val = [&](int k) { return k >= 0 ? u[k] : 0.0; };
  auto add = [&](int k, double g) {
    if (k >= 0) (*grad)[k] += g;
  };
  for (const auto& cell : cells_) {
    const double u00 = val(cell.c[0]);
    const double u10 = val(cell.c[1]);
    const double u01 = val(cell.c[2]);
    const double u11 = val(cell.c[3]);
    const double dx0 = (u10 - u00) * inv_h;  // bottom edge
    const double dx1 = (u11 - u01) * inv_h;  // top edge
    const double dy0 = (u01 - u00) * inv_h;  // left edge
    const double dy1 = (u11 - u10) * inv_h;  // right edge
    // Corners: (bottom,left) (bottom,right) (top,left) (top,right).
    const double gx[4] = {dx0, dx0, dx1, dx1};
    const double gy[4] = {dy0, dy1, dy0, dy1};
    double cx0 = 0, cx1 = 0, cy0 = 0, cy1 = 0;
    for (int q = 0; q < 4; ++q) {
      const double s2 = gx[q] * gx[q] + gy[q] * gy[q];
      if (p_ == 2.0) {
        total += cell.weight * s2;
      } else {
        total += cell.weight * std::pow(s2, 0.5 * p_);
      }
      if (grad) {
        const double factor =
            p_ == 2.0 ? 2.0 * cell.weight : cell.weight * p_ * std::pow(s2 + eps2, 0.5 * p_ - 1.0);
        const double fx = factor * gx[q];
        const double fy = factor * gy[q];
        if (q < 2) cx0 += fx; else cx1 += fx;
        if (q % 2 == 0) cy0 += fy; else cy1 += fy;
      }
    }
    if (grad) {
      // d(dx0)/du10 = 1/h, d(dx0)/du00 = -1/h, etc.
      add(cell.c[1], cx0 * inv_h);
      add(cell.c[0], -cx0 * inv_h);
      add(cell.c[3], cx1 * inv_h);
      add(cell.c[2], -cx1 * inv_h);
      add(cell.c[2], cy0 * inv_h);
      add(cell.c[0], -cy0 * inv_h);
      add(cell.c[3], cy1 * inv_h);
      add(cell.c[1], -cy1 * inv_h);
    }
  }
  return total;
}

double PEnergy::denominator(const Eigen::VectorXd& u, Eigen::VectorXd* grad) const {
  double total = 0.0;
  if (grad) grad->resize(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double a = std::abs(u[k]);
    if (p_ == 2.0) {
      total += rho_h2_[k] * a * a;
      if (grad) (*grad)[k] = 2.0 * rho_h2_[k] * u[k];
    } else {
      const double ap = std::pow(a, p_);
      total += rho_h2_[k] * ap;
      if (grad) (*grad)[k] = a > 0.0 ? p_ * rho_h2_[k] * ap / u[k] : 0.0;
    }
  }
  return total;
}

}  // namespace ribopt::detail
