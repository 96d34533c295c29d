#include "ribopt/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ribopt/bounds.hpp"
#include "ribopt/error.hpp"
#include "ribopt/maxdist.hpp"

namespace ribopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p_at_least_one(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("p must be a finite number >= 1");
}

}  // namespace

DensityField uniform_density(const Domain& domain) {
  const double a = domain.area();
  return {[a](Vec2) { return 1.0 / a; }, "uniform"};
}

DensityField fitted_density(const FittedMeasure& fitted) {
  return {[fitted](Vec2 p) { return fitted.density_at(p); }, "fitted"};
}

double grid_max(const ScalarField& g, const Domain& domain, double resolution) {
  const Box bb = domain.bounding_box();
  const int nx = std::max(1, static_cast<int>(std::ceil(bb.width() / resolution)));
  const int ny = std::max(1, static_cast<int>(std::ceil(bb.height() / resolution)));
  double best = -kInf;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const Vec2 x = bb.lo + Vec2{bb.width() * i / nx, bb.height() * j / ny};
      if (!domain.contains(x)) continue;
      best = std::max(best, g(x));
      if (std::isinf(best)) return best;
    }
  }
  for (const Vec2& v : domain.outer()) best = std::max(best, g(v));
  for (const auto& hole : domain.holes()) {
    for (const Vec2& v : hole) best = std::max(best, g(v));
  }
  return best;
}

double gamma_limit_F(const DensityField& f, const CoefficientField& rho,
                     const CoefficientField& sigma_coef, double p, const Domain& domain,
                     double resolution) {
  check_p_at_least_one(p);
  const double sup = grid_max(
      [&](Vec2 x) {
        const double fx = f(x);
        if (fx < 1e-12) return kInf;
        return rho(x) / (sigma_coef(x) * std::pow(fx, p));
      },
      domain, resolution);
  return sup / Lambda_p(p);
}

DensityField optimal_density(const CoefficientField& rho, const CoefficientField& sigma_coef,
                             double p, const Domain& domain) {
  check_p_at_least_one(p);
  require_positive(rho, domain, "rho");
  require_positive(sigma_coef, domain, "sigma");
  auto raw = [rho, sigma_coef, p](Vec2 x) { return std::pow(rho(x) / sigma_coef(x), 1.0 / p); };
  const double z = integrate(raw, domain, 16);
  return {[raw, z](Vec2 x) { return raw(x) / z; }, "optimal"};
}

double limit_value(const CoefficientField& rho, const CoefficientField& sigma_coef, double p,
                   const Domain& domain) {
  check_p_at_least_one(p);
  require_positive(rho, domain, "rho");
  require_positive(sigma_coef, domain, "sigma");
  const double z = integrate([&](Vec2 x) { return std::pow(rho(x) / sigma_coef(x), 1.0 / p); },
                             domain, 16);
  return std::pow(z, p) / Lambda_p(p);
}

double EmpiricalMeasure::total() const {
  double t = 0.0;
  for (const auto& c : cells) t += c.mass;
  return t;
}

EmpiricalMeasure empirical_measure(const SigmaNetwork& sigma, double s) {
  if (!(s > 0.0)) throw InvalidInput("cell side must be positive");
  const double total = sigma.length();
  if (!(total > 0.0)) throw InvalidInput("empirical measure of a zero-length network");
  const Box bb = sigma.bounding_box();
  const int i0 = static_cast<int>(std::floor(bb.lo.x / s + 1e-12));
  const int j0 = static_cast<int>(std::floor(bb.lo.y / s + 1e-12));
  const int i1 = std::max(i0 + 1, static_cast<int>(std::ceil(bb.hi.x / s - 1e-12)));
  const int j1 = std::max(j0 + 1, static_cast<int>(std::ceil(bb.hi.y / s - 1e-12)));
  const int nx = i1 - i0;
  const int ny = j1 - j0;
  EmpiricalMeasure m;
  m.s = s;
  m.cells.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      auto& c = m.cells[static_cast<std::size_t>(j) * nx + i];
      c.ix = i0 + i;
      c.iy = j0 + j;
      c.box = {{c.ix * s, c.iy * s}, {(c.ix + 1) * s, (c.iy + 1) * s}};
    }
  }
  const double tol = 1e-12 * std::max(1.0, s);
  for (const auto& seg : sigma.segments()) {
    const Box sb = bounding_box(seg);
    const int a0 = std::clamp(static_cast<int>(std::floor(sb.lo.x / s)) - 1 - i0, 0, nx - 1);
    const int a1 = std::clamp(static_cast<int>(std::floor(sb.hi.x / s)) + 1 - i0, 0, nx - 1);
    const int b0 = std::clamp(static_cast<int>(std::floor(sb.lo.y / s)) - 1 - j0, 0, ny - 1);
    const int b1 = std::clamp(static_cast<int>(std::floor(sb.hi.y / s)) + 1 - j0, 0, ny - 1);
    for (int j = b0; j <= b1; ++j) {
      for (int i = a0; i <= a1; ++i) {
        auto& c = m.cells[static_cast<std::size_t>(j) * nx + i];
        const auto piece = clip_to_box(seg, c.box);
        if (!piece) continue;
        const double len = piece->length();
        if (len <= 0.0) continue;
        // A piece on an edge between two cells of the range is shared.
        double weight = 1.0;
        const bool on_left = std::abs(piece->a.x - c.box.lo.x) < tol && std::abs(piece->b.x - c.box.lo.x) < tol;
        const bool on_right = std::abs(piece->a.x - c.box.hi.x) < tol && std::abs(piece->b.x - c.box.hi.x) < tol;
        const bool on_bottom = std::abs(piece->a.y - c.box.lo.y) < tol && std::abs(piece->b.y - c.box.lo.y) < tol;
        const bool on_top = std::abs(piece->a.y - c.box.hi.y) < tol && std::abs(piece->b.y - c.box.hi.y) < tol;
        if ((on_left && i > 0) || (on_right && i < nx - 1) || (on_bottom && j > 0) ||
            (on_top && j < ny - 1)) {
          weight = 0.5;
        }
        c.mass += weight * len / total;
      }
    }
  }
  return m;
}

double scaled_objective(const SigmaNetwork& sigma, double L, double p, const CoefficientField& rho,
                        const CoefficientField& sigma_coef, const Domain& domain, double h,
                        const SolverOptions& options) {
  const EigenResult r = p == 2.0 ? lambda2(domain, sigma, rho, sigma_coef, h, options)
                                 : lambda_p(domain, sigma, rho, sigma_coef, p, h, options);
  return std::pow(L, p) / r.lambda;
}

double scaled_objective_infinity(const SigmaNetwork& sigma, double L, const Domain& domain,
                                 double tolerance) {
  return L * max_distance(domain, sigma, tolerance).T;
}

double gamma_limit_F_infinity(const DensityField& f, const Domain& domain, double resolution) {
  return 0.5 * grid_max(
                   [&](Vec2 x) {
                     const double fx = f(x);
                     return fx < 1e-12 ? kInf : 1.0 / fx;
                   },
                   domain, resolution);
}

std::vector<ThetaRow> theta_study(double p, const std::vector<int>& n_list, StudyStructure structure,
                                  int cells_per_gap, const SolverOptions& options) {
  const Domain square = Domain::unit_square();
  const CoefficientField one = CoefficientField::constant(1.0);
  std::vector<ThetaRow> rows;
  for (int n : n_list) {
    const SigmaNetwork sigma = structure == StudyStructure::Comb ? build_comb(n) : build_grid_structure(n);
    ThetaRow row;
    row.n = n;
    row.L = sigma.length();
    if (std::isinf(p)) {
      row.value = max_distance(square, sigma, 1e-7).T;
      row.ratio = row.L * row.value;
      row.limit = 0.5;
    } else {
      const double h = 1.0 / (static_cast<double>(cells_per_gap) * n);
      const EigenResult r = p == 2.0 ? lambda2(square, sigma, one, one, h, options)
                                     : lambda_p(square, sigma, one, one, p, h, options);
      row.value = r.lambda;
      row.ratio = std::pow(row.L, p) / r.lambda;
      row.limit = 1.0 / Lambda_p(p);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<DensityRow> density_discrepancy(const SigmaNetwork& sigma, const DensityField& f,
                                            const Domain& domain, double s) {
  const EmpiricalMeasure m = empirical_measure(sigma, s);
  std::vector<DensityRow> rows;
  rows.reserve(m.cells.size());
  for (const auto& c : m.cells) {
    const double target = domain.clipped_area(c.box) > 0.0 ? integrate(f.f, domain, c.box, 6) : 0.0;
    rows.push_back({(c.box.lo + c.box.hi) * 0.5, c.mass, target});
  }
  return rows;
}

}  // namespace ribopt
