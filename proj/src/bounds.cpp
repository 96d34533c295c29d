#include "ribopt/bounds.hpp"

#include <cmath>
#include <numbers>

#include "ribopt/error.hpp"

namespace ribopt {

using std::numbers::pi;

double Lambda_p(double p) {
  if (!(p >= 1.0)) throw InvalidInput("Lambda_p needs p >= 1");
  if (p == 1.0) return 2.0;
  if (std::isinf(p)) throw InvalidInput("Lambda_p is not defined at p = inf");
  return (p - 1.0) * std::pow(2.0 * pi / (p * std::sin(pi / p)), p);
}

double tbar(double sigma_len, double area, int kappa) {
  if (!(area > 0.0)) throw InvalidInput("area must be positive");
  if (sigma_len < 0.0) throw InvalidInput("length must be non-negative");
  if (kappa < 1) throw InvalidInput("boundary component count must be at least 1");
  const double c = (kappa + 1) * pi;
  return area / (sigma_len + std::sqrt(sigma_len * sigma_len + c * area));
}

double H_of_t(double t, double sigma_len, double area, int kappa) {
  if (t < 0.0) throw InvalidInput("t must be non-negative");
  if (t >= tbar(sigma_len, area, kappa)) return area;
  return 2.0 * sigma_len * t + (kappa + 1) * pi * t * t;
}

double sigma_boundary_length(const Domain& domain, const SigmaNetwork& sigma) {
  double shared = 0.0;
  for (const auto& s : sigma.segments()) {
    for (const auto& b : domain.boundary()) shared += collinear_overlap(s, b, 1e-9);
  }
  return sigma.length() + domain.perimeter() - shared;
}

LengthBoundContext LengthBoundContext::make(const Domain& domain, const SigmaNetwork& sigma) {
  LengthBoundContext ctx;
  ctx.sigma_len = sigma_boundary_length(domain, sigma);
  ctx.area = domain.area();
  ctx.kappa = domain.boundary_components();
  ctx.tbar = ribopt::tbar(ctx.sigma_len, ctx.area, ctx.kappa);
  return ctx;
}

double upper_bound_lambda(const LengthBoundContext& ctx, double p) {
  const double t = ctx.tbar;
  return Lambda_p(p) / std::pow(2.0 * t, p) * (1.0 + (ctx.kappa + 1) * pi * t / ctx.sigma_len);
}

double upper_bound_lambda(const Domain& domain, const SigmaNetwork& sigma, double p) {
  return upper_bound_lambda(LengthBoundContext::make(domain, sigma), p);
}

double lambda2_rectangle(int n) {
  if (n < 1) throw InvalidInput("rectangle index must be >= 1");
  return pi * pi * (static_cast<double>(n) * n + 1.0);
}

double cheeger_rectangle(int n) {
  if (n < 1) throw InvalidInput("rectangle index must be >= 1");
  const double k = 1.0 / n;
  return n * (1.0 + k + std::sqrt((1.0 - k) * (1.0 - k) + pi * k));
}

double cheeger_rectangle_direct(int n) {
  if (n < 1) throw InvalidInput("rectangle index must be >= 1");
  const double k = 1.0 / n;
  return (4.0 - pi) / (1.0 + k - std::sqrt((1.0 - k) * (1.0 - k) + pi * k));
}

}  // namespace ribopt
