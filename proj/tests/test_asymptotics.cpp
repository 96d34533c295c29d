#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ribopt/asymptotics.hpp"
#include "ribopt/bounds.hpp"
#include "ribopt/error.hpp"
#include "ribopt/maxdist.hpp"

using namespace ribopt;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
const CoefficientField one = CoefficientField::constant(1.0);
const CoefficientField ramp2 = CoefficientField::squared_affine(1, 1, 0);  // (1 + x)^2

DensityField density(ScalarField f) { return {std::move(f), "test"}; }

}  // namespace

TEST_CASE("limit functional") {
  const Domain sq = Domain::unit_square();
  CHECK(gamma_limit_F(uniform_density(sq), one, one, 2, sq) == Approx(1 / (pi * pi)).epsilon(1e-12));
  CHECK(gamma_limit_F(uniform_density(sq), one, one, 2, sq) == Approx(0.10132).epsilon(1e-4));
  const auto gap = density([](Vec2 p) { return p.x < 0.5 ? 2.0 : 0.0; });
  CHECK(std::isinf(gamma_limit_F(gap, one, one, 2, sq)));
  const auto opt = optimal_density(ramp2, one, 2, sq);
  CHECK(gamma_limit_F(opt, ramp2, one, 2, sq) == Approx(2.25 / (pi * pi)).epsilon(1e-9));
}

TEST_CASE("optimal densities") {
  const Domain sq = Domain::unit_square();
  const auto flat = optimal_density(CoefficientField::constant(3), CoefficientField::constant(3), 2, sq);
  CHECK(flat({0.2, 0.9}) == Approx(1.0));
  const Domain tri({{0, 0}, {2, 0}, {0, 2}});
  CHECK(optimal_density(one, one, 2, tri)({0.1, 0.1}) == Approx(0.5));

  const auto f = optimal_density(ramp2, one, 2, sq);
  for (double x : {0.0, 0.3, 1.0}) CHECK(f({x, 0.4}) == Approx((1 + x) / 1.5).epsilon(1e-9));
  CHECK(integrate(f.f, sq) == Approx(1.0).epsilon(1e-9));

  // Flattening with p: max/min ratio (2^(2/p)).
  const auto f16 = optimal_density(ramp2, one, 16, sq);
  CHECK(f16({1, 0}) / f16({0, 0}) == Approx(std::pow(2.0, 2.0 / 16)).epsilon(1e-9));
  CHECK(f16({1, 0}) / f16({0, 0}) < f({1, 0}) / f({0, 0}));
}

TEST_CASE("optimal density minimizes the limit functional") {
  const Domain sq = Domain::unit_square();
  const auto rho = CoefficientField::affine(1, 2, 1);
  const auto opt = optimal_density(rho, one, 2, sq);
  const double best = gamma_limit_F(opt, rho, one, 2, sq, 1.0 / 128);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int k = 0; k < 20; ++k) {
    const double a = u(rng), b = u(rng);
    const ScalarField raw = [&, a, b](Vec2 p) { return opt(p) * (1 + a * std::sin(3 * p.x + 1) + b * p.y * p.x); };
    const double mass = integrate(raw, sq);
    const auto g = density([raw, mass](Vec2 p) { return raw(p) / mass; });
    CHECK(gamma_limit_F(g, rho, one, 2, sq, 1.0 / 128) >= best - 1e-9);
  }
  CHECK(best == Approx(limit_value(rho, one, 2, sq)).epsilon(1e-4));
}

TEST_CASE("limit values") {
  const Domain sq = Domain::unit_square();
  CHECK(limit_value(one, one, 2, sq) == Approx(1 / (pi * pi)).epsilon(1e-12));
  CHECK(limit_value(ramp2, one, 2, sq) == Approx(2.25 / (pi * pi)).epsilon(1e-9));
  CHECK(limit_value(ramp2, one, 2, sq) == Approx(0.22797).epsilon(1e-4));
  CHECK(limit_value(one, one, 1, sq) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empirical measures") {
  const auto m = empirical_measure(build_comb(2), 0.5);
  REQUIRE(m.cells.size() == 4);
  CHECK(m.total() == Approx(1.0).epsilon(1e-12));
  double left = 0;
  for (const auto& c : m.cells) {
    // Bottom cells hold half a side, half the base and a quarter of the middle vertical.
    const double expected = (c.iy == 0 ? 1.25 : 0.75) / 4;
    CHECK(c.mass == Approx(expected).epsilon(1e-12));
    if (c.ix == 0) left += c.mass;
  }
  CHECK(left == Approx(0.5).epsilon(1e-12));

  const auto single = empirical_measure(SigmaNetwork({{0.1, 0.2}, {0.4, 0.2}}, {{0, 1}}), 0.5);
  REQUIRE(single.cells.size() == 1);
  CHECK(single.cells[0].mass == Approx(1.0));
  CHECK_THROWS_AS(empirical_measure(SigmaNetwork::point({0, 0}), 0.5), InvalidInput);

  const auto oblique = empirical_measure(build_oblique_comb(7, 0.37), 0.1);
  CHECK(oblique.total() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tiled networks follow their fitted measure") {
  const Domain sq = Domain::unit_square();
  const auto f = optimal_density(ramp2, one, 2, sq);
  const auto fitted = fit_measure_to_grid(f.f, 0.5, sq);
  const auto net = build_tiled_sigma(400, fitted, build_boxed_comb_tile(2), sq);
  for (const auto& row : density_discrepancy(net, fitted_density(fitted), sq, 0.5)) {
    CHECK(row.mass == Approx(row.target).epsilon(0.1));
  }
}

TEST_CASE("scaled objectives") {
  const Domain sq = Domain::unit_square();
  const int n = 4;
  const double v = scaled_objective(build_comb(n), n + 2, 2, one, one, sq, 1.0 / 64);
  CHECK(v == Approx(36 / (pi * pi * 17)).epsilon(0.02));
  CHECK(scaled_objective(build_comb(n), 2 * (n + 2), 2, one, one, sq, 1.0 / 64) == Approx(4 * v).epsilon(1e-12));
  for (int k : {2, 4, 8}) {
    CHECK(scaled_objective_infinity(build_comb(k), k + 2, sq) == Approx((k + 2.0) / (2 * k)).epsilon(1e-5));
  }
  CHECK(scaled_objective_infinity(build_comb(4), 12, sq) ==
        Approx(2 * scaled_objective_infinity(build_comb(4), 6, sq)).epsilon(1e-12));
}

TEST_CASE("maximal-distance limit functional") {
  const Domain sq = Domain::unit_square();
  CHECK(gamma_limit_F_infinity(uniform_density(sq), sq) == Approx(0.5));
  CHECK(gamma_limit_F_infinity(density([](Vec2 p) { return (1 + p.x) / 1.5; }), sq) == Approx(0.75));
  CHECK(std::isinf(gamma_limit_F_infinity(density([](Vec2 p) { return p.y > 0.5 ? 2.0 : 0.0; }), sq)));
}

TEST_CASE("limit functional along p approaches its p = infinity value") {
  const Domain sq = Domain::unit_square();
  const double target = gamma_limit_F_infinity(uniform_density(sq), sq);
  double prev_gap = INFINITY;
  for (double p : {2.0, 4.0, 8.0, 16.0}) {
    const double v = std::pow(gamma_limit_F(uniform_density(sq), one, one, p, sq), 1 / p);
    const double gap = std::abs(v - target);
    CHECK(v < target);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.1);
}

TEST_CASE("comb and grid studies") {
  const auto rows = theta_study(2, {2, 4});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].L == 4);
  CHECK(rows[0].ratio == Approx(16 / (pi * pi * 5)).epsilon(0.03));
  CHECK(rows[1].ratio == Approx(36 / (pi * pi * 17)).epsilon(0.03));
  CHECK(rows[1].ratio < rows[0].ratio);
  CHECK(rows[1].ratio > rows[1].limit);
  CHECK(rows[0].limit == Approx(1 / (pi * pi)));

  const auto inf_rows = theta_study(INFINITY, {2, 4, 8, 16});
  const double expected[] = {1.0, 0.75, 0.625, 0.5625};
  for (std::size_t k = 0; k < inf_rows.size(); ++k) {
    CHECK(inf_rows[k].ratio == Approx(expected[k]).epsilon(1e-6));
    CHECK(inf_rows[k].limit == 0.5);
  }

  const auto grid = theta_study(2, {2}, StudyStructure::Grid);
  CHECK(grid[0].L == 6);
  // Grid n = 2: squares of side 1/2, eigenvalue 8 pi^2.
  CHECK(grid[0].ratio == Approx(36 / (8 * pi * pi)).epsilon(0.03));
}
