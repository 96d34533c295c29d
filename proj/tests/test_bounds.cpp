#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ribopt/bounds.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/error.hpp"
#include "ribopt/spectral.hpp"

using namespace ribopt;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("one-dimensional constants") {
  CHECK(Lambda_p(2) == Approx(pi * pi).epsilon(1e-14));
  CHECK(Lambda_p(1) == 2.0);
  CHECK(Lambda_p(3) == Approx(2 * std::pow(2 * pi / (3 * std::sin(pi / 3)), 3)).epsilon(1e-14));
  CHECK(Lambda_p(3) == Approx(28.28876).epsilon(1e-6));
  CHECK(Lambda_p(1.0 + 1e-9) == Approx(2.0).epsilon(1e-6));  // continuous at p = 1
  CHECK_THROWS_AS(Lambda_p(0.5), InvalidInput);
  for (double p : {1.5, 2.0, 3.0, 4.0}) CHECK(lambda_1d(p, 2000) == Approx(Lambda_p(p)).epsilon(0.01));
}

TEST_CASE("tbar") {
  const double t = tbar(4, 1, 1);
  CHECK(t == Approx(1 / (4 + std::sqrt(16 + 2 * pi))).epsilon(1e-14));
  CHECK(t == Approx(0.11467).epsilon(1e-4));
  CHECK(std::abs(2 * 4 * t + 2 * pi * t * t - 1) < 1e-12);
  // Long networks: tbar ~ area / (2 sigma_len).
  double prev_gap = INFINITY;
  for (double len : {10.0, 100.0, 1000.0, 1e5}) {
    const double gap = std::abs(tbar(len, 1, 1) / (1 / (2 * len)) - 1);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-4);
  CHECK(tbar(4, 2, 1) > tbar(4, 1, 1));
  CHECK(tbar(4, 1, 2) < tbar(4, 1, 1));
  CHECK_THROWS_AS(tbar(4, 0, 1), InvalidInput);
}

TEST_CASE("sublevel area majorant") {
  const double t = tbar(4, 1, 1);
  CHECK(H_of_t(0, 4, 1, 1) == 0.0);
  CHECK(H_of_t(t, 4, 1, 1) == Approx(1.0).epsilon(1e-12));
  CHECK(H_of_t(0.05, 4, 1, 1) == Approx(2 * 4 * 0.05 + 2 * pi * 0.0025));
  CHECK(H_of_t(0.05, 4, 1, 1) == Approx(0.4157).epsilon(1e-4));
  CHECK(H_of_t(3 * t, 4, 1, 1) == 1.0);
  double prev = 0;
  for (double s = 0; s < 0.3; s += 0.01) {
    CHECK(H_of_t(s, 4, 1, 1) >= prev);
    prev = H_of_t(s, 4, 1, 1);
  }
}

TEST_CASE("boundary-inclusive length counts shared pieces once") {
  const Domain sq = Domain::unit_square();
  for (int n : {1, 2, 8}) {
    // Verticals at x = 0 and x = 1 and the base lie on the boundary.
    CHECK(sigma_boundary_length(sq, build_comb(n)) == Approx(n + 3.0));
  }
  CHECK(sigma_boundary_length(sq, SigmaNetwork::point({0.5, 0.5})) == Approx(4.0));
  CHECK(sigma_boundary_length(sq, build_grid_structure(3)) == Approx(8.0 - 4.0 + 4.0));
  const auto ctx = LengthBoundContext::make(sq, build_comb(4));
  CHECK(ctx.kappa == 1);
  CHECK(ctx.area == Approx(1.0));
  CHECK(ctx.tbar == Approx(tbar(7, 1, 1)));
}

TEST_CASE("eigenvalue upper bound") {
  const Domain sq = Domain::unit_square();
  const double t = 1 / (4 + std::sqrt(16 + 2 * pi));
  const double expected = pi * pi / std::pow(2 * t, 2) * (1 + 2 * pi * t / 4);
  CHECK(upper_bound_lambda(sq, SigmaNetwork::point({0.5, 0.5}), 2) == Approx(expected).epsilon(1e-12));
  CHECK(expected == Approx(221.5).epsilon(1e-3));
  for (int n : {2, 4, 8, 16}) {
    const double bound = upper_bound_lambda(sq, build_comb(n), 2);
    CHECK(bound > pi * pi * (n * n + 1));
    CHECK(bound > 0);
  }
  CHECK(upper_bound_lambda(sq, SigmaNetwork::point({0, 0}), 1.5) > 0);
  // Holes raise kappa.
  const Domain holed({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
  CHECK(LengthBoundContext::make(holed, SigmaNetwork::point({3, 3})).kappa == 2);
}

TEST_CASE("rectangle eigenvalue and Cheeger constant") {
  CHECK(lambda2_rectangle(1) == Approx(2 * pi * pi));
  CHECK(lambda2_rectangle(4) == Approx(17 * pi * pi));
  CHECK(lambda2_rectangle(4) == Approx(167.78).epsilon(1e-4));
  CHECK(lambda2_rectangle(10) == Approx(101 * pi * pi));
  CHECK(cheeger_rectangle(1) == Approx(2 + std::sqrt(pi)).epsilon(1e-14));
  CHECK(cheeger_rectangle(100) / 200 == Approx(1.0).epsilon(0.02));
  for (int n = 1; n <= 50; ++n) {
    CHECK(std::abs(cheeger_rectangle(n) - cheeger_rectangle_direct(n)) <= 1e-10 * cheeger_rectangle(n));
  }
}
