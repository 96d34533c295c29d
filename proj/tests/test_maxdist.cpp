#include <cmath>
#include <random>

#include "doctest.h"
#include "ribopt/bounds.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/maxdist.hpp"

using namespace ribopt;
using doctest::Approx;

namespace {

SigmaNetwork random_network(std::mt19937_64& rng, int pieces) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Segment> segs;
  std::vector<Vec2> pts{{u(rng), u(rng)}};
  for (int k = 0; k < pieces; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    const Vec2 from = pts[pick(rng)];
    const Vec2 to{u(rng), u(rng)};
    segs.push_back({from, to});
    pts.push_back(to);
  }
  return SigmaNetwork::from_segments(segs);
}

double brute_force(const Domain& d, const SigmaNetwork& s, int n) {
  double best = 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) best = std::max(best, distance_to_set({double(i) / n, double(j) / n}, s, d));
  }
  return best;
}

}  // namespace

TEST_CASE("square inradius") {
  const auto r = max_distance(Domain::unit_square(), SigmaNetwork::point({0, 0.5}), 1e-7);
  CHECK(r.T == Approx(0.5).epsilon(1e-6));
  CHECK(r.argmax.x == Approx(0.5).epsilon(1e-3));
  CHECK(r.argmax.y == Approx(0.5).epsilon(1e-3));
  CHECK(r.upper_bound >= r.T);
  CHECK(r.upper_bound - r.T <= 1e-7);
}

TEST_CASE("combs") {
  for (int n : {2, 4, 8, 16}) {
    const auto r = max_distance(Domain::unit_square(), build_comb(n), 1e-6);
    CHECK(r.T == Approx(1.0 / (2 * n)).epsilon(1e-5));
    CHECK(distance_to_set(r.argmax, build_comb(n), Domain::unit_square()) == r.T);
  }
}

TEST_CASE("diagonal matches dense sampling") {
  const Domain sq = Domain::unit_square();
  const SigmaNetwork diag({{0, 0}, {1, 1}}, {{0, 1}});
  const auto r = max_distance(sq, diag, 1e-6);
  const double dense = brute_force(sq, diag, 1000);
  CHECK(r.T >= dense - 1e-12);
  CHECK(r.T <= dense + 1e-3);
  // Incircle of the half-square triangle: (2 - sqrt 2) / 2 * ... radius = 1 / (2 + sqrt 2).
  CHECK(r.T == Approx(1 / (2 + std::sqrt(2.0))).epsilon(1e-5));
}

TEST_CASE("non-square domains") {
  const Domain disc = Domain::regular_polygon({0, 0}, 1.0, 64);
  CHECK(max_distance(disc, SigmaNetwork::point({1, 0}), 1e-7).T == Approx(std::cos(M_PI / 64)).epsilon(1e-6));
  const Domain holed({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {3, 1}, {3, 3}, {1, 3}}});
  // Corner rooms: the diagonal point equidistant from two sides and the hole's corner.
  CHECK(max_distance(holed, SigmaNetwork::point({0, 0}), 1e-7).T == Approx(2 - std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("certificate for L times the maximal distance") {
  CHECK(theta_infinity_certificate(18) == Approx(18 / (22 + std::sqrt(484 + 2 * M_PI))).epsilon(1e-14));
  CHECK(theta_infinity_certificate(1) == Approx(1 / (5 + std::sqrt(25 + 2 * M_PI))).epsilon(1e-14));
  CHECK(theta_infinity_certificate(1e8) == Approx(0.5).epsilon(1e-6));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto net = random_network(rng, 1 + trial % 7);
    const double L = net.length();
    const auto r = max_distance(Domain::unit_square(), net, 1e-6);
    CHECK(L * r.T >= theta_infinity_certificate(L));
    CHECK(r.T >= LengthBoundContext::make(Domain::unit_square(), net).tbar);
  }
}

TEST_CASE("adding segments never increases the maximum") {
  std::mt19937_64 rng(5);
  const Domain sq = Domain::unit_square();
  for (int trial = 0; trial < 10; ++trial) {
    auto net = random_network(rng, 2);
    double prev = max_distance(sq, net, 1e-7).T;
    for (int k = 0; k < 3; ++k) {
      auto segs = net.segments();
      std::uniform_real_distribution<double> u(0, 1);
      segs.push_back({net.vertices().front(), {u(rng), u(rng)}});
      net = SigmaNetwork::from_segments(segs);
      const double now = max_distance(sq, net, 1e-7).T;
      CHECK(now <= prev + 1e-7);
      prev = now;
    }
  }
}

TEST_CASE("distance field on grid nodes") {
  const Domain sq = Domain::unit_square();
  const auto comb = build_comb(2);
  const auto grid = discretize(sq, comb, 1.0 / 16);
  const auto field = distance_field(grid, sq, comb);
  REQUIRE(field.size() == grid.classes.size());
  double top = 0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    if (grid.classes[k] == NodeClass::Exterior) CHECK(field[k] == 0.0);
    top = std::max(top, field[k]);
  }
  CHECK(top == Approx(0.25));
}
