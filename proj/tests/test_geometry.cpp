#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ribopt/coefficient.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/domain.hpp"
#include "ribopt/error.hpp"
#include "ribopt/quadrature.hpp"
#include "ribopt/sigma_network.hpp"

using namespace ribopt;
using doctest::Approx;

namespace {

bool on_network(Vec2 p, const SigmaNetwork& net) {
  for (const auto& s : net.segments()) {
    if (point_segment_distance(p, s) < 1e-12) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("segment distances and intersections") {
  const Segment s{{0, 0}, {1, 0}};
  CHECK(point_segment_distance({0.5, 2}, s) == Approx(2));
  CHECK(point_segment_distance({-3, 4}, s) == Approx(5));
  CHECK(segment_segment_distance(s, {{0, 1}, {1, 2}}) == Approx(1));
  CHECK(segments_intersect(s, {{0.5, -1}, {0.5, 1}}));
  CHECK_FALSE(segments_intersect(s, {{0, 1}, {1, 1}}));
  const auto clipped = clip_to_box({{-1, 0.5}, {2, 0.5}}, Box{{0, 0}, {1, 1}});
  REQUIRE(clipped);
  CHECK(clipped->length() == Approx(1));
  CHECK_FALSE(clip_to_box({{-1, 2}, {2, 2}}, Box{{0, 0}, {1, 1}}));
}

TEST_CASE("domain geometry") {
  const Domain sq = Domain::unit_square();
  CHECK(sq.area() == Approx(1));
  CHECK(sq.perimeter() == Approx(4));
  CHECK(sq.boundary_components() == 1);
  CHECK(sq.contains({0.5, 0.5}));
  CHECK(sq.contains({1.0, 0.3}));
  CHECK_FALSE(sq.contains({1.1, 0.3}));

  // Square with a square hole: orientation is normalized whatever the input.
  const Domain holed({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
  CHECK(holed.area() == Approx(15));
  CHECK(holed.boundary_components() == 2);
  CHECK(holed.perimeter() == Approx(20));
  CHECK_FALSE(holed.contains({1.5, 1.5}));
  CHECK(holed.contains({3, 3}));
  CHECK(holed.clip_segment({{0, 1.5}, {4, 1.5}}).size() == 2);
  CHECK_FALSE(holed.contains_segment({{0.5, 1.5}, {3, 1.5}}));

  CHECK_THROWS_AS(Domain({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidInput);  // bow tie
  CHECK_THROWS_AS(Domain({{0, 0}, {1, 0}, {2, 0}}), InvalidInput);          // zero area

  // Regular 64-gon: inradius R cos(pi/64).
  const Domain disc = Domain::regular_polygon({0, 0}, 1.0, 64);
  CHECK(disc.distance_to_boundary({0, 0}) == Approx(std::cos(std::numbers::pi / 64)));
  CHECK(disc.clipped_area(Box{{0, 0}, {2, 2}}) == Approx(disc.area() / 4).epsilon(1e-12));
}

TEST_CASE("network length") {
  CHECK(length(build_comb(4)) == Approx(6.0));
  CHECK(SigmaNetwork::point({0.2, 0.3}).length() == 0.0);
  const Segment s{{0, 0}, {0.3, 0.4}};
  CHECK(SigmaNetwork::from_segments(std::vector<Segment>{s}).length() == Approx(0.5));
}

TEST_CASE("network validation rejects overlaps and bad indices") {
  CHECK_THROWS_AS(SigmaNetwork({{0, 0}, {1, 0}, {0.5, 0}, {2, 0}}, {{0, 1}, {2, 3}}), InvalidInput);
  CHECK_THROWS_AS(SigmaNetwork({{0, 0}, {1, 0}}, {{0, 2}}), InvalidInput);
  CHECK_THROWS_AS(SigmaNetwork({{0, 0}, {0, 0}}, {{0, 1}}), InvalidInput);
  // from_segments merges the same overlap instead.
  const std::vector<Segment> overlapping{{{0, 0}, {1, 0}}, {{0.5, 0}, {2, 0}}};
  CHECK(SigmaNetwork::from_segments(overlapping).length() == Approx(2.0));
}

TEST_CASE("connectivity") {
  for (int n : {1, 2, 5, 16}) CHECK(is_connected(build_comb(n)));
  const std::vector<Segment> parallel{{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}};
  CHECK_FALSE(is_connected(SigmaNetwork::from_segments(parallel)));
  CHECK(count_components(SigmaNetwork::from_segments(parallel)) == 2);
  // Crossing without a shared vertex.
  const SigmaNetwork cross({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {{0, 1}, {2, 3}});
  CHECK(is_connected(cross));
  // T-junction touching an edge interior.
  const SigmaNetwork tee({{0, 0}, {1, 0}, {0.5, 0}, {0.5, 1}}, {{0, 1}, {2, 3}});
  CHECK(is_connected(tee));
  // A point away from the segment is a separate component.
  const SigmaNetwork stray({{0, 0}, {1, 0}, {0.5, 0.5}}, {{0, 1}});
  CHECK_FALSE(is_connected(stray));
  CHECK(is_connected(SigmaNetwork::point({0.5, 0.5})));
}

TEST_CASE("comb configurations") {
  const auto c1 = build_comb(1);
  CHECK(c1.length() == Approx(3.0));
  CHECK(on_network({0, 0.5}, c1));
  CHECK(on_network({1, 0.5}, c1));
  CHECK(on_network({0.5, 0}, c1));

  const auto c2 = build_comb(2);
  CHECK(c2.length() == Approx(4.0));
  for (double x : {0.0, 0.5, 1.0}) CHECK(on_network({x, 0.73}, c2));
  CHECK_FALSE(on_network({0.25, 0.5}, c2));

  const auto c16 = build_comb(16);
  CHECK(c16.length() == Approx(18.0));
  CHECK(lies_in(c16, Domain::unit_square()));
  for (int n = 1; n <= 40; ++n) CHECK(build_comb(n).length() == Approx(n + 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(build_comb(0), InvalidInput);
}

TEST_CASE("grid structures") {
  CHECK(build_grid_structure(1).length() == Approx(4.0));
  const auto g2 = build_grid_structure(2);
  CHECK(g2.length() == Approx(6.0));
  CHECK(on_network({0.5, 0.2}, g2));
  CHECK(on_network({0.2, 0.5}, g2));
  const auto g8 = build_grid_structure(8);
  CHECK(g8.length() == Approx(18.0));
  CHECK(is_connected(g8));
  CHECK(lies_in(g8, Domain::unit_square()));
}

TEST_CASE("oblique combs") {
  const auto vert = build_oblique_comb(4, std::numbers::pi / 2);
  for (double x : {0.25, 0.5, 0.75}) CHECK(on_network({x, 0.4}, vert));
  CHECK(vert.length() == Approx(3.0 + 4.0));
  CHECK(is_connected(vert));

  // Lines x - y = k sqrt(2)/4, |k| <= 2, have chord length sqrt(2)(1 - |k| sqrt(2)/4).
  double chords = 0.0;
  for (int k = -2; k <= 2; ++k) chords += std::sqrt(2.0) * (1.0 - std::abs(k) * std::sqrt(2.0) / 4.0);
  const auto diag = build_oblique_comb(4, std::numbers::pi / 4);
  CHECK(diag.length() == Approx(chords + 4.0));
  CHECK(is_connected(diag));
  CHECK(lies_in(diag, Domain::unit_square()));

  const auto horiz = build_oblique_comb(2, 0.0);
  CHECK(horiz.length() == Approx(5.0));
  CHECK(on_network({0.3, 0.5}, horiz));
}

TEST_CASE("distance to the Dirichlet set") {
  const Domain sq = Domain::unit_square();
  CHECK(distance_to_set({0.5, 0.5}, SigmaNetwork::point({0, 0}), sq) == Approx(0.5));
  CHECK(distance_to_set({0.5, 0.5}, build_comb(2), sq) == Approx(0.0));
  CHECK(distance_to_set({0.375, 0.5}, build_comb(4), sq) == Approx(0.125));
  // Zero exactly on the network or the boundary.
  CHECK(distance_to_set({0.25, 0.9}, build_comb(4), sq) < 1e-12);
  CHECK(distance_to_set({0.6, 1.0}, build_comb(4), sq) < 1e-12);
  CHECK(distance_to_set({0.6, 0.9}, build_comb(4), sq) > 1e-3);
}

TEST_CASE("coefficient fields") {
  const auto aff = CoefficientField::affine(1, 2, -0.5);
  CHECK(aff({0.5, 1.0}) == Approx(1.5));
  const Box unit{{0, 0}, {1, 1}};
  CHECK(aff.min_over(unit) == Approx(0.5));
  CHECK(aff.max_over(unit) == Approx(3.0));

  const auto rq = CoefficientField::radial_quadratic(1, 2, {0.25, 0.25});
  CHECK(rq.min_over(unit) == Approx(1.0));
  CHECK(rq.max_over(unit) == Approx(1 + 2 * (0.75 * 0.75 * 2)));

  const auto sq = CoefficientField::squared_affine(1, 1, 0);
  CHECK(sq({0.5, 0.3}) == Approx(2.25));
  CHECK(sq.min_over(unit) == Approx(1.0));
  CHECK(CoefficientField::squared_affine(-0.5, 1, 0).min_over(unit) == Approx(0.0));

  const auto ex = CoefficientField::exponential(2, -1);
  CHECK(ex.max_over(unit) == Approx(2));
  CHECK(ex.min_over(unit) == Approx(2 * std::exp(-1.0)));

  for (const auto& f : {aff, rq, sq, ex, CoefficientField::constant(3)}) {
    const auto g = parse_coefficient(f.to_string());
    CHECK(g.kind() == f.kind());
    CHECK(g({0.3, 0.7}) == Approx(f({0.3, 0.7})));
  }
  CHECK(parse_coefficient("kind=affine params=1,0.5,0")({1, 0}) == Approx(1.5));
  CHECK_THROWS_AS(parse_coefficient("kind=cubic params=1"), InvalidInput);
  CHECK_THROWS_AS(parse_coefficient("kind=affine params=1,2"), InvalidInput);

  const Domain d = Domain::unit_square();
  CHECK_NOTHROW(require_positive(aff, d, "rho"));
  CHECK_THROWS_AS(require_positive(CoefficientField::affine(1, -2, 0), d, "rho"), InvalidInput);
  CHECK_THROWS_AS(require_positive(CoefficientField::squared_affine(-0.5, 1, 0), d, "rho"), InvalidInput);
}

TEST_CASE("quadrature") {
  const Domain sq = Domain::unit_square();
  CHECK(integrate([](Vec2 p) { return p.x * p.x; }, sq) == Approx(1.0 / 3).epsilon(1e-12));
  // Degree five is exact on a single triangle.
  const double tri = integrate_triangle([](Vec2 p) { return std::pow(p.x, 3) * p.y * p.y; }, {0, 0}, {1, 0},
                                        {0, 1}, 1);
  CHECK(tri == Approx(1.0 / 420).epsilon(1e-12));  // 3! 2! / 7!
  const Domain holed({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
  CHECK(integrate([](Vec2) { return 1.0; }, holed) == Approx(15));
  CHECK(integrate([](Vec2 p) { return p.x; }, holed, Box{{0, 0}, {2, 4}}) ==
        Approx(2.0 * 2.0 * 4.0 / 2 - 1.5).epsilon(1e-12));
  const Domain disc = Domain::regular_polygon({0, 0}, 1, 256);
  CHECK(integrate([](Vec2 p) { return p.x * p.x + p.y * p.y; }, disc) ==
        Approx(std::numbers::pi / 2).epsilon(1e-3));
}

TEST_CASE("fitted measures") {
  const Domain sq = Domain::unit_square();
  const auto uniform = fit_measure_to_grid([](Vec2) { return 1.0; }, 0.5, sq);
  REQUIRE(uniform.cells.size() == 4);
  for (const auto& c : uniform.cells) CHECK(c.alpha == Approx(1.0));

  const auto ramp = fit_measure_to_grid([](Vec2 p) { return 2 * p.x; }, 0.5, sq);
  REQUIRE(ramp.cells.size() == 4);
  for (const auto& c : ramp.cells) CHECK(c.alpha == Approx(c.ix == 0 ? 0.5 : 1.5));
  CHECK(ramp.total_mass() == Approx(1.0).epsilon(1e-12));

  const auto one = fit_measure_to_grid([](Vec2 p) { return 2 * p.y; }, 1.0, sq);
  REQUIRE(one.cells.size() == 1);
  CHECK(one.cells[0].alpha == Approx(1.0));

  // Conditions bracket alpha between cell averages, and mass is exactly one.
  const Domain hex = Domain::regular_polygon({0.5, 0.5}, 0.5, 6);
  const auto f = [&](Vec2 p) { return (1 + p.x) / (1.5 * hex.area()); };
  const double norm = integrate(f, hex);
  const auto fitted = fit_measure_to_grid([&](Vec2 p) { return f(p) / norm; }, 0.125, hex);
  CHECK(fitted.total_mass() == Approx(1.0).epsilon(1e-12));
  for (const auto& c : fitted.cells) {
    CHECK(c.area > 0);
    const double avg = integrate([&](Vec2 p) { return f(p) / norm; }, hex, c.box) / c.area;
    CHECK(c.alpha == Approx(avg).epsilon(1e-6));
  }

  CHECK_THROWS_AS(fit_measure_to_grid([](Vec2) { return 2.0; }, 0.5, sq), InvalidInput);
}

TEST_CASE("tiled construction") {
  const Domain sq = Domain::unit_square();
  const auto tile = build_boxed_comb_tile(2);
  CHECK(effective_tile_length(tile) == Approx(3.0));
  const auto fitted = fit_measure_to_grid([](Vec2) { return 1.0; }, 1.0, sq);
  const auto counts = tile_counts(100, fitted, tile);
  REQUIRE(counts.size() == 1);
  CHECK(counts[0] == 30);  // floor((100 - 10) / 3)
  const auto net = build_tiled_sigma(100, fitted, tile, sq);
  // 30 x 30 tiles of side 1/30: 61 vertical and 31 horizontal unit lines.
  CHECK(net.length() == Approx(92.0));
  CHECK(net.length() <= 100);
  CHECK(is_connected(net));
  CHECK(lies_in(net, sq));

  CHECK_THROWS_AS(build_tiled_sigma(5, fitted, tile, sq), InfeasibleError);

  // alpha_left = 3 alpha_right on [0,2] x [0,1]: alpha = 3/4 and 1/4.
  const Domain rect = Domain::rectangle({0, 0}, {2, 1});
  const auto two = fit_measure_to_grid([](Vec2 p) { return p.x < 1 ? 0.75 : 0.25; }, 1.0, rect);
  const auto k = tile_counts(400, two, tile);
  REQUIRE(k.size() == 2);
  const int left = two.cells[0].ix == 0 ? k[0] : k[1];
  const int right = two.cells[0].ix == 0 ? k[1] : k[0];
  CHECK(left == 95);   // floor(0.75 * 380 / 3)
  CHECK(right == 31);  // floor(0.25 * 380 / 3)
  const auto split = build_tiled_sigma(400, two, tile, rect);
  CHECK(is_connected(split));
  CHECK(split.length() <= 400);
}

TEST_CASE("random networks stay admissible under merging") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Segment> segs;
    Vec2 at{u(rng), u(rng)};
    for (int k = 0; k < 6; ++k) {
      const Vec2 next{u(rng), u(rng)};
      segs.push_back({at, next});
      at = next;
    }
    const auto net = SigmaNetwork::from_segments(segs);
    CHECK(is_connected(net));
    CHECK(lies_in(net, Domain::unit_square()));
    double total = 0;
    for (const auto& s : segs) total += s.length();
    CHECK(net.length() <= total + 1e-9);
  }
}
