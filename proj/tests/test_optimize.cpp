#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ribopt/bounds.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/error.hpp"
#include "ribopt/maxdist.hpp"
#include "ribopt/optimize.hpp"

using namespace ribopt;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
const CoefficientField one = CoefficientField::constant(1.0);

OptimizeOptions fast_options() {
  OptimizeOptions o;
  o.h_search = 1.0 / 32;
  o.h_final = 1.0 / 32;
  o.max_tile_columns = 3;
  o.sampled_orientations = 1;
  return o;
}

void check_report_invariants(const OptimizationReport& r, const Domain& d) {
  CHECK(r.best.length() <= r.L * (1 + 1e-12));
  CHECK(r.best.length() >= 0.98 * r.L);
  CHECK(is_connected(r.best));
  CHECK(lies_in(r.best, d));
  REQUIRE_FALSE(r.history.empty());
  for (std::size_t k = 1; k < r.history.size(); ++k) {
    CHECK(r.history[k].evaluation == r.history[k - 1].evaluation + 1);
    if (r.kind == ObjectiveKind::Eigenvalue) {
      CHECK(r.history[k].best >= r.history[k - 1].best);
    } else {
      CHECK(r.history[k].best <= r.history[k - 1].best);
    }
  }
}

bool same_network(const SigmaNetwork& a, const SigmaNetwork& b) {
  return a.vertices() == b.vertices() && a.edges() == b.edges();
}

}  // namespace

TEST_CASE("strategy names") {
  for (auto s : {Strategy::CombFamily, Strategy::AdaptedTiling, Strategy::Anneal, Strategy::Portfolio}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_strategy("greedy"), InvalidInput);
}

TEST_CASE("chords and connectors") {
  const Domain sq = Domain::unit_square();
  const auto chords = chords_at(sq, pi / 2, {0.25, 0.5, 0.75});
  REQUIRE(chords.size() == 3);
  for (const auto& c : chords) CHECK(c.length() == Approx(1.0));
  const auto net = connect_pieces(sq, chords);
  REQUIRE(net);
  CHECK(is_connected(*net));
  // Two connectors of length 1/4.
  CHECK(net->length() == Approx(3.5));

  // A hole between two chords forces a detour or makes linking impossible.
  const Domain holed({{0, 0}, {3, 0}, {3, 1}, {0, 1}}, {{{1.2, 0.1}, {1.8, 0.1}, {1.8, 0.9}, {1.2, 0.9}}});
  const std::vector<Segment> sides{{{1, 0.2}, {1, 0.8}}, {{2, 0.2}, {2, 0.8}}};
  CHECK_FALSE(connect_pieces(holed, sides));
  CHECK_FALSE(connect_pieces(sq, {}));
}

TEST_CASE("budget filling") {
  const Domain sq = Domain::unit_square();
  const auto start = build_comb(2);
  const auto filled = fill_budget(start, sq, 6.0);
  CHECK(filled.length() >= 0.98 * 6.0);
  CHECK(filled.length() <= 6.0);
  CHECK(is_connected(filled));
  CHECK(lies_in(filled, sq));
  CHECK(max_distance(sq, filled, 1e-6).T < max_distance(sq, start, 1e-6).T);
  CHECK(same_network(fill_budget(build_comb(4), sq, 6.0), build_comb(4)));
  const auto from_point = fill_budget(SigmaNetwork::point({0.5, 0.5}), sq, 0.3);
  CHECK(from_point.length() == Approx(0.3).epsilon(0.02));
}

TEST_CASE("maximal distance optimization on the square") {
  const Domain sq = Domain::unit_square();
  const auto o = fast_options();
  for (int n : {4, 8}) {
    const double L = n + 2;
    const auto r = minimize_maxdist(sq, L, Strategy::CombFamily, 1, 40, o);
    check_report_invariants(r, sq);
    CHECK(r.value <= 1.0 / (2 * n) * 1.05);
    CHECK(L * r.value >= theta_infinity_certificate(L));
    const auto cert = certify(r, sq);
    CHECK(cert.achieved >= cert.bound);
    CHECK(cert.gap >= 1.0);
  }
  const auto big = minimize_maxdist(sq, 120, Strategy::CombFamily, 1, 30, o);
  CHECK(120 * big.value >= 0.5);
  CHECK(120 * big.value <= 0.65);
}

TEST_CASE("annealing keeps its starting point and is reproducible") {
  const Domain sq = Domain::unit_square();
  auto o = fast_options();
  const auto comb = minimize_maxdist(sq, 5, Strategy::CombFamily, 9, 60, o);
  const auto annealed = minimize_maxdist(sq, 5, Strategy::Anneal, 9, 60, o);
  check_report_invariants(annealed, sq);
  CHECK(annealed.value <= comb.value + 1e-12);
  CHECK(annealed.budget_exhausted);

  o.threads = 1;
  const auto serial = minimize_maxdist(sq, 5, Strategy::Portfolio, 4, 40, o);
  o.threads = 4;
  const auto parallel = minimize_maxdist(sq, 5, Strategy::Portfolio, 4, 40, o);
  const auto again = minimize_maxdist(sq, 5, Strategy::Portfolio, 4, 40, o);
  CHECK(serial.value == parallel.value);
  CHECK(parallel.value == again.value);
  CHECK(same_network(serial.best, parallel.best));
  REQUIRE(serial.history.size() == parallel.history.size());
  for (std::size_t k = 0; k < serial.history.size(); ++k) CHECK(serial.history[k].value == parallel.history[k].value);
}

TEST_CASE("eigenvalue optimization beats the paper comb at equal length") {
  const Domain sq = Domain::unit_square();
  const auto o = fast_options();
  const auto r = maximize_lambda(sq, one, one, 2, 6, Strategy::CombFamily, 1, 30, o);
  check_report_invariants(r, sq);
  const double comb = lambda2(sq, build_comb(4), one, one, o.h_final).lambda;
  CHECK(r.value >= comb * (1 - 1e-9));
  const auto cert = certify(r, sq);
  CHECK(cert.bound == Approx(upper_bound_lambda(sq, r.best, 2)));
  CHECK(cert.gap > 1.0);

  const auto annealed = maximize_lambda(sq, one, one, 2, 6, Strategy::Anneal, 1, 45, o);
  check_report_invariants(annealed, sq);
  CHECK(annealed.value >= r.value * (1 - 1e-12));
}

TEST_CASE("tiny budgets barely move the eigenvalue") {
  const Domain sq = Domain::unit_square();
  const auto o = fast_options();
  const auto r = maximize_lambda(sq, one, one, 2, 0.01, Strategy::CombFamily, 1, 10, o);
  check_report_invariants(r, sq);
  const double bare = lambda2(sq, SigmaNetwork::point({0, 0}), one, one, o.h_final).lambda;
  CHECK(r.value >= bare * (1 - 1e-9));
  // On a grid a single interior point already removes a node, so compare
  // with the point network at the same place.
  const Box b = r.best.bounding_box();
  const Vec2 mid = (b.lo + b.hi) * 0.5;
  const double point = lambda2(sq, SigmaNetwork::point(mid), one, one, o.h_final).lambda;
  CHECK(r.value == Approx(point).epsilon(0.01));
}

TEST_CASE("tiling falls back to combs when the budget is too small") {
  const Domain sq = Domain::unit_square();
  auto o = fast_options();
  o.tile_cell = 0.25;
  const auto r = minimize_maxdist(sq, 3, Strategy::AdaptedTiling, 1, 10, o);
  check_report_invariants(r, sq);
  CHECK(r.winner.find("density-chords") != std::string::npos);
}

TEST_CASE("invalid requests") {
  const Domain sq = Domain::unit_square();
  CHECK_THROWS_AS(minimize_maxdist(sq, 0, Strategy::CombFamily, 1, 10), InvalidInput);
  CHECK_THROWS_AS(minimize_maxdist(sq, 4, Strategy::CombFamily, 1, 0), InvalidInput);
  CHECK_THROWS_AS(maximize_lambda(sq, one, one, 1.0, 4, Strategy::CombFamily, 1, 10), InvalidInput);
  CHECK_THROWS_AS(maximize_lambda(sq, CoefficientField::affine(-1, 0, 0), one, 2, 4, Strategy::CombFamily, 1, 10),
                  InvalidInput);
}
