#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ribopt/coefficient.hpp"
#include "ribopt/domain.hpp"
#include "ribopt/sigma_network.hpp"
#include "ribopt/spectral.hpp"

namespace ribopt {

enum class Strategy { CombFamily, AdaptedTiling, Anneal, Portfolio };
enum class ObjectiveKind { Eigenvalue, MaxDistance };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

struct OptimizeOptions {
  double h_search = 1.0 / 48;   // spacing used while searching
  double h_final = 1.0 / 96;    // spacing for the reported value
  double tile_cell = 0.5;       // lattice side for the adapted tiling
  int max_tile_columns = 8;     // boxed comb tiles with 1..max columns
  int sampled_orientations = 3; // extra random chord directions
  double maxdist_tolerance = 1e-6;
  double min_fill = 0.98;       // networks shorter than min_fill * L get hairs
  int threads = 0;              // 0: hardware concurrency
  SolverOptions solver;
};

struct HistoryEntry {
  long evaluation = 0;
  double value = 0.0;  // objective of the candidate
  double best = 0.0;   // best so far
};

struct OptimizationReport {
  SigmaNetwork best = SigmaNetwork::point({0.0, 0.0});
  double value = 0.0;          // eigenvalue at h_final, or maximal distance
  ObjectiveKind kind = ObjectiveKind::Eigenvalue;
  double p = 2.0;
  double L = 0.0;
  std::uint64_t seed = 0;
  long evaluations = 0;
  bool budget_exhausted = false;
  std::string winner;          // family that produced the best network
  std::vector<HistoryEntry> history;
};

OptimizationReport maximize_lambda(const Domain& domain, const CoefficientField& rho,
                                   const CoefficientField& sigma_coef, double p, double L,
                                   Strategy strategy, std::uint64_t seed, long eval_budget,
                                   const OptimizeOptions& options = {});

OptimizationReport minimize_maxdist(const Domain& domain, double L, Strategy strategy,
                                    std::uint64_t seed, long eval_budget,
                                    const OptimizeOptions& options = {});

struct Certificate {
  double achieved = 0.0;
  double bound = 0.0;  // eigenvalue upper bound, or the lower bound tbar for the distance
  double gap = 0.0;    // bound / achieved for eigenvalues, achieved / bound for distances
};

Certificate certify(const OptimizationReport& report, const Domain& domain);

// Building blocks, exposed for the CLI and tests.

// Connects disjoint pieces into one network with shortest admissible
// connectors (minimum spanning tree over pieces); empty if impossible.
std::optional<SigmaNetwork> connect_pieces(const Domain& domain, const std::vector<Segment>& pieces);

// Chords on the lines x.nu = c, nu = (sin angle, -cos angle), for each c.
std::vector<Segment> chords_at(const Domain& domain, double angle, const std::vector<double>& offsets);

// Adds axis-aligned hairs from the network toward the point farthest from
// it until the length reaches min_fill * L or the budget is spent.
SigmaNetwork fill_budget(const SigmaNetwork& sigma, const Domain& domain, double L,
                         double min_fill = 0.98);

}  // namespace ribopt
