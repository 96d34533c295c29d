#include "ribopt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "ribopt/asymptotics.hpp"
#include "ribopt/bounds.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/error.hpp"
#include "ribopt/maxdist.hpp"

namespace ribopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent generator for a named sub-stream of the run seed.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index)));
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Applies f to every item; results are in input order whatever the
// number of threads.
template <class T, class R>
std::vector<R> parallel_map(const std::vector<T>& items, const std::function<R(const T&)>& f, int threads) {
  std::vector<std::optional<R>> slots(items.size());
  const int workers = std::min<int>(thread_count(threads), static_cast<int>(items.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) slots[i] = f(items[i]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < items.size(); i += workers) slots[i] = f(items[i]);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& r : slots) out.push_back(std::move(*r));
  return out;
}

double diameter(const Domain& domain) {
  const Box b = domain.bounding_box();
  return std::hypot(b.width(), b.height());
}

bool admissible(const SigmaNetwork& net, const Domain& domain, double L) {
  return net.length() <= L * (1.0 + 1e-12) && lies_in(net, domain) && is_connected(net);
}

// Objective bookkeeping shared by all strategies: budget, history and the
// few best networks seen so far.
class Search {
 public:
  struct Candidate {
    SigmaNetwork net;
    double value;
    std::string family;
  };

  Search(ObjectiveKind kind, std::function<double(const SigmaNetwork&, double)> raw, double h_search,
         long budget, int threads)
      : kind_(kind), raw_(std::move(raw)), h_search_(h_search), budget_(budget), threads_(threads) {}

  bool better(double a, double b) const {
    return kind_ == ObjectiveKind::Eigenvalue ? a > b : a < b;
  }
  double worst() const { return kind_ == ObjectiveKind::Eigenvalue ? -kInf : kInf; }
  long remaining() const { return budget_ - used_; }
  bool exhausted() const { return used_ >= budget_; }
  bool hit_budget() const { return hit_budget_; }
  long used() const { return used_; }

  double value_at(const SigmaNetwork& net, double h) const {
    try {
      return raw_(net, h);
    } catch (const Error&) {
      return worst();
    }
  }

  // Evaluates as many candidates as the budget allows, in order.
  std::vector<double> evaluate(const std::vector<SigmaNetwork>& nets, const std::string& family) {
    std::vector<SigmaNetwork> take;
    for (const auto& n : nets) {
      if (used_ + static_cast<long>(take.size()) >= budget_) {
        hit_budget_ = true;
        break;
      }
      take.push_back(n);
    }
    auto values = parallel_map<SigmaNetwork, double>(
        take, [&](const SigmaNetwork& n) { return value_at(n, h_search_); }, threads_);
    for (std::size_t i = 0; i < take.size(); ++i) record(take[i], values[i], family);
    values.resize(nets.size(), worst());
    return values;
  }

  double evaluate_one(const SigmaNetwork& net, const std::string& family) {
    return evaluate({net}, family).front();
  }

  const std::vector<Candidate>& leaders() const { return leaders_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  std::vector<HistoryEntry>& history() { return history_; }

 private:
  void record(const SigmaNetwork& net, double value, const std::string& family) {
    ++used_;
    const double best = leaders_.empty() ? worst() : leaders_.front().value;
    const double new_best = better(value, best) ? value : best;
    history_.push_back({used_, value, new_best});
    if (value == worst()) return;
    leaders_.push_back({net, value, family});
    std::stable_sort(leaders_.begin(), leaders_.end(),
                     [&](const Candidate& a, const Candidate& b) { return better(a.value, b.value); });
    if (leaders_.size() > 3) leaders_.erase(leaders_.begin() + 3, leaders_.end());
  }

  ObjectiveKind kind_;
  std::function<double(const SigmaNetwork&, double)> raw_;
  double h_search_;
  long budget_;
  int threads_;
  long used_ = 0;
  bool hit_budget_ = false;
  std::vector<Candidate> leaders_;
  std::vector<HistoryEntry> history_;
};

struct Problem {
  const Domain& domain;
  double L;
  std::uint64_t seed;
  const OptimizeOptions& options;
  // Present for eigenvalue problems.
  const CoefficientField* rho = nullptr;
  const CoefficientField* sigma_coef = nullptr;
  double p = 2.0;
};

std::vector<SigmaNetwork> filled(const Problem& pb, const std::vector<SigmaNetwork>& nets) {
  return parallel_map<SigmaNetwork, SigmaNetwork>(
      nets, [&](const SigmaNetwork& n) { return fill_budget(n, pb.domain, pb.L, pb.options.min_fill); },
      pb.options.threads);
}

std::pair<double, double> extent_along(const Domain& domain, Vec2 nu) {
  double lo = kInf, hi = -kInf;
  for (const Vec2& v : domain.outer()) {
    lo = std::min(lo, dot(v, nu));
    hi = std::max(hi, dot(v, nu));
  }
  return {lo, hi};
}

Vec2 normal_of(double angle) { return {std::sin(angle), -std::cos(angle)}; }

// Network of chords on the given lines, joined by connectors; hairs are
// added later to fill the budget.
std::optional<SigmaNetwork> chord_network(const Domain& domain, double angle,
                                          const std::vector<double>& offsets) {
  auto chords = chords_at(domain, angle, offsets);
  if (chords.empty()) return std::nullopt;
  return connect_pieces(domain, chords);
}

// Lines dividing the domain's width along nu into n equal strips
// (shifted by half a strip when `half` is set).
std::vector<double> strip_offsets(const Domain& domain, double angle, int n, bool half) {
  const auto [lo, hi] = extent_along(domain, normal_of(angle));
  std::vector<double> c;
  const double w = (hi - lo) / n;
  if (half) {
    for (int k = 0; k < n; ++k) c.push_back(lo + (k + 0.5) * w);
  } else {
    for (int k = 1; k < n; ++k) c.push_back(lo + k * w);
  }
  return c;
}

// Largest n whose network built by make(n) fits in the budget.
std::optional<SigmaNetwork> largest_fitting(const std::function<std::optional<SigmaNetwork>(int)>& make,
                                            double L, int n_min) {
  auto fits = [&](int n) -> std::optional<SigmaNetwork> {
    auto net = make(n);
    if (net && net->length() <= L) return net;
    return std::nullopt;
  };
  std::optional<SigmaNetwork> good = fits(n_min);
  if (!good) return std::nullopt;
  int lo = n_min;
  int hi = n_min;
  while (hi < 8192) {
    hi = 2 * hi;
    auto net = fits(hi);
    if (!net) break;
    lo = hi;
    good = std::move(net);
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    auto net = fits(mid);
    if (net) {
      lo = mid;
      good = std::move(net);
    } else {
      hi = mid;
    }
  }
  return good;
}

// A single segment of length at most L through the deepest point.
SigmaNetwork short_segment(const Domain& domain, double angle, double L) {
  const Vec2 centre = max_distance(domain, SigmaNetwork::point(domain.outer().front()), 1e-6).argmax;
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  double half = 0.5 * L;
  for (int i = 0; i < 60; ++i) {
    const Segment s{centre - dir * half, centre + dir * half};
    if (domain.contains_segment(s)) return SigmaNetwork::from_segments(std::vector<Segment>{s});
    half *= 0.8;
  }
  return SigmaNetwork::point(centre);
}

bool is_unit_square(const Domain& domain) {
  const Box b = domain.bounding_box();
  return domain.holes().empty() && domain.outer().size() == 4 && std::abs(domain.area() - 1.0) < 1e-12 &&
         b.lo == Vec2{0.0, 0.0} && b.hi == Vec2{1.0, 1.0};
}

std::vector<double> orientations(const Problem& pb) {
  std::vector<double> angles{0.0, std::numbers::pi / 4, std::numbers::pi / 2};
  auto rng = substream(pb.seed, 1);
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
  for (int i = 0; i < pb.options.sampled_orientations; ++i) angles.push_back(u(rng));
  return angles;
}

void run_comb_family(const Problem& pb, Search& search) {
  std::vector<SigmaNetwork> cands;
  for (double angle : orientations(pb)) {
    for (bool half : {false, true}) {
      auto make = [&](int n) { return chord_network(pb.domain, angle, strip_offsets(pb.domain, angle, n, half)); };
      auto net = largest_fitting(make, pb.L, half ? 1 : 2);
      if (net) cands.push_back(*net);
    }
  }
  if (is_unit_square(pb.domain) && pb.L >= 3.0) {
    const int n = static_cast<int>(std::floor(pb.L - 2.0 + 1e-12));
    cands.push_back(build_comb(n));
  }
  if (cands.empty()) {
    for (double angle : {0.0, std::numbers::pi / 2}) {
      cands.push_back(short_segment(pb.domain, angle, pb.L));
    }
  }
  search.evaluate(filled(pb, cands), "comb-family");
}

// Marginal of f along x (or y), tabulated at m points, and the positions
// where its cumulative integral reaches k/n.
std::vector<double> quantile_offsets(const DensityField& f, const Domain& domain, bool along_x, int n) {
  const Box b = domain.bounding_box();
  const int m = 400;
  const double a0 = along_x ? b.lo.x : b.lo.y;
  const double a1 = along_x ? b.hi.x : b.hi.y;
  const double c0 = along_x ? b.lo.y : b.lo.x;
  const double c1 = along_x ? b.hi.y : b.hi.x;
  std::vector<double> cdf(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    const double t = a0 + (i + 0.5) * (a1 - a0) / m;
    double acc = 0.0;
    const int q = 64;
    for (int j = 0; j < q; ++j) {
      const double s = c0 + (j + 0.5) * (c1 - c0) / q;
      const Vec2 pt = along_x ? Vec2{t, s} : Vec2{s, t};
      if (domain.contains(pt)) acc += f(pt);
    }
    cdf[i + 1] = cdf[i] + acc;
  }
  std::vector<double> out;
  for (int k = 1; k < n; ++k) {
    const double target = cdf[m] * k / n;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    const int i = std::clamp(static_cast<int>(it - cdf.begin()), 1, m);
    const double frac = (target - cdf[i - 1]) / std::max(1e-300, cdf[i] - cdf[i - 1]);
    out.push_back(a0 + (i - 1 + frac) * (a1 - a0) / m);
  }
  return out;
}

// Returns false when no tiling was feasible.
bool run_adapted_tiling(const Problem& pb, Search& search) {
  const DensityField f = pb.rho ? optimal_density(*pb.rho, *pb.sigma_coef, pb.p, pb.domain)
                                : uniform_density(pb.domain);
  std::vector<SigmaNetwork> tiled;
  try {
    const FittedMeasure fitted = fit_measure_to_grid(f.f, pb.options.tile_cell, pb.domain);
    for (int m = 1; m <= pb.options.max_tile_columns; ++m) {
      try {
        auto net = build_tiled_sigma(pb.L, fitted, build_boxed_comb_tile(m), pb.domain);
        tiled.push_back(net);
      } catch (const InfeasibleError&) {
      }
    }
  } catch (const InvalidInput&) {
  }
  // Parallel chords whose local spacing follows the inverse density.
  std::vector<SigmaNetwork> chords;
  for (bool along_x : {true, false}) {
    const double angle = along_x ? std::numbers::pi / 2 : 0.0;
    auto make = [&](int n) -> std::optional<SigmaNetwork> {
      auto pos = quantile_offsets(f, pb.domain, along_x, n);
      if (!along_x) {
        for (double& c : pos) c = -c;  // nu = (0, -1) for horizontal lines
      }
      return chord_network(pb.domain, angle, pos);
    };
    auto net = largest_fitting(make, pb.L, 2);
    if (net) chords.push_back(*net);
  }
  if (tiled.empty() && chords.empty()) return false;
  search.evaluate(filled(pb, tiled), "adapted-tiling/tiles");
  search.evaluate(filled(pb, chords), "adapted-tiling/density-chords");
  return true;
}

struct Graph {
  std::vector<Vec2> v;
  std::vector<Edge> e;
};

Graph to_graph(const SigmaNetwork& net) { return {net.vertices(), net.edges()}; }

std::optional<SigmaNetwork> to_network(Graph g) {
  if (!g.e.empty()) {
    // Drop vertices no edge uses.
    std::vector<int> remap(g.v.size(), -1);
    std::vector<Vec2> kept;
    for (const auto& [a, b] : g.e) {
      for (int x : {a, b}) {
        if (remap[x] < 0) {
          remap[x] = static_cast<int>(kept.size());
          kept.push_back(g.v[x]);
        }
      }
    }
    for (auto& [a, b] : g.e) {
      a = remap[a];
      b = remap[b];
    }
    g.v = std::move(kept);
  }
  try {
    return SigmaNetwork(std::move(g.v), std::move(g.e));
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

// One random local modification: vertex slide, spur add/remove or edge split.
std::optional<SigmaNetwork> propose(const SigmaNetwork& current, const Problem& pb, double step,
                                    std::mt19937_64& rng) {
  Graph g = to_graph(current);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, step);
  const double move = u01(rng);
  const double spare = pb.L - current.length();
  if (g.e.empty()) {
    // A point network can only grow.
    const double len = std::min(spare, 0.1 * pb.L) * u01(rng);
    const double a = 2.0 * std::numbers::pi * u01(rng);
    g.v.push_back(g.v[0] + Vec2{std::cos(a), std::sin(a)} * len);
    g.e.emplace_back(0, 1);
    return to_network(std::move(g));
  }
  if (move < 0.60) {
    std::uniform_int_distribution<std::size_t> pick(0, g.v.size() - 1);
    const std::size_t i = pick(rng);
    g.v[i] = g.v[i] + Vec2{gauss(rng), gauss(rng)};
  } else if (move < 0.85) {
    std::vector<int> degree(g.v.size(), 0);
    for (const auto& [a, b] : g.e) {
      ++degree[a];
      ++degree[b];
    }
    std::vector<std::size_t> leaves;
    for (std::size_t k = 0; k < g.e.size(); ++k) {
      if (degree[g.e[k].first] == 1 || degree[g.e[k].second] == 1) leaves.push_back(k);
    }
    const bool add = spare > 1e-9 * pb.L && (leaves.empty() || g.e.size() < 2 || u01(rng) < 0.5);
    if (add) {
      std::uniform_int_distribution<std::size_t> pick(0, g.e.size() - 1);
      const std::size_t k = pick(rng);
      const auto [a, b] = g.e[k];
      const double t = 0.1 + 0.8 * u01(rng);
      const Vec2 base = g.v[a] + (g.v[b] - g.v[a]) * t;
      const double ang = 2.0 * std::numbers::pi * u01(rng);
      const double len = std::min(spare, 0.1 * pb.L) * (0.2 + 0.8 * u01(rng));
      const int pi = static_cast<int>(g.v.size());
      g.v.push_back(base);
      g.v.push_back(base + Vec2{std::cos(ang), std::sin(ang)} * len);
      g.e[k] = {a, pi};
      g.e.emplace_back(pi, b);
      g.e.emplace_back(pi, pi + 1);
    } else {
      if (leaves.empty() || g.e.size() < 2) return std::nullopt;
      std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
      g.e.erase(g.e.begin() + static_cast<std::ptrdiff_t>(leaves[pick(rng)]));
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, g.e.size() - 1);
    const std::size_t k = pick(rng);
    const auto [a, b] = g.e[k];
    const Vec2 d = g.v[b] - g.v[a];
    const double len = norm(d);
    if (len <= 0.0) return std::nullopt;
    const Vec2 perp{-d.y / len, d.x / len};
    const int m = static_cast<int>(g.v.size());
    g.v.push_back((g.v[a] + g.v[b]) * 0.5 + perp * gauss(rng));
    g.e[k] = {a, m};
    g.e.emplace_back(m, b);
  }
  auto net = to_network(std::move(g));
  if (!net || !admissible(*net, pb.domain, pb.L)) return std::nullopt;
  return net;
}

void run_anneal(const Problem& pb, Search& search, const SigmaNetwork& start, double start_value) {
  auto rng = substream(pb.seed, 2);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const long total = std::max<long>(1, search.remaining());
  const double step = 0.02 * pb.L / std::sqrt(static_cast<double>(total));
  auto badness = [&](double from, double to) {
    // Relative worsening, positive when `to` is worse.
    const double scale = std::max(std::abs(from), 1e-300);
    return search.better(from, to) ? std::abs(to - from) / scale : -std::abs(to - from) / scale;
  };

  SigmaNetwork current = start;
  double current_value = start_value;
  if (!std::isfinite(current_value)) current_value = search.evaluate_one(current, "anneal");

  // Calibrate the initial temperature for about 50% acceptance of worsening moves.
  const long probes = std::min<long>(100, std::max<long>(1, total / 5));
  std::vector<double> worse;
  for (long i = 0; i < probes && !search.exhausted(); ++i) {
    auto cand = propose(current, pb, step, rng);
    if (!cand) continue;
    const double v = search.evaluate_one(*cand, "anneal");
    const double b = badness(current_value, v);
    if (b > 0.0 && std::isfinite(b)) worse.push_back(b);
  }
  double T0 = 1e-3;
  if (!worse.empty()) {
    std::nth_element(worse.begin(), worse.begin() + static_cast<std::ptrdiff_t>(worse.size() / 2), worse.end());
    T0 = std::max(1e-12, worse[worse.size() / 2] / std::log(2.0));
  }
  double T = T0;
  int rejected_in_row = 0;
  while (!search.exhausted() && rejected_in_row < 10000) {
    auto cand = propose(current, pb, step, rng);
    if (!cand) {
      ++rejected_in_row;
      continue;
    }
    rejected_in_row = 0;
    const double v = search.evaluate_one(*cand, "anneal");
    const double b = badness(current_value, v);
    if (std::isfinite(b) && (b <= 0.0 || u01(rng) < std::exp(-b / T))) {
      current = std::move(*cand);
      current_value = v;
    }
    T *= 0.995;
  }
}

OptimizationReport run(const Problem& pb, ObjectiveKind kind, Strategy strategy, long eval_budget,
                       const std::function<double(const SigmaNetwork&, double)>& raw) {
  if (!(pb.L > 0.0) || !std::isfinite(pb.L)) throw InvalidInput("budget L must be positive");
  if (eval_budget < 1) throw InvalidInput("evaluation budget must be at least 1");
  const double h_search = kind == ObjectiveKind::Eigenvalue ? pb.options.h_search : 0.0;
  Search search(kind, raw, h_search, eval_budget, pb.options.threads);

  std::string fallback;
  // Networks annealing started from; they stay in the final ranking.
  std::vector<Search::Candidate> anchors;
  switch (strategy) {
    case Strategy::CombFamily:
      run_comb_family(pb, search);
      break;
    case Strategy::AdaptedTiling:
      if (!run_adapted_tiling(pb, search)) {
        fallback = " (tiling infeasible, comb-family fallback)";
        run_comb_family(pb, search);
      }
      break;
    case Strategy::Anneal:
    case Strategy::Portfolio: {
      run_comb_family(pb, search);
      if (strategy == Strategy::Portfolio && !search.exhausted()) run_adapted_tiling(pb, search);
      if (search.leaders().empty()) break;
      anchors = search.leaders();
      const auto lead = search.leaders().front();
      if (!search.exhausted()) run_anneal(pb, search, lead.net, lead.value);
      break;
    }
  }
  if (search.leaders().empty()) throw InfeasibleError("no admissible network found for L = " + std::to_string(pb.L));

  OptimizationReport report;
  report.kind = kind;
  report.p = pb.p;
  report.L = pb.L;
  report.seed = pb.seed;
  report.budget_exhausted = search.hit_budget() || search.exhausted();

  // Re-rank the leaders at the final resolution, after topping up length.
  bool first = true;
  long extra = 0;
  auto finalists = search.leaders();
  finalists.insert(finalists.end(), anchors.begin(), anchors.end());
  for (const auto& c : finalists) {
    SigmaNetwork net = fill_budget(c.net, pb.domain, pb.L, pb.options.min_fill);
    const double final_h = kind == ObjectiveKind::Eigenvalue ? pb.options.h_final : 0.0;
    const double v = search.value_at(net, final_h);
    ++extra;
    if (first || search.better(v, report.value)) {
      report.best = std::move(net);
      report.value = v;
      report.winner = c.family + fallback;
      first = false;
    }
  }
  report.evaluations = search.used() + extra;
  report.history = search.history();
  return report;
}

}  // namespace

Strategy parse_strategy(const std::string& name) {
  if (name == "comb-family") return Strategy::CombFamily;
  if (name == "adapted-tiling") return Strategy::AdaptedTiling;
  if (name == "anneal") return Strategy::Anneal;
  if (name == "portfolio") return Strategy::Portfolio;
  throw InvalidInput("unknown strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::CombFamily: return "comb-family";
    case Strategy::AdaptedTiling: return "adapted-tiling";
    case Strategy::Anneal: return "anneal";
    case Strategy::Portfolio: return "portfolio";
  }
  return "?";
}

std::vector<Segment> chords_at(const Domain& domain, double angle, const std::vector<double>& offsets) {
  const Vec2 nu = normal_of(angle);
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  const double reach = diameter(domain) + norm(domain.bounding_box().hi) + norm(domain.bounding_box().lo) + 1.0;
  std::vector<Segment> out;
  for (double c : offsets) {
    const Vec2 base = nu * c;
    for (const auto& piece : domain.clip_segment({base - dir * reach, base + dir * reach})) {
      if (piece.length() > 1e-12) out.push_back(piece);
    }
  }
  return out;
}

std::optional<SigmaNetwork> connect_pieces(const Domain& domain, const std::vector<Segment>& pieces) {
  if (pieces.empty()) return std::nullopt;
  const std::size_t n = pieces.size();
  // Prim's algorithm with connector length as edge weight.
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<std::pair<Vec2, Vec2>> link(n);
  std::vector<Segment> segs = pieces;
  in_tree[0] = true;
  auto relax = [&](std::size_t from) {
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const auto [a, b] = closest_points(pieces[from], pieces[j]);
      const double d = distance(a, b);
      if (d >= best[j]) continue;
      if (d > 1e-12 && !domain.contains_segment({a, b})) continue;
      best[j] = d;
      link[j] = {a, b};
    }
  };
  relax(0);
  for (std::size_t added = 1; added < n; ++added) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_tree[j] && (next == n || best[j] < best[next])) next = j;
    }
    if (next == n || !std::isfinite(best[next])) return std::nullopt;
    in_tree[next] = true;
    if (best[next] > 1e-12) segs.push_back({link[next].first, link[next].second});
    relax(next);
  }
  auto net = SigmaNetwork::from_segments(segs);
  if (!is_connected(net)) return std::nullopt;
  return net;
}

SigmaNetwork fill_budget(const SigmaNetwork& sigma, const Domain& domain, double L, double min_fill) {
  SigmaNetwork net = sigma;
  const double tol = 1e-9 * diameter(domain);
  for (int iter = 0; iter < 256; ++iter) {
    const double len = net.length();
    if (len >= min_fill * L) break;
    double remaining = (L - len) * (1.0 - 1e-9);
    const Vec2 target = max_distance(domain, net, 1e-3 * diameter(domain)).argmax;
    // Nearest point of the network to the target.
    Vec2 from = net.vertices().front();
    double dmin = distance(from, target);
    for (const Vec2& v : net.vertices()) {
      if (distance(v, target) < dmin) {
        dmin = distance(v, target);
        from = v;
      }
    }
    for (const auto& s : net.segments()) {
      const Vec2 q = closest_point_on_segment(target, s);
      if (distance(q, target) < dmin) {
        dmin = distance(q, target);
        from = q;
      }
    }
    if (dmin <= tol) break;
    const std::vector<std::vector<Vec2>> paths{
        {from, {target.x, from.y}, target},
        {from, {from.x, target.y}, target},
        {from, target},
    };
    std::vector<Segment> hair;
    for (const auto& path : paths) {
      hair.clear();
      double budget = remaining;
      bool ok = true;
      for (std::size_t k = 0; k + 1 < path.size() && budget > tol; ++k) {
        Segment leg{path[k], path[k + 1]};
        const double l = leg.length();
        if (l <= tol) continue;
        if (l > budget) leg.b = leg.a + (leg.b - leg.a) * (budget / l);
        if (!domain.contains_segment(leg)) {
          ok = false;
          break;
        }
        hair.push_back(leg);
        budget -= leg.length();
      }
      if (ok && !hair.empty()) break;
      hair.clear();
    }
    if (hair.empty()) break;
    auto segs = net.segments();
    segs.insert(segs.end(), hair.begin(), hair.end());
    SigmaNetwork grown = SigmaNetwork::from_segments(segs);
    if (grown.length() <= len + tol || grown.length() > L || !is_connected(grown)) break;
    net = std::move(grown);
  }
  return net;
}

OptimizationReport maximize_lambda(const Domain& domain, const CoefficientField& rho,
                                   const CoefficientField& sigma_coef, double p, double L,
                                   Strategy strategy, std::uint64_t seed, long eval_budget,
                                   const OptimizeOptions& options) {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidInput("maximize_lambda needs 1 < p < inf");
  require_positive(rho, domain, "rho");
  require_positive(sigma_coef, domain, "sigma");
  Problem pb{domain, L, seed, options, &rho, &sigma_coef, p};
  auto raw = [&](const SigmaNetwork& net, double h) {
    const auto r = p == 2.0 ? lambda2(domain, net, rho, sigma_coef, h, options.solver)
                            : lambda_p(domain, net, rho, sigma_coef, p, h, options.solver);
    return r.lambda;
  };
  return run(pb, ObjectiveKind::Eigenvalue, strategy, eval_budget, raw);
}

OptimizationReport minimize_maxdist(const Domain& domain, double L, Strategy strategy,
                                    std::uint64_t seed, long eval_budget,
                                    const OptimizeOptions& options) {
  Problem pb{domain, L, seed, options};
  pb.p = kInf;
  auto raw = [&](const SigmaNetwork& net, double) {
    return max_distance(domain, net, options.maxdist_tolerance).T;
  };
  return run(pb, ObjectiveKind::MaxDistance, strategy, eval_budget, raw);
}

Certificate certify(const OptimizationReport& report, const Domain& domain) {
  const auto ctx = LengthBoundContext::make(domain, report.best);
  Certificate c;
  c.achieved = report.value;
  if (report.kind == ObjectiveKind::Eigenvalue) {
    c.bound = upper_bound_lambda(ctx, report.p);
    c.gap = c.bound / c.achieved;
  } else {
    c.bound = ctx.tbar;
    c.gap = c.achieved / c.bound;
  }
  return c;
}

}  // namespace ribopt
