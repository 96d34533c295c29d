#include "ribopt/configurations.hpp"

#include <algorithm>
#include <cmath>

#include "ribopt/error.hpp"

namespace ribopt {

namespace {

void require_positive_count(int n, const char* what) {
  if (n < 1) throw InvalidInput(std::string(what) + " needs n >= 1");
}

std::vector<Segment> square_boundary() {
  return {{{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}}};
}

}  // namespace

SigmaNetwork build_comb(int n) {
  require_positive_count(n, "comb");
  std::vector<Vec2> vertices;
  std::vector<Edge> edges;
  // Base vertices (k/n, 0) at indices 0..n, tops at n+1..2n+1.
  for (int k = 0; k <= n; ++k) vertices.push_back({static_cast<double>(k) / n, 0.0});
  for (int k = 0; k <= n; ++k) vertices.push_back({static_cast<double>(k) / n, 1.0});
  for (int k = 0; k < n; ++k) edges.emplace_back(k, k + 1);
  for (int k = 0; k <= n; ++k) edges.emplace_back(k, n + 1 + k);
  return SigmaNetwork(std::move(vertices), std::move(edges));
}

SigmaNetwork build_grid_structure(int n) {
  require_positive_count(n, "grid structure");
  std::vector<Segment> segs;
  for (int k = 0; k <= n; ++k) {
    const double c = static_cast<double>(k) / n;
    segs.push_back({{c, 0.0}, {c, 1.0}});
    segs.push_back({{0.0, c}, {1.0, c}});
  }
  // Lines cross at grid points; split them so crossings become vertices.
  std::vector<Segment> pieces;
  for (int k = 0; k <= n; ++k) {
    const double c = static_cast<double>(k) / n;
    for (int j = 0; j < n; ++j) {
      const double a = static_cast<double>(j) / n;
      const double b = static_cast<double>(j + 1) / n;
      pieces.push_back({{c, a}, {c, b}});
      pieces.push_back({{a, c}, {b, c}});
    }
  }
  return SigmaNetwork::from_segments(pieces);
}

std::vector<Segment> parallel_chords(const Domain& domain, double angle, double spacing,
                                     double offset) {
  if (!(spacing > 0.0)) throw InvalidInput("chord spacing must be positive");
  const Vec2 nu{std::sin(angle), -std::cos(angle)};
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  double lo = INFINITY;
  double hi = -INFINITY;
  double reach = 0.0;
  for (const Vec2& v : domain.outer()) {
    lo = std::min(lo, dot(v, nu));
    hi = std::max(hi, dot(v, nu));
    reach = std::max(reach, std::abs(dot(v, dir)));
  }
  reach += 1.0;
  std::vector<Segment> out;
  const long k0 = static_cast<long>(std::floor(lo / spacing - offset)) - 1;
  const long k1 = static_cast<long>(std::ceil(hi / spacing - offset)) + 1;
  for (long k = k0; k <= k1; ++k) {
    const double c = (static_cast<double>(k) + offset) * spacing;
    if (c < lo - 1e-12 || c > hi + 1e-12) continue;
    const Vec2 base = nu * c;
    const Segment line{base - dir * reach, base + dir * reach};
    for (const auto& piece : domain.clip_segment(line)) {
      if (piece.length() > 1e-12) out.push_back(piece);
    }
  }
  return out;
}

SigmaNetwork build_oblique_comb(int n, double angle, double offset) {
  require_positive_count(n, "oblique comb");
  const auto chords = parallel_chords(Domain::unit_square(), angle, 1.0 / n, offset);
  // Split the boundary at chord endpoints so that chords attach at vertices.
  std::vector<Vec2> cuts;
  for (const auto& s : chords) {
    cuts.push_back(s.a);
    cuts.push_back(s.b);
  }
  std::vector<Segment> pieces;
  for (const auto& side : square_boundary()) {
    std::vector<double> ts{0.0, 1.0};
    for (Vec2 c : cuts) {
      if (point_segment_distance(c, side) < 1e-12) {
        ts.push_back(dot(c - side.a, side.b - side.a) / dot(side.b - side.a, side.b - side.a));
      }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (ts[i + 1] - ts[i] > 1e-12) pieces.push_back({side.at(ts[i]), side.at(ts[i + 1])});
    }
  }
  pieces.insert(pieces.end(), chords.begin(), chords.end());
  return SigmaNetwork::from_segments(pieces);
}

SigmaNetwork build_boxed_comb_tile(int m) {
  require_positive_count(m, "boxed comb tile");
  std::vector<Segment> segs;
  for (int j = 0; j < m; ++j) {
    const double a = static_cast<double>(j) / m;
    const double b = static_cast<double>(j + 1) / m;
    segs.push_back({{a, 0.0}, {b, 0.0}});
    segs.push_back({{a, 1.0}, {b, 1.0}});
  }
  for (int j = 0; j <= m; ++j) {
    const double x = static_cast<double>(j) / m;
    segs.push_back({{x, 0.0}, {x, 1.0}});
  }
  return SigmaNetwork::from_segments(segs);
}

double effective_tile_length(const SigmaNetwork& tile) {
  const Box unit{{0, 0}, {1, 1}};
  double total = 0.0;
  for (const auto& s : tile.segments()) {
    const auto clipped = clip_to_box(s, unit);
    if (!clipped) continue;
    const bool on_right = std::abs(clipped->a.x - 1.0) < 1e-12 && std::abs(clipped->b.x - 1.0) < 1e-12;
    const bool on_top = std::abs(clipped->a.y - 1.0) < 1e-12 && std::abs(clipped->b.y - 1.0) < 1e-12;
    if (!on_right && !on_top) total += clipped->length();
  }
  return total;
}

double FittedMeasure::density_at(Vec2 p) const {
  const int ix = static_cast<int>(std::floor(p.x / s));
  const int iy = static_cast<int>(std::floor(p.y / s));
  for (const auto& c : cells) {
    if (c.ix == ix && c.iy == iy) return c.alpha;
  }
  // Points on the upper/right lattice edge of the last cell.
  for (const auto& c : cells) {
    if (c.box.contains(p)) return c.alpha;
  }
  return 0.0;
}

double FittedMeasure::total_mass() const {
  double total = 0.0;
  for (const auto& c : cells) total += c.alpha * c.area;
  return total;
}

FittedMeasure fit_measure_to_grid(const ScalarField& f, double s, const Domain& domain,
                                  int subdivisions) {
  if (!(s > 0.0)) throw InvalidInput("cell side must be positive");
  const double mass = integrate(f, domain, 3 * subdivisions);
  if (std::abs(mass - 1.0) > 1e-6) {
    throw InvalidInput("density integrates to " + std::to_string(mass) + ", expected 1");
  }
  const Box bb = domain.bounding_box();
  const int i0 = static_cast<int>(std::floor(bb.lo.x / s + 1e-12));
  const int i1 = static_cast<int>(std::ceil(bb.hi.x / s - 1e-12));
  const int j0 = static_cast<int>(std::floor(bb.lo.y / s + 1e-12));
  const int j1 = static_cast<int>(std::ceil(bb.hi.y / s - 1e-12));
  FittedMeasure fm;
  fm.s = s;
  const double tiny = 1e-14 * domain.area();
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < i1; ++i) {
      const Box box{{i * s, j * s}, {(i + 1) * s, (j + 1) * s}};
      const double area = domain.clipped_area(box);
      if (area <= tiny) continue;
      const double mu = integrate(f, domain, box, subdivisions);
      fm.cells.push_back({i, j, box, std::max(0.0, mu) / area, area});
    }
  }
  const double total = fm.total_mass();
  if (!(total > 0.0)) throw InvalidInput("density has no mass on the lattice");
  for (auto& c : fm.cells) c.alpha /= total;
  return fm;
}

std::vector<int> tile_counts(double L, const FittedMeasure& fitted, const SigmaNetwork& tile) {
  const double le = effective_tile_length(tile);
  if (!(le > 0.0)) throw InvalidInput("tile has no length inside the unit square");
  std::vector<int> k;
  k.reserve(fitted.cells.size());
  const double usable = L - std::sqrt(L);
  for (const auto& c : fitted.cells) {
    const double v = fitted.s * c.alpha * usable / le;
    k.push_back(v > 0.0 ? static_cast<int>(std::floor(v + 1e-12)) : 0);
  }
  return k;
}

SigmaNetwork build_tiled_sigma(double L, const FittedMeasure& fitted, const SigmaNetwork& tile,
                               const Domain& domain) {
  if (!(L > 0.0)) throw InvalidInput("budget must be positive");
  const auto counts = tile_counts(L, fitted, tile);
  for (int k : counts) {
    if (k < 1) throw InfeasibleError("budget too small for fitted measure");
  }
  const auto tile_segments = tile.segments();
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < fitted.cells.size(); ++i) {
    const auto& cell = fitted.cells[i];
    const int k = counts[i];
    const double side = fitted.s / k;
    for (int b = 0; b < k; ++b) {
      for (int a = 0; a < k; ++a) {
        const Vec2 corner = cell.box.lo + Vec2{a * side, b * side};
        for (const auto& t : tile_segments) {
          const Segment placed{corner + t.a * side, corner + t.b * side};
          const auto in_cell = clip_to_box(placed, cell.box);
          if (!in_cell || in_cell->length() <= 1e-12) continue;
          for (const auto& piece : domain.clip_segment(*in_cell)) {
            if (piece.length() > 1e-12) segs.push_back(piece);
          }
        }
      }
    }
  }
  for (const auto& e : domain.boundary()) segs.push_back(e);
  SigmaNetwork sigma = SigmaNetwork::from_segments(segs);
  if (sigma.length() > L * (1.0 + 1e-12)) {
    throw InfeasibleError("tiled network of length " + std::to_string(sigma.length()) +
                          " exceeds the budget " + std::to_string(L));
  }
  return sigma;
}

}  // namespace ribopt
