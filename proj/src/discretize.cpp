#include "ribopt/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ribopt/error.hpp"

namespace ribopt {

namespace {

void warn_close_parallels(const SigmaNetwork& sigma, double h, std::vector<std::string>& out) {
  const auto segs = sigma.segments();
  for (std::size_t a = 0; a < segs.size(); ++a) {
    const Vec2 da = segs[a].b - segs[a].a;
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      const Vec2 db = segs[b].b - segs[b].a;
      if (std::abs(cross(da, db)) > 1e-6 * norm(da) * norm(db)) continue;
      const double d = segment_segment_distance(segs[a], segs[b]);
      if (d > 1e-12 && d < 4.0 * h) {
        std::ostringstream msg;
        msg << "parallel edges " << a << " and " << b << " are " << d
            << " apart, less than 4h = " << 4.0 * h << "; resolution may be insufficient";
        out.push_back(msg.str());
        return;
      }
    }
  }
}

}  // namespace

GridDiscretization discretize(const Domain& domain, const SigmaNetwork& sigma, double h,
                              double band_factor) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("grid spacing must be positive");
  if (!(band_factor > 0.0)) throw InvalidInput("dirichlet band factor must be positive");
  const Box bb = domain.bounding_box();
  GridDiscretization g;
  g.h = h;
  g.origin = bb.lo - Vec2{h, h};
  g.nx = static_cast<int>(std::ceil(bb.width() / h - 1e-9)) + 3;
  g.ny = static_cast<int>(std::ceil(bb.height() / h - 1e-9)) + 3;
  const std::size_t total = static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny);
  if (total > 400'000'000) throw InvalidInput("grid too large");
  g.classes.assign(total, NodeClass::Exterior);

  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (domain.contains(g.node(i, j))) g.classes[g.node_index(i, j)] = NodeClass::Interior;
    }
  }

  // Rasterize the Dirichlet band segment by segment.
  const double band = band_factor * h;
  const double slack = 1e-12 * h;
  for (const auto& s : dirichlet_set(sigma, domain).segments) {
    Box sb = bounding_box(s);
    const int i0 = std::max(0, static_cast<int>(std::floor((sb.lo.x - band - g.origin.x) / h)));
    const int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((sb.hi.x + band - g.origin.x) / h)));
    const int j0 = std::max(0, static_cast<int>(std::floor((sb.lo.y - band - g.origin.y) / h)));
    const int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((sb.hi.y + band - g.origin.y) / h)));
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        auto& c = g.classes[g.node_index(i, j)];
        if (c != NodeClass::Interior) continue;
        if (point_segment_distance(g.node(i, j), s) <= band + slack) c = NodeClass::Dirichlet;
      }
    }
  }

  g.unknown.assign(total, -1);
  for (std::size_t k = 0; k < total; ++k) {
    if (g.classes[k] == NodeClass::Interior) {
      g.unknown[k] = static_cast<int>(g.node_of_unknown.size());
      g.node_of_unknown.push_back(static_cast<int>(k));
    }
  }
  if (g.node_of_unknown.empty()) throw InvalidInput("resolution too coarse: no interior nodes");
  warn_close_parallels(sigma, h, g.warnings);
  return g;
}

std::vector<std::vector<int>> connected_components(const GridDiscretization& grid) {
  std::vector<int> label(grid.node_of_unknown.size(), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int start = 0; start < grid.num_unknowns(); ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      const int node = grid.node_of_unknown[u];
      const int i = node % grid.nx;
      const int j = node / grid.nx;
      const int nbrs[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& nb : nbrs) {
        if (nb[0] < 0 || nb[1] < 0 || nb[0] >= grid.nx || nb[1] >= grid.ny) continue;
        const int v = grid.unknown[grid.node_index(nb[0], nb[1])];
        if (v >= 0 && label[v] < 0) {
          label[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

double sublevel_area(const Domain& domain, const SigmaNetwork& sigma, double t, double h) {
  if (!(h > 0.0)) throw InvalidInput("grid spacing must be positive");
  if (t <= 0.0) return 0.0;
  const auto set = dirichlet_set(sigma, domain);
  const Box bb = domain.bounding_box();
  const int nx = static_cast<int>(std::ceil(bb.width() / h - 1e-9));
  const int ny = static_cast<int>(std::ceil(bb.height() / h - 1e-9));
  long count = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Vec2 c = bb.lo + Vec2{(i + 0.5) * h, (j + 0.5) * h};
      if (!domain.contains(c)) continue;
      if (set.distance(c) < t) ++count;
    }
  }
  return static_cast<double>(count) * h * h;
}

}  // namespace ribopt
