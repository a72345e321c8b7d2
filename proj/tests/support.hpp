#pragma once

// Independent oracles and random instance generators shared by the unit,
// property and acceptance tests. Nothing here calls the library code it is
// meant to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "sewkit/generators.hpp"
#include "sewkit/metric_space.hpp"

namespace sewkit::testing {

using Rng = std::mt19937_64;
using Rows = std::vector<std::vector<double>>;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Symmetric table with off-diagonal entries drawn from `draw`.
inline DistanceTable random_table(std::size_t n, const std::function<double()>& draw) {
  DistanceTable t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t.set_symmetric(i, j, draw());
  return t;
}

inline std::vector<Point> random_points(Rng& rng, std::size_t n, std::size_t dim = 2) {
  std::vector<Point> p(n, Point(dim));
  for (auto& x : p)
    for (auto& c : x) c = uniform(rng, 0.0, 1.0);
  return p;
}

inline double euclid(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Minimum over every simple chain from i to j of the summed weights, by
// depth-first enumeration of all paths without repeated points.
inline DistanceTable brute_force_chains(const DistanceTable& q) {
  const std::size_t n = q.size();
  DistanceTable best(n, std::numeric_limits<double>::infinity());
  std::vector<char> used(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    best(s, s) = 0;
    std::function<void(std::size_t, double)> walk = [&](std::size_t at, double len) {
      for (std::size_t nx = 0; nx < n; ++nx) {
        if (used[nx]) continue;
        const double l = len + q(at, nx);
        best(s, nx) = std::min(best(s, nx), l);
        used[nx] = 1;
        walk(nx, l);
        used[nx] = 0;
      }
    };
    used[s] = 1;
    walk(s, 0.0);
    used[s] = 0;
  }
  return best;
}

// Flood fill on an explicit edge predicate; returns a component label per point.
inline std::vector<std::size_t> flood_fill(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& edge) {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, none);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != none) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b)
        if (label[b] == none && edge(a, b)) {
          label[b] = next;
          stack.push_back(b);
        }
    }
    ++next;
  }
  return label;
}

inline std::size_t count_labels(const std::vector<std::size_t>& label) {
  std::vector<std::size_t> l = label;
  std::sort(l.begin(), l.end());
  return static_cast<std::size_t>(std::unique(l.begin(), l.end()) - l.begin());
}

// Direct grid scan: nodes (i, j) of the 3^level grid not strictly inside a removed square.
inline std::vector<std::array<std::size_t, 2>> carpet_grid_scan(int level) {
  std::size_t m = 1;
  for (int l = 0; l < level; ++l) m *= 3;
  // (i, j) is removed when it lies strictly inside the middle cell of some block.
  auto removed = [&](std::size_t i, std::size_t j) {
    for (std::size_t s = m; s >= 3; s /= 3) {
      const std::size_t cell = s / 3, bi = i % s, bj = j % s;
      if (bi > cell && bi < 2 * cell && bj > cell && bj < 2 * cell) return true;
    }
    return false;
  };
  std::vector<std::array<std::size_t, 2>> out;
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= m; ++j)
      if (!removed(i, j)) out.push_back({i, j});
  return out;
}

// The circle and center toy: base = 4 points on the unit circle (chordal),
// one filling with the same 4 points plus the center at distance 1. Filling
// distances are copied from the base, so the seam is isometric.
inline ScenarioBundle circle_center_toy() {
  const FiniteMetricSpace base = circle_net(4);
  DistanceTable t(5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) t(i, j) = base(i, j);
    t.set_symmetric(i, 4, 1.0);
  }
  GluingComponent c;
  c.base_cycle = {0, 1, 2, 3};
  c.filling_cycle = {0, 1, 2, 3};
  c.filling = FiniteMetricSpace(t);
  c.bilipschitz = 1.0;
  return {base, {c}};
}

// Random planar base with disjoint boundary components; each filling is the
// image of its boundary (and a few extra points) under a map that fixes the
// boundary's diameter pair and compresses across it by a factor t. Such
// fillings contract the seam metric, which is the comparability regime. With
// t == 1 the filling reuses the base coordinates and the seam is isometric.
struct RandomBundle {
  ScenarioBundle bundle;
  double t = 1;
};

inline RandomBundle random_bundle(Rng& rng, bool isometric) {
  const std::size_t nb = uniform_index(rng, 10, 24);
  const std::vector<Point> pts = random_points(rng, nb);
  ScenarioBundle b;
  b.base = FiniteMetricSpace::euclidean(pts);
  const double t = isometric ? 1.0 : uniform(rng, 0.3, 1.0);

  std::vector<std::size_t> order(nb);
  for (std::size_t i = 0; i < nb; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t comps = uniform_index(rng, 1, 3);
  std::size_t used = 0;
  for (std::size_t k = 0; k < comps && used + 3 <= nb; ++k) {
    const std::size_t size = std::min<std::size_t>(uniform_index(rng, 3, 5), nb - used);
    std::vector<std::size_t> cyc(order.begin() + static_cast<long>(used), order.begin() + static_cast<long>(used + size));
    used += size;

    // diameter pair of the boundary
    std::size_t ia = cyc[0], ib = cyc[1];
    for (std::size_t x : cyc)
      for (std::size_t y : cyc)
        if (euclid(pts[x], pts[y]) > euclid(pts[ia], pts[ib])) ia = x, ib = y;
    const Point a = pts[ia];
    const double ux = pts[ib][0] - a[0], uy = pts[ib][1] - a[1];
    const double un = std::hypot(ux, uy);
    auto psi = [&](const Point& p) -> Point {
      if (isometric) return p;
      const double vx = p[0] - a[0], vy = p[1] - a[1];
      const double along = (vx * ux + vy * uy) / un;
      const double px = along * ux / un, py = along * uy / un;
      return {a[0] + px + t * (vx - px), a[1] + py + t * (vy - py)};
    };

    std::vector<Point> fill;
    for (std::size_t z : cyc) fill.push_back(psi(pts[z]));
    const std::size_t extra = uniform_index(rng, 1, 4);
    for (std::size_t e = 0; e < extra; ++e) {
      // interior points near the boundary's centroid
      Point c{0, 0};
      for (std::size_t z : cyc) c[0] += pts[z][0] / static_cast<double>(size), c[1] += pts[z][1] / static_cast<double>(size);
      c[0] += uniform(rng, -0.05, 0.05);
      c[1] += uniform(rng, -0.05, 0.05);
      fill.push_back(psi(c));
    }
    GluingComponent g;
    g.base_cycle = cyc;
    for (std::size_t i = 0; i < size; ++i) g.filling_cycle.push_back(i);
    g.filling = FiniteMetricSpace::euclidean(fill);
    g.bilipschitz = bilipschitz_constant(b.base, g.base_cycle, g.filling, g.filling_cycle);
    b.components.push_back(std::move(g));
  }
  return {std::move(b), t};
}

// Points on two unit segments 0.25 apart, joined by a vertical segment at x = 0.
inline FiniteMetricSpace u_shape(std::size_t steps) {
  const double h = 1.0 / static_cast<double>(steps);
  std::vector<Point> p;
  for (std::size_t i = 0; i <= steps; ++i) p.push_back({static_cast<double>(i) * h, 0.0});
  for (std::size_t i = 0; i <= steps; ++i) p.push_back({static_cast<double>(i) * h, 0.25});
  const std::size_t vs = static_cast<std::size_t>(std::lround(0.25 / h));
  for (std::size_t i = 1; i < vs; ++i) p.push_back({0.0, static_cast<double>(i) * h});
  return FiniteMetricSpace::euclidean(p);
}

// Two perpendicular unit segments sharing the corner: A on the x axis, B on the y axis.
struct Corner {
  FiniteMetricSpace space;
  Subset A, B;
  double mesh;
};

inline Corner perpendicular_segments(std::size_t steps) {
  std::vector<Point> p{{0.0, 0.0}};
  std::vector<std::size_t> a{0}, b{0};
  for (std::size_t i = 1; i <= steps; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(steps);
    a.push_back(p.size());
    p.push_back({s, 0.0});
    b.push_back(p.size());
    p.push_back({0.0, s});
  }
  return {FiniteMetricSpace::euclidean(p), Subset(a), Subset(b), 1.0 / static_cast<double>(steps)};
}

// Box count of a subset of a 1-d or 2-d coordinate set: occupied cells of side s.
inline std::size_t box_count(const std::vector<Point>& pts, double s) {
  std::vector<std::pair<long, long>> cells;
  for (const auto& p : pts)
    cells.emplace_back(static_cast<long>(std::floor(p[0] / s + 1e-9)),
                       p.size() > 1 ? static_cast<long>(std::floor(p[1] / s + 1e-9)) : 0L);
  std::sort(cells.begin(), cells.end());
  return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

// Least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

}  // namespace sewkit::testing
