#include "sewkit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sewkit/error.hpp"

namespace sewkit {

namespace {

// A point on a polar grid: radius and angle u/count of a full turn past a
// common phase. Angles are kept as integer fractions so that differences are
// exact and rotations by a quarter turn reproduce distances bit for bit.
struct PolarPoint {
  double radius;
  std::size_t u;
  std::size_t count;  // 0 for the center
};

double polar_distance(const PolarPoint& a, const PolarPoint& b) {
  if (a.count == 0) return b.radius;
  if (b.count == 0) return a.radius;
  // Angular difference as the reduced fraction p/q of a full turn, p <= q/2.
  const std::size_t q = a.count * b.count;
  std::size_t p = (a.u * b.count + q - (b.u * a.count) % q) % q;
  p = std::min(p, q - p);
  const std::size_t g = std::gcd(p, q);
  const double half_angle = std::numbers::pi * static_cast<double>(p / g) / static_cast<double>(q / g);
  const double s = std::sin(half_angle);
  if (a.radius == b.radius) return 2.0 * a.radius * s;
  const double dr = a.radius - b.radius;
  return std::sqrt(dr * dr + 4.0 * a.radius * b.radius * s * s);
}

FiniteMetricSpace polar_space(const std::vector<PolarPoint>& pts, double phase, double cx, double cy) {
  const std::size_t n = pts.size();
  DistanceTable t(n);
  std::vector<Point> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[i];
    double theta = p.count ? phase + 2.0 * std::numbers::pi * static_cast<double>(p.u) / static_cast<double>(p.count)
                           : 0.0;
    coords.push_back({cx + p.radius * std::cos(theta), cy + p.radius * std::sin(theta)});
    for (std::size_t j = i + 1; j < n; ++j) t.set_symmetric(i, j, polar_distance(p, pts[j]));
  }
  return FiniteMetricSpace(std::move(t), {}, std::move(coords));
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

double bilipschitz_constant(const FiniteMetricSpace& base, const std::vector<std::size_t>& base_cycle,
                            const FiniteMetricSpace& filling, const std::vector<std::size_t>& filling_cycle) {
  if (base_cycle.size() != filling_cycle.size()) throw InvalidInput("boundary map sizes differ");
  double worst = 1.0;
  for (std::size_t a = 0; a < base_cycle.size(); ++a) {
    for (std::size_t b = a + 1; b < base_cycle.size(); ++b) {
      const double r = filling(filling_cycle[a], filling_cycle[b]) / base(base_cycle[a], base_cycle[b]);
      worst = std::max({worst, r, 1.0 / r});
    }
  }
  return worst;
}

void check_bundle(const ScenarioBundle& bundle) {
  const std::size_t n = bundle.base.size();
  if (n == 0) throw InvalidInput("bundle has an empty base");
  for (std::size_t k = 0; k < bundle.components.size(); ++k) {
    const auto& c = bundle.components[k];
    const std::string where = "component " + std::to_string(k) + ": ";
    if (c.base_cycle.empty()) throw InvalidInput(where + "empty boundary");
    if (c.base_cycle.size() != c.filling_cycle.size()) throw InvalidInput(where + "boundary map sizes differ");
    for (std::size_t i : c.base_cycle)
      if (i >= n) throw InvalidInput(where + "boundary index out of range");
    for (std::size_t i : c.filling_cycle)
      if (i >= c.filling.size()) throw InvalidInput(where + "boundary image index out of range");
    // Subset construction rejects duplicates, i.e. non-injective maps.
    try {
      (void)c.boundary();
      (void)c.boundary_image();
    } catch (const InvalidInput&) {
      throw InvalidInput(where + "boundary map is not injective");
    }
    if (!(c.bilipschitz >= 1.0) || !std::isfinite(c.bilipschitz))
      throw InvalidInput(where + "bi-Lipschitz constant must be a finite number >= 1");
    const double actual = bilipschitz_constant(bundle.base, c.base_cycle, c.filling, c.filling_cycle);
    if (actual > c.bilipschitz * (1.0 + kRelTol))
      throw InvalidInput(where + "boundary map distortion " + std::to_string(actual) + " exceeds the stated L = " +
                         std::to_string(c.bilipschitz));
  }
}

FiniteMetricSpace circle_net(std::size_t m) {
  if (m < 3) throw InvalidInput("circle_net needs m >= 3");
  std::vector<PolarPoint> pts;
  for (std::size_t i = 0; i < m; ++i) pts.push_back({1.0, i, m});
  return polar_space(pts, 0.0, 0.0, 0.0);
}

DiskNet disk_net(std::size_t k) {
  if (k < 2) throw InvalidInput("disk_net needs at least 2 rings");
  std::vector<PolarPoint> pts{{0.0, 0, 0}};
  DiskNet out;
  for (std::size_t j = 1; j <= k; ++j) {
    const auto count = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * static_cast<double>(j)));
    const double r = static_cast<double>(j) / static_cast<double>(k);
    for (std::size_t u = 0; u < count; ++u) {
      if (j == k) out.boundary_cycle.push_back(pts.size());
      pts.push_back({r, u, count});
    }
  }
  out.space = polar_space(pts, 0.0, 0.0, 0.0);
  out.boundary = Subset(out.boundary_cycle);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t CarpetNet::index_of(std::size_t i, std::size_t j) const {
  if (i > resolution || j > resolution) return npos;
  return lookup[i * (resolution + 1) + j];
}

std::vector<Subset> CarpetNet::peripheral_subsets() const {
  std::vector<Subset> out;
  for (const auto& c : hole_cycles) out.emplace_back(c);
  out.emplace_back(outer_cycle);
  return out;
}

namespace {

struct Hole {
  std::size_t x0, y0, side;
};

// Removed squares in grid units, ordered by removal level then (x0, y0).
std::vector<Hole> carpet_holes(int level, std::size_t m) {
  std::vector<Hole> holes;
  std::size_t side = m;
  for (int l = 1; l <= level; ++l) {
    side /= 3;
    const std::size_t cells = m / (3 * side);
    for (std::size_t ci = 0; ci < cells; ++ci) {
      for (std::size_t cj = 0; cj < cells; ++cj) {
        const std::size_t x0 = ci * 3 * side + side;
        const std::size_t y0 = cj * 3 * side + side;
        // The parent cell must survive every coarser removal.
        bool kept = true;
        for (std::size_t s2 = side * 3; s2 < m && kept; s2 *= 3) {
          const std::size_t li = x0 % (3 * s2), lj = y0 % (3 * s2);
          if (li >= s2 && li < 2 * s2 && lj >= s2 && lj < 2 * s2) kept = false;
        }
        if (kept) holes.push_back({x0, y0, side});
      }
    }
  }
  return holes;
}

std::vector<std::array<std::size_t, 2>> square_cycle(std::size_t x0, std::size_t y0, std::size_t s) {
  std::vector<std::array<std::size_t, 2>> c;
  for (std::size_t t = 0; t < s; ++t) c.push_back({x0 + t, y0});
  for (std::size_t t = 0; t < s; ++t) c.push_back({x0 + s, y0 + t});
  for (std::size_t t = 0; t < s; ++t) c.push_back({x0 + s - t, y0 + s});
  for (std::size_t t = 0; t < s; ++t) c.push_back({x0, y0 + s - t});
  return c;
}

}  // namespace

CarpetNet carpet_net(int level) {
  if (level < 1 || level > 5) throw InvalidInput("carpet level must be in [1, 5]");
  std::size_t m = 1;
  for (int l = 0; l < level; ++l) m *= 3;
  const std::size_t w = m + 1;

  const auto holes = carpet_holes(level, m);
  std::vector<char> removed(w * w, 0);
  for (const auto& h : holes)
    for (std::size_t i = h.x0 + 1; i < h.x0 + h.side; ++i)
      for (std::size_t j = h.y0 + 1; j < h.y0 + h.side; ++j) removed[i * w + j] = 1;

  CarpetNet net;
  net.resolution = m;
  net.lookup.assign(w * w, CarpetNet::npos);
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      if (removed[i * w + j]) continue;
      net.lookup[i * w + j] = net.grid.size();
      net.grid.push_back({i, j});
    }
  }

  const std::size_t n = net.grid.size();
  const double md = static_cast<double>(m);
  DistanceTable t(n);
  std::vector<Point> coords(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto [ia, ja] = net.grid[a];
    coords[a] = {static_cast<double>(ia) / md, static_cast<double>(ja) / md};
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto [ib, jb] = net.grid[b];
      const double di = static_cast<double>(ia) - static_cast<double>(ib);
      const double dj = static_cast<double>(ja) - static_cast<double>(jb);
      t.set_symmetric(a, b, std::sqrt(di * di + dj * dj) / md);
    }
  }
  net.space = FiniteMetricSpace(std::move(t), {}, std::move(coords));

  auto to_indices = [&](const std::vector<std::array<std::size_t, 2>>& cyc) {
    std::vector<std::size_t> out;
    for (const auto& [i, j] : cyc) out.push_back(net.index_of(i, j));
    return out;
  };
  for (const auto& h : holes) net.hole_cycles.push_back(to_indices(square_cycle(h.x0, h.y0, h.side)));
  net.outer_cycle = to_indices(square_cycle(0, 0, m));
  return net;
}

FiniteMetricSpace interval_net(std::size_t m) {
  if (m < 2) throw InvalidInput("interval_net needs m >= 2");
  std::vector<Point> coords;
  for (std::size_t i = 0; i <= m; ++i) coords.push_back({static_cast<double>(i) / static_cast<double>(m)});
  DistanceTable t(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) t.set_symmetric(i, j, static_cast<double>(j - i) / static_cast<double>(m));
  return FiniteMetricSpace(std::move(t), {}, std::move(coords));
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) throw InvalidInput("snowflake exponent must lie in (0, 1]");
  DistanceTable t = space.table();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (double& v : t.row(i)) v = std::pow(v, alpha);
  return FiniteMetricSpace(std::move(t), space.labels());
}

// ---------------------------------------------------------------------------

CarpetScenario carpet_with_disks(int level) {
  CarpetScenario out;
  out.carpet = carpet_net(level);
  out.bundle.base = out.carpet.space;
  const double md = static_cast<double>(out.carpet.resolution);
  constexpr double kPhase = 5.0 * std::numbers::pi / 4.0;  // lower-left corner

  for (const auto& cycle : out.carpet.hole_cycles) {
    const std::size_t mb = cycle.size();
    const std::size_t side = mb / 4;
    const auto ll = out.carpet.grid[cycle.front()];
    const double cx = (static_cast<double>(ll[0]) + static_cast<double>(side) / 2.0) / md;
    const double cy = (static_cast<double>(ll[1]) + static_cast<double>(side) / 2.0) / md;
    const double radius = static_cast<double>(side) / md * std::numbers::sqrt2 / 2.0;

    const auto rings = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(mb) / (2.0 * std::numbers::pi))));
    std::vector<PolarPoint> pts;
    std::vector<std::size_t> counts{mb};
    for (std::size_t u = 0; u < mb; ++u) pts.push_back({radius, u, mb});
    pts.push_back({0.0, 0, 0});
    // Inner rings keep a multiple of 4 points so quarter turns act on them.
    for (std::size_t j = 1; j < rings; ++j) {
      const std::size_t c = 4 * ceil_div(mb * j, 4 * rings);
      const double r = radius * static_cast<double>(j) / static_cast<double>(rings);
      for (std::size_t u = 0; u < c; ++u) pts.push_back({r, u, c});
      counts.push_back(c);
    }

    GluingComponent comp;
    comp.base_cycle = cycle;
    comp.filling_cycle.resize(mb);
    std::iota(comp.filling_cycle.begin(), comp.filling_cycle.end(), std::size_t{0});
    comp.filling = polar_space(pts, kPhase, cx, cy);
    comp.bilipschitz = bilipschitz_constant(out.bundle.base, comp.base_cycle, comp.filling, comp.filling_cycle);
    out.bundle.components.push_back(std::move(comp));
    out.rings.push_back(std::move(counts));
  }
  return out;
}

}  // namespace sewkit
