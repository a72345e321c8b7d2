#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sewkit/metric_space.hpp"

namespace sewkit {

// One gluing component: base_cycle[t] in the base is identified with
// filling_cycle[t] in the filling. Both lists are kept in cyclic order.
struct GluingComponent {
  std::vector<std::size_t> base_cycle;
  std::vector<std::size_t> filling_cycle;
  FiniteMetricSpace filling;
  double bilipschitz = 1.0;  // L >= 1

  [[nodiscard]] Subset boundary() const { return Subset(base_cycle); }
  [[nodiscard]] Subset boundary_image() const { return Subset(filling_cycle); }
};

struct ScenarioBundle {
  FiniteMetricSpace base;
  std::vector<GluingComponent> components;
};

// Exact max of max(r, 1/r) over boundary pairs, r = d_fill(psi x, psi y) / d_base(x, y).
double bilipschitz_constant(const FiniteMetricSpace& base, const std::vector<std::size_t>& base_cycle,
                            const FiniteMetricSpace& filling, const std::vector<std::size_t>& filling_cycle);

// Throws InvalidInput naming the first broken invariant: index ranges,
// injectivity of each boundary map, L >= 1, and the bi-Lipschitz bound
// (checked with relative tolerance kRelTol).
void check_bundle(const ScenarioBundle& bundle);

// m equally spaced points on the unit circle, point i at angle 2*pi*i/m, chordal metric.
FiniteMetricSpace circle_net(std::size_t m);

struct DiskNet {
  FiniteMetricSpace space;
  Subset boundary;                        // outermost ring
  std::vector<std::size_t> boundary_cycle;  // same ring in angular order
};

// Polar grid on the closed unit disk: the center (index 0), then rings
// j = 1..k at radius j/k with ceil(2*pi*j) points each, starting at angle 0.
DiskNet disk_net(std::size_t k);

struct CarpetNet {
  FiniteMetricSpace space;
  std::size_t resolution = 0;  // grid nodes have integer coordinates in [0, resolution]
  std::vector<std::array<std::size_t, 2>> grid;
  // Boundary cycles of removed squares, ordered by (removal level, x, y).
  // Each cycle starts at the lower-left corner and runs counterclockwise.
  std::vector<std::vector<std::size_t>> hole_cycles;
  std::vector<std::size_t> outer_cycle;

  // Point index of grid node (i, j), or npos if the node was removed.
  [[nodiscard]] std::size_t index_of(std::size_t i, std::size_t j) const;
  // Hole boundaries followed by the outer boundary, as subsets.
  [[nodiscard]] std::vector<Subset> peripheral_subsets() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> lookup;  // (resolution + 1)^2 entries
};

// Grid nodes at spacing 3^-level on [0,1]^2 that are not interior to any
// removed square, Euclidean metric. 1 <= level <= 5.
CarpetNet carpet_net(int level);

// m + 1 equally spaced points on [0, 1].
FiniteMetricSpace interval_net(std::size_t m);

// Same points with d replaced by d^alpha, 0 < alpha <= 1.
FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double alpha);

struct CarpetScenario {
  CarpetNet carpet;
  ScenarioBundle bundle;
  // For each component, ring point counts in filling order: the boundary ring,
  // then inner rings from the center outward. The center is not listed.
  std::vector<std::vector<std::size_t>> rings;
};

// Every hole of carpet_net(level) filled with a polar disk whose boundary ring
// has one point per hole-boundary point, matched in cyclic order. The disk is
// circumscribed about the hole, so both boundaries have the same diameter.
// Filling point order: boundary ring, center, then inner rings outward.
CarpetScenario carpet_with_disks(int level);

}  // namespace sewkit
