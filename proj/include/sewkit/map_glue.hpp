#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sewkit/generators.hpp"
#include "sewkit/map_analysis.hpp"
#include "sewkit/sewing.hpp"

namespace sewkit {

// The pieces of a map between sewn spaces.
struct MapSpec {
  std::vector<std::size_t> base_map;                  // h_X, base index -> base index
  std::vector<std::size_t> permutation;               // pi, component -> component
  std::vector<std::vector<std::size_t>> filling_maps;  // h_K, filling k -> filling pi(k)
};

struct GluedMap {
  std::shared_ptr<const SewnSpace> source;
  std::shared_ptr<const SewnSpace> target;
  MapSpec pieces;
  PointMap assembled;  // on the sewn point sets
};

// Checks every piece, the action of h_X on boundary components, and seam
// compatibility h_X(z) = psi_{pi K}^{-1}(h_K(psi_K(z))) at index level, then
// assembles the global map. Throws CompatibilityError with the first failing
// seam point, InvalidInput for any other inconsistency.
GluedMap glue_maps(std::shared_ptr<const SewnSpace> source, std::shared_ptr<const SewnSpace> target, MapSpec pieces);

// outer after inner; inner.target must be outer.source.
GluedMap compose(const GluedMap& outer, const GluedMap& inner);
GluedMap inverse(const GluedMap& g);

// Quarter-turn rotations of a carpet_with_disks scenario about the center of
// the square, as a map spec from the sewn scenario to itself.
MapSpec carpet_rotation(const CarpetScenario& scenario, int quarter_turns);

struct PieceProfile {
  std::string name;
  double qs_max = 0;          // largest quasisymmetry sample
  DistortionProfile qm;
};

struct GluedCertificate {
  DistortionProfile global;   // quasi-Mobius profile of the assembled map
  bool isometry = false;      // d(h x, h y) == d(x, y) for every pair, bit for bit
  bool exact_identity = false;  // every global sample has s == t
  double max_deviation = 0;   // max |s - t| / t over global samples
  std::vector<PieceProfile> pieces;
  double domination = 0;      // max over global envelope points of s / max-piece-envelope(t)
  double seam_angle_source = 1;
  double seam_angle_target = 1;
  double seam_perfectness = 1;  // largest uniform perfectness constant of a seam
  double mu = 1;                // min over k of diam K / diam L_K
};

GluedCertificate certify_glued_qm(const GluedMap& g, EnumerationCap cap = {kDefaultQuadrupleCap});

}  // namespace sewkit
