#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sewkit/generators.hpp"
#include "sewkit/map_analysis.hpp"
#include "sewkit/metric_space.hpp"

namespace sewkit {

// Where a sewn point came from. Base points keep their base index; interior
// filling points carry (component, filling index).
struct Origin {
  static constexpr std::size_t kBase = static_cast<std::size_t>(-1);
  std::size_t component = kBase;
  std::size_t index = 0;

  [[nodiscard]] bool is_base() const noexcept { return component == kBase; }
  friend bool operator==(const Origin&, const Origin&) = default;
};

// The glued point set: base points first (sewn index == base index), then the
// non-seam points of each filling in component order. Seam points appear once,
// under their base index.
struct GluedPoints {
  std::size_t base_size = 0;
  std::vector<Origin> provenance;
  std::vector<std::vector<std::size_t>> filling_to_sewn;  // per component, per filling point
  std::vector<Subset> interiors;                          // sewn indices of interior points
  std::vector<Subset> seams;                              // base indices of each boundary

  [[nodiscard]] std::size_t size() const noexcept { return provenance.size(); }
};

GluedPoints glue_points(const ScenarioBundle& bundle);

// Rescales each filling so that diam psi(K) = diam K, then recomputes L.
// Components whose scale factor is 1 up to rounding are left untouched, so
// normalizing twice changes nothing.
ScenarioBundle normalize_gluing(const ScenarioBundle& bundle);

struct QuasiAssembly {
  GluedPoints points;
  QuasiMetricTable q;
};

// The four-case quasimetric: d_X on base pairs, d_K on interior pairs of one
// filling, and exhaustive minimization over seam points (or seam pairs) for
// mixed pairs.
QuasiAssembly build_quasimetric(const ScenarioBundle& normalized);

struct SewingCertificates {
  double L = 1;            // max bi-Lipschitz constant over components
  double c_flat = 1;       // measured flatness constant
  double Delta = 1;        // max diam(L_K) / diam(K) in the sewn metric
  double min_ratio = 1;    // min d / q over distinct pairs
  double base_lower = 1;   // min d_Sigma / d_X over base pairs
};

struct SewnSpace {
  FiniteMetricSpace space;  // d_Sigma
  GluedPoints points;
  ScenarioBundle bundle;    // normalized
  QuasiMetricTable q;
  SewingCertificates certificates;

  [[nodiscard]] std::size_t base_size() const noexcept { return points.base_size; }
  [[nodiscard]] std::size_t component_count() const noexcept { return points.seams.size(); }
  [[nodiscard]] Subset base() const { return Subset::range(points.base_size); }
  // Seam plus interior of component k, in sewn indices.
  [[nodiscard]] Subset piece(std::size_t k) const { return set_union(points.seams[k], points.interiors[k]); }
};

// Validates and normalizes the bundle, metrizes the quasimetric and certifies
// q >= d >= q / L on every pair. Throws ComparabilityError when the stated L
// does not bound the result, CollapseError from metrization.
SewnSpace sew(const ScenarioBundle& bundle);

struct FlatnessReport {
  double c_flat = 1;
  double c_pair = 1;  // first inequality: interior z of K vs interior z' of K'
  double c_base = 1;  // second inequality: interior z vs base point y
  std::size_t pair_z = 0, pair_z2 = 0;
  std::size_t base_z = 0, base_y = 0;
};

// Exhaustive flatness constant. The infima run over the seam points of the
// components involved, which is where chains leave a filling.
FlatnessReport verify_flatness(const SewnSpace& sewn);

struct SeparationReport {
  std::size_t checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // (z, foreign point)
  [[nodiscard]] bool pass() const noexcept { return violations.empty(); }
};

// For every interior z: the open ball B(z, c * d(z, base)) holds only interior
// points of z's own component.
SeparationReport check_interior_separation(const SewnSpace& sewn, double c);

struct CensusEntry {
  Subset points;
  std::optional<std::size_t> component;  // empty when the graph component mixes fillings
};

struct CensusReport {
  double epsilon = 0;
  std::vector<CensusEntry> entries;
  bool bijective = false;
};

CensusReport component_census(const SewnSpace& sewn, double eps);

struct NearestSeamViolation {
  std::size_t point;
  std::size_t nearest_base;
  double nearest_distance;
  double seam_distance;
};

struct NearestSeamReport {
  std::size_t checked = 0;
  std::vector<NearestSeamViolation> violations;
  [[nodiscard]] bool pass() const noexcept { return violations.empty(); }
};

// For each interior point of K, compares the nearest base point overall with
// the nearest point of K (relative tolerance kRelTol).
NearestSeamReport nearest_seam_check(const SewnSpace& sewn);

struct ContractReport {
  DistortionProfile profile;  // identity (L, d) -> (L, dhat)
  bool eta_checked = false;
  bool eta_ok = true;
  double quasisimilarity = 1;  // C
  std::size_t quasisimilarity_samples = 0;
  double lip_lower = 1;  // min dhat(psi y1, psi y2) / d_Y(y1, y2)
  double lip_upper = 1;  // max of the same ratio
  double bilipschitz = 1;
  double Delta = 1;  // max(diam dhat / diam d, diam d / diam dhat)
};

// Numeric check of the four conclusions expected of a candidate metric dhat
// on a filling: distortion of the identity, local quasisimilarity off psi(Y),
// bi-Lipschitz behaviour of psi into dhat and diameter comparability.
ContractReport verify_ba_contract(const FiniteMetricSpace& filling, const FiniteMetricSpace& seam,
                                  const std::vector<std::size_t>& psi, const FiniteMetricSpace& dhat,
                                  const std::optional<Eta>& eta = std::nullopt);

}  // namespace sewkit
