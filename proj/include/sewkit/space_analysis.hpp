#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sewkit/metric_space.hpp"

namespace sewkit {

struct SewnSpace;

inline constexpr std::size_t kDefaultMaxCenters = 4096;

struct Witness {
  std::string role;
  std::vector<std::size_t> points;
  double radius = 0;
  double value = 0;
};

// Generic report used for emission; every estimator below can be converted.
struct PropertyReport {
  std::string name;
  std::vector<std::pair<std::string, double>> constants;
  double r_min = 0;
  double r_max = 0;
  std::vector<Witness> witnesses;
  std::optional<bool> pass;

  [[nodiscard]] std::optional<double> constant(const std::string& key) const;
};

// r = hi, hi/2, hi/4, ... while r >= lo.
std::vector<double> dyadic_radii(double hi, double lo);

// ---------------------------------------------------------------------------
// Bounded turning and LLC
// ---------------------------------------------------------------------------

// For a center x, J[p] is the least radius D such that p and x are joined by
// an eps-path inside the closed ball B(x, D).
std::vector<double> join_radii(const FiniteMetricSpace& space, std::size_t x, double eps);

struct BoundedTurning {
  double lambda = 1;
  double epsilon = 0;
  std::size_t x = 0, y = 0;  // extremal pair
  std::size_t pairs = 0;     // pairs with d > eps
  double diam = 0;
};

// lambda = max over pairs with d(x, y) > eps of min(J_x(y), J_y(x)) / d(x, y).
// Throws DisconnectedError when the eps-graph is disconnected.
BoundedTurning bounded_turning(const FiniteMetricSpace& space, double eps);

struct LLCResult {
  double lambda = 1;         // least grid value 1 + k/4 passing everywhere
  double raw = 1;            // max over samples of the required constant
  double llc1 = 1, llc2 = 1;  // largest requirement of each half
  double epsilon = 0;
  std::size_t x = 0;          // extremal sample
  double radius = 0;
  std::size_t samples = 0;
  double r_min = 0, r_max = 0;
};

// Centers: the first max_centers points. Radii: dyadic in [4 eps, diam].
// LLC1 at (x, r): points of B(x, r) join inside B(x, lambda r).
// LLC2 at (x, r): points outside B(x, r) join outside B(x, r / lambda).
LLCResult llc_check(const FiniteMetricSpace& space, double eps, std::size_t max_centers = kDefaultMaxCenters);

// ---------------------------------------------------------------------------
// Size properties
// ---------------------------------------------------------------------------

struct DoublingResult {
  std::size_t N = 1;
  std::size_t x = 0;
  double radius = 0;
  double r_min = 0, r_max = 0;
};

// Max over centers and dyadic r >= 4 mesh of the greedy (r/2)-net size of B(x, r).
DoublingResult doubling_constant(const FiniteMetricSpace& space, std::size_t max_centers = kDefaultMaxCenters);

struct RelativeDoublingResult {
  std::size_t N = 0;
  std::size_t x = 0;
  double radius = 0;
  double r_min = 0, r_max = 0;
};

// Max over (x, r) of the number of components K meeting B(x, r) with
// diam(K n B(x, r)) >= eps_frac * r.
RelativeDoublingResult relative_doubling(const FiniteMetricSpace& space, const std::vector<Subset>& comps,
                                         double eps_frac, std::size_t max_centers = kDefaultMaxCenters);

struct PorosityResult {
  double p = 0;
  std::size_t y = 0;
  double radius = 0;
  std::size_t hole_center = 0;  // best z at the extremal (y, r)
  double r_min = 0, r_max = 0;
};

// p = min over y in Y and dyadic r in [4 mesh, diam] of
// max over z of min(d(z, Y), r - d(y, z)) / r.
PorosityResult porosity(const FiniteMetricSpace& space, const Subset& Y, std::size_t max_centers = kDefaultMaxCenters);

struct RelativePorosityResult {
  double p = 0;
  double r0 = 0;
  std::size_t x = 0;
  double radius = 0;
  double r_min = 0, r_max = 0;
};

// For (x, r), the best piece is an eps-component K' of K n B(x, r), for some
// component K, that meets B(x, r/2); its size is diam(K') / r. r0 is the top of
// the run of dyadic radii, starting at the smallest, on which every center has
// such a piece; p is the least best-piece size over radii <= r0.
RelativePorosityResult relative_porosity(const FiniteMetricSpace& space, const std::vector<Subset>& comps,
                                         double eps, std::size_t max_centers = kDefaultMaxCenters);

struct AhlforsFit {
  double Q = 0;
  double intercept = 0;  // log N ~ intercept + Q log r
  double C_low = 0;      // min of N(x, r) / (e^intercept r^Q)
  double C_high = 0;
  double net_scale = 0;  // fixed resolution of the counting nets
  std::vector<double> log_r;
  std::vector<double> log_median;
  double r_min = 0, r_max = 0;
};

// Counting-measure proxy: N(x, r) is the size of a greedy net at the fixed
// scale r_min / 8 inside B(x, r), for radii 2^(i/8) r_min spanning
// [2 mesh, diam / 4]. Q is the least-squares slope of log(median_x N) against
// log r. Throws InvalidInput for fewer than 32 points or a scale range below
// two octaves.
AhlforsFit ahlfors_dimension(const FiniteMetricSpace& space, std::size_t max_centers = kDefaultMaxCenters);

// ---------------------------------------------------------------------------
// Angles and perfectness
// ---------------------------------------------------------------------------

struct AngleResult {
  double c = 1;
  std::size_t a = 0, b = 0;
};

// min over a in A, b in B, a != b, of d(a, b) / min_{y in A n B} (d(a, y) + d(y, b)).
AngleResult angle(const FiniteMetricSpace& space, const Subset& A, const Subset& B);

struct PerfectnessResult {
  double lambda = 1;  // +inf when some annulus is empty at every ratio
  std::size_t x = 0;
  double radius = 0;
  double r_min = 0, r_max = 0;
};

// Least lambda such that B(x, r) \ B(x, r / lambda) meets S for every x in S
// and dyadic r in [2 mesh, diam S] with S not inside B(x, r).
PerfectnessResult uniform_perfectness(const FiniteMetricSpace& space, const Subset& S);

// ---------------------------------------------------------------------------
// Composite certificate for sewn spaces
// ---------------------------------------------------------------------------

struct CertifyOptions {
  std::optional<double> epsilon;   // default 3 mesh of the sewn space
  double slack = 2.0;              // allowed factor over the implied bounds
  double rel_doubling_frac = 0.5;
  std::size_t max_centers = kDefaultMaxCenters;
  bool ahlfors = true;
};

struct SewnCertificate {
  double epsilon = 0;
  double c_flat = 0, Delta = 0, L = 0;
  BoundedTurning bt;
  double bt_pieces = 1;
  double bt_bound = 0;  // bt_pieces / c_flat
  LLCResult llc;
  double llc_pieces = 1;
  double llc_bound = 0;  // max{2(1 + 2 Delta lambda)/c, 4 lambda Delta}
  DoublingResult doubling;
  PorosityResult base_porosity;
  RelativeDoublingResult rel_doubling;
  RelativePorosityResult rel_porosity;
  std::optional<AhlforsFit> ahlfors;
  std::vector<PropertyReport> checks;
  bool pass = false;
};

SewnCertificate certify_sewn(const SewnSpace& sewn, const CertifyOptions& options = {});

// Conversions for report emission.
PropertyReport to_report(const BoundedTurning& r);
PropertyReport to_report(const LLCResult& r);
PropertyReport to_report(const DoublingResult& r);
PropertyReport to_report(const RelativeDoublingResult& r);
PropertyReport to_report(const PorosityResult& r);
PropertyReport to_report(const RelativePorosityResult& r);
PropertyReport to_report(const AhlforsFit& r);
PropertyReport to_report(const AngleResult& r);
PropertyReport to_report(const PerfectnessResult& r);

}  // namespace sewkit
