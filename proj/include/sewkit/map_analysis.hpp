#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "sewkit/metric_space.hpp"

namespace sewkit {

// A map between finite metric spaces given by point indices.
struct PointMap {
  FiniteMetricSpace source;
  FiniteMetricSpace target;
  std::vector<std::size_t> image;

  static PointMap identity(const FiniteMetricSpace& space);
  static PointMap identity_between(const FiniteMetricSpace& source, const FiniteMetricSpace& target);

  // Throws InvalidInput if the image is out of range or not injective.
  void check() const;
  [[nodiscard]] bool bijective() const { return image.size() == target.size(); }
};

struct DistortionSample {
  double t;
  double s;
};

// Samples (t, s) and the upper envelope s*(t) = max{s : (t', s) sampled, t' <= t}.
struct DistortionProfile {
  std::vector<DistortionSample> samples;
  std::vector<DistortionSample> envelope;  // strictly increasing t, non-decreasing s
  std::uint64_t population = 0;            // tuples in the full enumeration
  bool exhaustive = true;

  // s*(t); 0 below the smallest sampled t.
  [[nodiscard]] double operator()(double t) const;
  // Largest sampled s.
  [[nodiscard]] double max_s() const { return envelope.empty() ? 0.0 : envelope.back().s; }

  static DistortionProfile from_samples(std::vector<DistortionSample> samples);
};

// Deterministic stride subsampling shared by the triple and quadruple scans.
struct EnumerationCap {
  std::uint64_t max_tuples;
  std::uint64_t seed = 0;  // selects the stride phase only
};

inline constexpr std::uint64_t kDefaultTripleCap = 120ull * 119 * 118;
inline constexpr std::uint64_t kDefaultQuadrupleCap = 5'000'000;

// All ordered triples (x, a, b), x not in {a, b}, a != b:
// t = d(x,a)/d(x,b), s = d(fx,fa)/d(fx,fb).
DistortionProfile qs_distortion(const PointMap& f, EnumerationCap cap = {kDefaultTripleCap});

// [x1:x2:x3:x4] = d(x1,x2) d(x3,x4) / (d(x1,x3) d(x2,x4)).
double cross_ratio(const FiniteMetricSpace& space, std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4);

// All ordered quadruples of distinct points: t = source cross-ratio, s = image cross-ratio.
DistortionProfile qm_distortion(const PointMap& f, EnumerationCap cap = {kDefaultQuadrupleCap});

// Distortion function for the diameter check.
using Eta = std::function<double(double)>;

// eta(t) = C * max(t^alpha, t^(1/alpha)), 0 < alpha <= 1.
Eta power_law_eta(double C, double alpha);
// eta(t) = C * t^alpha.
Eta monomial_eta(double C, double alpha);
// eta(t) = envelope of the profile, extended by its last value.
Eta tabulated_eta(DistortionProfile profile);

struct DiamDistortionReport {
  double diam_a = 0, diam_b = 0, diam_fa = 0, diam_fb = 0;
  double lower = 0;  // 1 / (2 eta(diam B / diam A))
  double ratio = 0;  // diam f(A) / diam f(B)
  double upper = 0;  // eta(2 diam A / diam B)
  bool pass = false;
};

// Requires A subset of B, both with at least 2 points, positive diameters.
DiamDistortionReport diam_distortion_check(const PointMap& f, const Eta& eta, const Subset& a, const Subset& b);

struct SeparatedTriple {
  std::array<std::size_t, 3> triple{};
  double lambda_source = 0;  // diam / min pairwise distance of the triple
  double lambda_target = 0;
};

// The triple maximizing min(sep_source / diam_source, sep_target / diam_target).
SeparatedTriple separated_triple(const PointMap& f);

}  // namespace sewkit
