#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sewkit/metric_space.hpp"

namespace sewkit {

struct SphericalizedSpace {
  FiniteMetricSpace space;              // dhat on the points other than w
  std::size_t basepoint = 0;            // w, as an index of the original space
  std::vector<std::size_t> original;    // new index -> original index
  std::vector<double> delta;            // d(x, w), indexed like `space`
  QuasiMetricTable q;                   // d(x, y) / (delta(x) delta(y))
  double min_ratio = 1;                 // min dhat / q over distinct pairs
};

// q(x, y) = d(x, y) / (d(x, w) d(y, w)) on X \ {w}, metrized by chains.
// Certifies q / 4 <= dhat <= q on every pair; a failure throws Error.
SphericalizedSpace sphericalize(const FiniteMetricSpace& space, std::size_t w);

// Index of an original point in the sphericalized space; throws if it is w.
std::size_t sphericalized_index(const SphericalizedSpace& sph, std::size_t original);

enum class TransferStatus { holds, hypothesis_failed, conclusion_failed };

std::string to_string(TransferStatus s);

struct DiamTransferReport {
  TransferStatus status = TransferStatus::holds;
  std::string hypothesis_failure;  // which hypothesis failed, if any
  double measured_Delta = 0;       // diam L / diam K in the original metric
  double measured_c = 0;           // min over x in L of d(x,w) / inf_{y in K} (d(x,y) + d(y,w))
  double diam_L_hat = 0;
  double diam_K_hat = 0;
  double bound = 0;  // 32 Delta / c^2 * diam_K_hat
  double slack = 0;  // bound / diam_L_hat
};

// K and L are subsets of the original space. The hypotheses K subset L, w not
// in L, diam L <= Delta diam K and the basepoint flatness with constant c are
// verified before the conclusion diam(L, dhat) <= 32 Delta / c^2 diam(K, dhat).
DiamTransferReport check_diam_transfer(const FiniteMetricSpace& space, const SphericalizedSpace& sph, const Subset& K,
                                       const Subset& L, double Delta, double c);

struct AngleTransferReport {
  TransferStatus status = TransferStatus::holds;
  std::string hypothesis_failure;
  double angle_d = 0;     // angle of (A, B) in d
  double angle_hat = 0;   // angle of (A \ w, B \ w) in dhat
  double seam_spread = 0; // max over seam x, a in A u B of d(x, a) / (2 max_{x'} d(x, x'))
  bool seam_spread_ok = false;
};

// Sphericalizes at w, verifies angle_d(A, B) >= c, then measures the angle
// after the transform and requires it to be positive.
AngleTransferReport check_angle_transfer(const FiniteMetricSpace& space, const Subset& A, const Subset& B,
                                         std::size_t w, double c, double Delta);

}  // namespace sewkit
