#include "sewkit/sphericalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sewkit/error.hpp"
#include "sewkit/space_analysis.hpp"

namespace sewkit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SphericalizedSpace sphericalize(const FiniteMetricSpace& space, std::size_t w) {
  const std::size_t n = space.size();
  if (n < 3) throw InvalidInput("sphericalization needs at least 3 points");
  if (w >= n) throw InvalidInput("basepoint out of range");

  SphericalizedSpace s;
  s.basepoint = w;
  for (std::size_t i = 0; i < n; ++i)
    if (i != w) {
      s.original.push_back(i);
      s.delta.push_back(space(i, w));
    }
  const std::size_t m = n - 1;
  DistanceTable q(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      q.set_symmetric(a, b, space(s.original[a], s.original[b]) / (s.delta[a] * s.delta[b]));
  s.q = QuasiMetricTable(std::move(q));
  s.space = chain_metrize(s.q);

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double r = s.space(a, b) / s.q(a, b);
      s.min_ratio = std::min(s.min_ratio, r);
      if (r < 0.25 * (1.0 - kRelTol))
        throw Error("sphericalized metric fell below q/4 at (" + std::to_string(s.original[a]) + ", " +
                    std::to_string(s.original[b]) + ")");
    }
  }
  return s;
}

std::size_t sphericalized_index(const SphericalizedSpace& sph, std::size_t original) {
  if (original == sph.basepoint) throw InvalidInput("the basepoint is not part of the sphericalized space");
  auto it = std::lower_bound(sph.original.begin(), sph.original.end(), original);
  if (it == sph.original.end() || *it != original) throw InvalidInput("point out of range");
  return static_cast<std::size_t>(it - sph.original.begin());
}

std::string to_string(TransferStatus s) {
  switch (s) {
    case TransferStatus::holds:
      return "holds";
    case TransferStatus::hypothesis_failed:
      return "hypothesis_failed";
    case TransferStatus::conclusion_failed:
      return "conclusion_failed";
  }
  return "unknown";
}

namespace {

Subset to_sph(const SphericalizedSpace& sph, const Subset& s) {
  std::vector<std::size_t> out;
  for (std::size_t i : s)
    if (i != sph.basepoint) out.push_back(sphericalized_index(sph, i));
  return Subset(std::move(out));
}

}  // namespace

DiamTransferReport check_diam_transfer(const FiniteMetricSpace& space, const SphericalizedSpace& sph, const Subset& K,
                                       const Subset& L, double Delta, double c) {
  if (K.size() < 2) throw InvalidInput("K needs at least 2 points");
  if (space.size() != sph.original.size() + 1) throw InvalidInput("sphericalized space does not match");
  DiamTransferReport rep;
  const std::size_t w = sph.basepoint;
  auto fail = [&](std::string why) {
    rep.status = TransferStatus::hypothesis_failed;
    rep.hypothesis_failure = std::move(why);
    return rep;
  };

  if (!K.is_subset_of(L)) return fail("K is not contained in L");
  if (L.contains(w)) return fail("the basepoint lies in L");

  rep.measured_Delta = diam(space, L) / diam(space, K);
  rep.measured_c = kInf;
  for (std::size_t x : L) {
    double inf = kInf;
    for (std::size_t y : K) inf = std::min(inf, space(x, y) + space(y, w));
    rep.measured_c = std::min(rep.measured_c, space(x, w) / inf);
  }
  if (rep.measured_Delta > Delta * (1.0 + kRelTol)) return fail("diam L exceeds Delta diam K");
  if (rep.measured_c < c * (1.0 - kRelTol)) return fail("basepoint flatness fails for the given c");

  rep.diam_L_hat = diam(sph.space, to_sph(sph, L));
  rep.diam_K_hat = diam(sph.space, to_sph(sph, K));
  rep.bound = 32.0 * Delta / (c * c) * rep.diam_K_hat;
  rep.slack = rep.bound / rep.diam_L_hat;
  rep.status = rep.diam_L_hat <= rep.bound * (1.0 + kRelTol) ? TransferStatus::holds
                                                             : TransferStatus::conclusion_failed;
  return rep;
}

AngleTransferReport check_angle_transfer(const FiniteMetricSpace& space, const Subset& A, const Subset& B,
                                         std::size_t w, double c, double Delta) {
  const Subset seam = set_intersection(A, B);
  if (seam.empty()) throw InvalidInput("angle transfer needs a nonempty seam");
  AngleTransferReport rep;
  rep.angle_d = angle(space, A, B).c;

  // How far the seam reaches compared to the sets it joins.
  const Subset both = set_union(A, B);
  rep.seam_spread = 0.0;
  for (std::size_t x : seam) {
    if (x == w) continue;
    double reach = 0.0;
    for (std::size_t x2 : seam)
      if (x2 != w) reach = std::max(reach, space(x, x2));
    for (std::size_t a : both) {
      if (a == w) continue;
      const double v = reach > 0.0 ? space(x, a) / (2.0 * reach) : (space(x, a) > 0.0 ? kInf : 0.0);
      rep.seam_spread = std::max(rep.seam_spread, v);
    }
  }
  rep.seam_spread_ok = rep.seam_spread <= Delta * (1.0 + kRelTol);

  if (rep.angle_d < c * (1.0 - kRelTol)) {
    rep.status = TransferStatus::hypothesis_failed;
    rep.hypothesis_failure = "angle in d is below c";
    return rep;
  }

  const SphericalizedSpace sph = sphericalize(space, w);
  const Subset As = to_sph(sph, A), Bs = to_sph(sph, B);
  if (set_intersection(As, Bs).empty()) throw InvalidInput("the seam is exhausted by the basepoint");
  rep.angle_hat = angle(sph.space, As, Bs).c;
  rep.status = rep.angle_hat > 0.0 ? TransferStatus::holds : TransferStatus::conclusion_failed;
  return rep;
}

}  // namespace sewkit
