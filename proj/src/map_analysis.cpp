#include "sewkit/map_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sewkit/error.hpp"
#include "sewkit/parallel.hpp"

namespace sewkit {

PointMap PointMap::identity(const FiniteMetricSpace& space) { return identity_between(space, space); }

PointMap PointMap::identity_between(const FiniteMetricSpace& source, const FiniteMetricSpace& target) {
  if (source.size() != target.size()) throw InvalidInput("identity map needs spaces of equal size");
  PointMap f{source, target, std::vector<std::size_t>(source.size())};
  std::iota(f.image.begin(), f.image.end(), std::size_t{0});
  return f;
}

void PointMap::check() const {
  if (image.size() != source.size()) throw InvalidInput("map image has the wrong length");
  std::vector<char> hit(target.size(), 0);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] >= target.size()) throw InvalidInput("map sends point " + std::to_string(i) + " out of range");
    if (hit[image[i]]) throw InvalidInput("map is not injective at point " + std::to_string(i));
    hit[image[i]] = 1;
  }
}

double DistortionProfile::operator()(double t) const {
  auto it = std::upper_bound(envelope.begin(), envelope.end(), t,
                             [](double v, const DistortionSample& e) { return v < e.t; });
  if (it == envelope.begin()) return 0.0;
  return std::prev(it)->s;
}

DistortionProfile DistortionProfile::from_samples(std::vector<DistortionSample> samples) {
  DistortionProfile p;
  std::vector<DistortionSample> sorted = samples;
  std::sort(sorted.begin(), sorted.end(),
            [](const DistortionSample& a, const DistortionSample& b) { return a.t < b.t || (a.t == b.t && a.s < b.s); });
  double running = -std::numeric_limits<double>::infinity();
  for (const auto& smp : sorted) {
    running = std::max(running, smp.s);
    if (!p.envelope.empty() && p.envelope.back().t == smp.t)
      p.envelope.back().s = running;
    else
      p.envelope.push_back({smp.t, running});
  }
  p.samples = std::move(samples);
  p.population = p.samples.size();
  return p;
}

namespace {

std::uint64_t falling(std::uint64_t n, int r) {
  std::uint64_t v = 1;
  for (int i = 0; i < r; ++i) v *= (n > static_cast<std::uint64_t>(i)) ? n - i : 0;
  return v;
}

template <int R>
bool distinct(const std::array<std::size_t, R>& t) {
  for (int i = 0; i < R; ++i)
    for (int j = i + 1; j < R; ++j)
      if (t[i] == t[j]) return false;
  return true;
}

// Enumerates ordered R-tuples of distinct points. When the full population
// exceeds the cap, walks the n^R index space with a fixed stride instead.
template <int R, class Body>
DistortionProfile enumerate(std::size_t n, EnumerationCap cap, Body body) {
  const std::uint64_t population = falling(n, R);
  std::vector<std::vector<DistortionSample>> parts;
  bool exhaustive = population <= cap.max_tuples;
  if (exhaustive) {
    parts.resize(n);
    parallel_for(0, n, [&](std::size_t x) {
      std::array<std::size_t, R> t{};
      t[0] = x;
      auto& out = parts[x];
      auto rec = [&](auto&& self, int depth) -> void {
        if (depth == R) {
          if (distinct<R>(t)) out.push_back(body(t));
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          t[depth] = v;
          self(self, depth + 1);
        }
      };
      rec(rec, 1);
    });
  } else {
    std::uint64_t space = 1;
    for (int i = 0; i < R; ++i) space *= n;
    const std::uint64_t stride = (space + cap.max_tuples - 1) / std::max<std::uint64_t>(cap.max_tuples, 1);
    const std::uint64_t phase = cap.seed % stride;
    const std::uint64_t picks = space > phase ? (space - phase + stride - 1) / stride : 0;
    constexpr std::uint64_t kBlock = 1 << 16;
    const std::size_t blocks = static_cast<std::size_t>((picks + kBlock - 1) / kBlock);
    parts.resize(blocks);
    parallel_for(0, blocks, [&](std::size_t blk) {
      const std::uint64_t lo = blk * kBlock, hi = std::min(picks, lo + kBlock);
      for (std::uint64_t p = lo; p < hi; ++p) {
        std::uint64_t k = phase + p * stride;
        std::array<std::size_t, R> t{};
        for (int i = R - 1; i >= 0; --i) {
          t[i] = static_cast<std::size_t>(k % n);
          k /= n;
        }
        if (distinct<R>(t)) parts[blk].push_back(body(t));
      }
    });
  }
  std::vector<DistortionSample> all;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  all.reserve(total);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  DistortionProfile profile = DistortionProfile::from_samples(std::move(all));
  profile.population = population;
  profile.exhaustive = exhaustive;
  return profile;
}

}  // namespace

DistortionProfile qs_distortion(const PointMap& f, EnumerationCap cap) {
  f.check();
  if (f.source.size() < 3) throw InvalidInput("quasisymmetry profile needs at least 3 points");
  const auto& X = f.source;
  const auto& Y = f.target;
  const auto& h = f.image;
  return enumerate<3>(X.size(), cap, [&](const std::array<std::size_t, 3>& t) {
    const auto [x, a, b] = t;
    return DistortionSample{X(x, a) / X(x, b), Y(h[x], h[a]) / Y(h[x], h[b])};
  });
}

double cross_ratio(const FiniteMetricSpace& space, std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4) {
  const std::size_t n = space.size();
  if (x1 >= n || x2 >= n || x3 >= n || x4 >= n) throw InvalidInput("cross-ratio index out of range");
  if (!distinct<4>({x1, x2, x3, x4})) throw InvalidInput("cross-ratio needs four distinct points");
  return space(x1, x2) * space(x3, x4) / (space(x1, x3) * space(x2, x4));
}

DistortionProfile qm_distortion(const PointMap& f, EnumerationCap cap) {
  f.check();
  if (f.source.size() < 4) throw InvalidInput("quasi-Mobius profile needs at least 4 points");
  const auto& X = f.source;
  const auto& Y = f.target;
  const auto& h = f.image;
  return enumerate<4>(X.size(), cap, [&](const std::array<std::size_t, 4>& t) {
    const auto [a, b, c, d] = t;
    return DistortionSample{X(a, b) * X(c, d) / (X(a, c) * X(b, d)),
                            Y(h[a], h[b]) * Y(h[c], h[d]) / (Y(h[a], h[c]) * Y(h[b], h[d]))};
  });
}

Eta power_law_eta(double C, double alpha) {
  if (!(C > 0.0) || !(alpha > 0.0) || alpha > 1.0) throw InvalidInput("power-law eta needs C > 0, 0 < alpha <= 1");
  return [C, alpha](double t) { return C * std::max(std::pow(t, alpha), std::pow(t, 1.0 / alpha)); };
}

Eta monomial_eta(double C, double alpha) {
  if (!(C > 0.0) || !(alpha > 0.0)) throw InvalidInput("monomial eta needs C > 0, alpha > 0");
  return [C, alpha](double t) { return C * std::pow(t, alpha); };
}

Eta tabulated_eta(DistortionProfile profile) {
  if (profile.envelope.empty()) throw InvalidInput("tabulated eta needs at least one sample");
  return [p = std::move(profile)](double t) { return p(t); };
}

DiamDistortionReport diam_distortion_check(const PointMap& f, const Eta& eta, const Subset& a, const Subset& b) {
  f.check();
  if (a.size() < 2 || b.size() < 2) throw InvalidInput("diameter check needs sets with at least 2 points");
  if (!a.is_subset_of(b)) throw InvalidInput("diameter check needs A contained in B");
  DiamDistortionReport r;
  r.diam_a = diam(f.source, a);
  r.diam_b = diam(f.source, b);
  std::vector<std::size_t> fa, fb;
  for (std::size_t i : a) fa.push_back(f.image[i]);
  for (std::size_t i : b) fb.push_back(f.image[i]);
  r.diam_fa = diam(f.target, Subset(fa));
  r.diam_fb = diam(f.target, Subset(fb));
  if (!(r.diam_a > 0.0) || !(r.diam_fb > 0.0)) throw InvalidInput("degenerate diameters");
  r.lower = 1.0 / (2.0 * eta(r.diam_b / r.diam_a));
  r.ratio = r.diam_fa / r.diam_fb;
  r.upper = eta(2.0 * r.diam_a / r.diam_b);
  r.pass = r.lower <= r.ratio * (1.0 + kRelTol) && r.ratio <= r.upper * (1.0 + kRelTol);
  return r;
}

SeparatedTriple separated_triple(const PointMap& f) {
  f.check();
  const std::size_t n = f.source.size();
  if (n < 3) throw InvalidInput("separated triple needs at least 3 points");
  const auto& X = f.source;
  const auto& Y = f.target;
  const auto& h = f.image;
  const double dx = diam(X);
  std::vector<std::size_t> img(h.begin(), h.end());
  const double dy = diam(Y, Subset(img));

  struct Best {
    double score = -1;
    std::array<std::size_t, 3> t{};
  };
  std::vector<Best> best(n);
  parallel_for(0, n, [&](std::size_t i) {
    Best& b = best[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sij = std::min(X(i, j) / dx, Y(h[i], h[j]) / dy);
      if (sij <= b.score) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        const double sx = std::min({X(i, j), X(i, k), X(j, k)}) / dx;
        const double sy = std::min({Y(h[i], h[j]), Y(h[i], h[k]), Y(h[j], h[k])}) / dy;
        const double score = std::min(sx, sy);
        if (score > b.score) b = {score, {i, j, k}};
      }
    }
  });
  Best top;
  for (const auto& b : best)
    if (b.score > top.score) top = b;
  const auto [i, j, k] = top.t;
  SeparatedTriple out;
  out.triple = top.t;
  out.lambda_source = dx / std::min({X(i, j), X(i, k), X(j, k)});
  out.lambda_target = dy / std::min({Y(h[i], h[j]), Y(h[i], h[k]), Y(h[j], h[k])});
  return out;
}

}  // namespace sewkit
