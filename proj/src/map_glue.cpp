#include "sewkit/map_glue.hpp"

#include <algorithm>
#include <cmath>

#include "sewkit/error.hpp"
#include "sewkit/space_analysis.hpp"

namespace sewkit {

namespace {

void check_injective(const std::vector<std::size_t>& map, std::size_t range, const std::string& what) {
  std::vector<char> hit(range, 0);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] >= range) throw InvalidInput(what + " sends " + std::to_string(i) + " out of range");
    if (hit[map[i]]) throw InvalidInput(what + " is not injective at " + std::to_string(i));
    hit[map[i]] = 1;
  }
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& map) {
  std::vector<std::size_t> inv(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) inv[map[i]] = i;
  return inv;
}

}  // namespace

GluedMap glue_maps(std::shared_ptr<const SewnSpace> source, std::shared_ptr<const SewnSpace> target, MapSpec p) {
  if (!source || !target) throw InvalidInput("glue_maps needs both sewn spaces");
  const SewnSpace& S = *source;
  const SewnSpace& T = *target;
  const std::size_t nc = S.component_count();
  if (T.component_count() != nc) throw InvalidInput("component counts differ");
  if (p.base_map.size() != S.base_size()) throw InvalidInput("base map has the wrong length");
  check_injective(p.base_map, T.base_size(), "base map");
  if (p.permutation.size() != nc) throw InvalidInput("component permutation has the wrong length");
  check_injective(p.permutation, nc, "component permutation");
  if (p.filling_maps.size() != nc) throw InvalidInput("expected one filling map per component");

  for (std::size_t k = 0; k < nc; ++k) {
    const std::size_t k2 = p.permutation[k];
    const auto& src = S.bundle.components[k];
    const auto& dst = T.bundle.components[k2];
    const auto& hk = p.filling_maps[k];
    if (hk.size() != src.filling.size())
      throw InvalidInput("filling map " + std::to_string(k) + " has the wrong length");
    check_injective(hk, dst.filling.size(), "filling map " + std::to_string(k));

    std::vector<std::size_t> moved;
    for (std::size_t z : S.points.seams[k]) moved.push_back(p.base_map[z]);
    if (Subset(moved) != T.points.seams[k2])
      throw InvalidInput("base map does not carry boundary component " + std::to_string(k) + " onto component " +
                         std::to_string(k2));

    std::vector<std::size_t> psi_inv(dst.filling.size(), Origin::kBase);
    for (std::size_t t = 0; t < dst.filling_cycle.size(); ++t) psi_inv[dst.filling_cycle[t]] = dst.base_cycle[t];
    for (std::size_t t = 0; t < src.base_cycle.size(); ++t) {
      const std::size_t z = src.base_cycle[t];
      const std::size_t back = psi_inv[hk[src.filling_cycle[t]]];
      if (back == Origin::kBase) throw CompatibilityError(k, z, "filling map leaves the boundary image");
      if (back != p.base_map[z])
        throw CompatibilityError(k, z,
                                 "h_X(z) = " + std::to_string(p.base_map[z]) + " but the filling map gives " +
                                     std::to_string(back));
    }
  }

  GluedMap g{std::move(source), std::move(target), std::move(p), {}};
  const SewnSpace& Sg = *g.source;
  const SewnSpace& Tg = *g.target;
  std::vector<std::size_t> image(Sg.space.size());
  for (std::size_t i = 0; i < Sg.base_size(); ++i) image[i] = g.pieces.base_map[i];
  for (std::size_t i = Sg.base_size(); i < image.size(); ++i) {
    const Origin o = Sg.points.provenance[i];
    const std::size_t k2 = g.pieces.permutation[o.component];
    const std::size_t j2 = g.pieces.filling_maps[o.component][o.index];
    image[i] = Tg.points.filling_to_sewn[k2][j2];
    if (image[i] < Tg.base_size())
      throw InvalidInput("filling map " + std::to_string(o.component) + " sends an interior point to the seam");
  }
  if (image.size() != Tg.space.size()) throw InvalidInput("assembled map is not a bijection: sizes differ");
  check_injective(image, Tg.space.size(), "assembled map");
  g.assembled = PointMap{Sg.space, Tg.space, std::move(image)};
  return g;
}

GluedMap compose(const GluedMap& outer, const GluedMap& inner) {
  if (inner.target != outer.source) throw InvalidInput("maps are not composable");
  MapSpec p;
  const auto& a = outer.pieces;
  const auto& b = inner.pieces;
  for (std::size_t z : b.base_map) p.base_map.push_back(a.base_map[z]);
  for (std::size_t k = 0; k < b.permutation.size(); ++k) {
    const std::size_t mid = b.permutation[k];
    p.permutation.push_back(a.permutation[mid]);
    std::vector<std::size_t> hk;
    for (std::size_t j : b.filling_maps[k]) hk.push_back(a.filling_maps[mid][j]);
    p.filling_maps.push_back(std::move(hk));
  }
  return glue_maps(inner.source, outer.target, std::move(p));
}

GluedMap inverse(const GluedMap& g) {
  if (!g.assembled.bijective()) throw InvalidInput("only bijective glued maps can be inverted");
  MapSpec p;
  p.base_map = invert(g.pieces.base_map);
  p.permutation = invert(g.pieces.permutation);
  p.filling_maps.resize(p.permutation.size());
  for (std::size_t k = 0; k < g.pieces.permutation.size(); ++k)
    p.filling_maps[g.pieces.permutation[k]] = invert(g.pieces.filling_maps[k]);
  return glue_maps(g.target, g.source, std::move(p));
}

MapSpec carpet_rotation(const CarpetScenario& sc, int quarter_turns) {
  const auto& net = sc.carpet;
  const std::size_t m = net.resolution;
  const int turns = ((quarter_turns % 4) + 4) % 4;
  auto rotate = [&](std::array<std::size_t, 2> p) {
    for (int t = 0; t < turns; ++t) p = {m - p[1], p[0]};
    return p;
  };

  MapSpec spec;
  for (const auto& p : net.grid) {
    const auto r = rotate(p);
    spec.base_map.push_back(net.index_of(r[0], r[1]));
  }

  // A hole is identified by its lower-left corner and side.
  const std::size_t nc = net.hole_cycles.size();
  auto lower_left = [&](std::size_t k) {
    const auto& cyc = net.hole_cycles[k];
    const std::size_t side = cyc.size() / 4;
    auto a = net.grid[cyc.front()];
    auto c = rotate(a);
    auto opp = rotate({a[0] + side, a[1] + side});
    return std::array<std::size_t, 2>{std::min(c[0], opp[0]), std::min(c[1], opp[1])};
  };
  for (std::size_t k = 0; k < nc; ++k) {
    const auto ll = lower_left(k);
    const std::size_t target = net.index_of(ll[0], ll[1]);
    std::size_t found = nc;
    for (std::size_t k2 = 0; k2 < nc; ++k2)
      if (net.hole_cycles[k2].front() == target && net.hole_cycles[k2].size() == net.hole_cycles[k].size())
        found = k2;
    if (found == nc) throw InvalidInput("rotation does not preserve the holes");
    spec.permutation.push_back(found);

    // Each ring turns by a quarter of its point count; the center is fixed.
    const auto& rings = sc.rings[k];
    std::vector<std::size_t> hk;
    auto add_ring = [&](std::size_t offset, std::size_t count) {
      for (std::size_t u = 0; u < count; ++u) hk.push_back(offset + (u + turns * count / 4) % count);
    };
    add_ring(0, rings[0]);
    hk.push_back(rings[0]);
    std::size_t offset = rings[0] + 1;
    for (std::size_t r = 1; r < rings.size(); ++r) {
      add_ring(offset, rings[r]);
      offset += rings[r];
    }
    spec.filling_maps.push_back(std::move(hk));
  }
  return spec;
}

GluedCertificate certify_glued_qm(const GluedMap& g, EnumerationCap cap) {
  const SewnSpace& S = *g.source;
  const SewnSpace& T = *g.target;
  const auto& h = g.assembled.image;
  GluedCertificate c;

  c.isometry = true;
  for (std::size_t i = 0; i < h.size() && c.isometry; ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      if (T.space(h[i], h[j]) != S.space(i, j)) {
        c.isometry = false;
        break;
      }

  c.global = qm_distortion(g.assembled, cap);
  c.exact_identity = true;
  for (const auto& smp : c.global.samples) {
    if (smp.s != smp.t) c.exact_identity = false;
    c.max_deviation = std::max(c.max_deviation, std::abs(smp.s - smp.t) / smp.t);
  }

  auto piece_map = [&](const Subset& from, const Subset& to) {
    PointMap f{restrict_to(S.space, from), restrict_to(T.space, to), {}};
    const auto& ti = to.indices();
    for (std::size_t p : from) {
      auto it = std::lower_bound(ti.begin(), ti.end(), h[p]);
      if (it == ti.end() || *it != h[p]) throw InvalidInput("glued map does not respect the pieces");
      f.image.push_back(static_cast<std::size_t>(it - ti.begin()));
    }
    return f;
  };
  auto add_piece = [&](std::string name, const PointMap& f) {
    PieceProfile pp;
    pp.name = std::move(name);
    if (f.source.size() >= 3) pp.qs_max = qs_distortion(f).max_s();
    if (f.source.size() >= 4) pp.qm = qm_distortion(f, cap);
    c.pieces.push_back(std::move(pp));
  };
  add_piece("base", piece_map(S.base(), T.base()));
  for (std::size_t k = 0; k < S.component_count(); ++k)
    add_piece("filling:" + std::to_string(k), piece_map(S.piece(k), T.piece(g.pieces.permutation[k])));

  for (const auto& e : c.global.envelope) {
    double best = 0.0;
    for (const auto& pp : c.pieces) best = std::max(best, pp.qm(e.t));
    if (best > 0.0) c.domination = std::max(c.domination, e.s / best);
  }

  for (std::size_t k = 0; k < S.component_count(); ++k) {
    c.seam_angle_source = std::min(c.seam_angle_source, angle(S.space, S.base(), S.piece(k)).c);
    const std::size_t k2 = g.pieces.permutation[k];
    c.seam_angle_target = std::min(c.seam_angle_target, angle(T.space, T.base(), T.piece(k2)).c);
    const auto& seam = S.points.seams[k];
    if (seam.size() >= 2) c.seam_perfectness = std::max(c.seam_perfectness, uniform_perfectness(S.space, seam).lambda);
    c.mu = std::min(c.mu, diam(S.space, seam) / diam(S.space, S.piece(k)));
  }
  return c;
}

}  // namespace sewkit
