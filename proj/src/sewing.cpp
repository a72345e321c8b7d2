#include "sewkit/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sewkit/error.hpp"
#include "sewkit/parallel.hpp"

namespace sewkit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GluedPoints glue_points(const ScenarioBundle& bundle) {
  GluedPoints g;
  g.base_size = bundle.base.size();
  for (std::size_t i = 0; i < g.base_size; ++i) g.provenance.push_back({Origin::kBase, i});
  for (std::size_t k = 0; k < bundle.components.size(); ++k) {
    const auto& c = bundle.components[k];
    std::vector<std::size_t> map(c.filling.size(), Origin::kBase);
    for (std::size_t t = 0; t < c.filling_cycle.size(); ++t) map[c.filling_cycle[t]] = c.base_cycle[t];
    std::vector<std::size_t> interior;
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (map[j] != Origin::kBase) continue;
      map[j] = g.provenance.size();
      interior.push_back(map[j]);
      g.provenance.push_back({k, j});
    }
    g.filling_to_sewn.push_back(std::move(map));
    g.interiors.emplace_back(std::move(interior));
    g.seams.push_back(c.boundary());
  }
  return g;
}

ScenarioBundle normalize_gluing(const ScenarioBundle& bundle) {
  check_bundle(bundle);
  ScenarioBundle out = bundle;
  for (std::size_t k = 0; k < out.components.size(); ++k) {
    auto& c = out.components[k];
    const double dk = diam(out.base, c.boundary());
    const double dpsi = diam(c.filling, c.boundary_image());
    if (!(dk > 0.0) || !(dpsi > 0.0))
      throw InvalidInput("component " + std::to_string(k) + " has a boundary of diameter zero");
    const double factor = dk / dpsi;
    // A factor within rounding of 1 means the filling is already normalized.
    if (std::abs(factor - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) continue;
    c.filling = c.filling.scaled(factor);
    c.bilipschitz = bilipschitz_constant(out.base, c.base_cycle, c.filling, c.filling_cycle);
  }
  return out;
}

QuasiAssembly build_quasimetric(const ScenarioBundle& bundle) {
  GluedPoints g = glue_points(bundle);
  const std::size_t n = g.size();
  const std::size_t nb = g.base_size;
  const auto& X = bundle.base;
  DistanceTable q(n);

  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) q(i, j) = X(i, j);

  const std::size_t nc = bundle.components.size();
  for (std::size_t k = 0; k < nc; ++k) {
    const auto& c = bundle.components[k];
    const auto& F = c.filling;
    const auto& I = g.interiors[k].indices();
    const std::size_t m = c.base_cycle.size();
    for (std::size_t a : I)
      for (std::size_t b : I) q(a, b) = F(g.provenance[a].index, g.provenance[b].index);
    // base x to interior y: min over seam points z of d_X(x, z) + d_K(psi z, y)
    parallel_for(0, nb, [&](std::size_t x) {
      for (std::size_t y : I) {
        const std::size_t fy = g.provenance[y].index;
        double best = kInf;
        for (std::size_t t = 0; t < m; ++t) best = std::min(best, X(x, c.base_cycle[t]) + F(c.filling_cycle[t], fy));
        q(x, y) = best;
        q(y, x) = best;
      }
    });
  }

  // Interior points of different fillings: the two-seam minimum, evaluated as
  // min over z2 of (min over z1 of d_K1(x, z1) + d_X(z1, z2)) + d_K2(z2, y).
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = a + 1; b < nc; ++b) {
      const auto& ca = bundle.components[a];
      const auto& cb = bundle.components[b];
      const auto& Ia = g.interiors[a].indices();
      const auto& Ib = g.interiors[b].indices();
      const std::size_t ma = ca.base_cycle.size(), mb = cb.base_cycle.size();
      parallel_for(0, Ia.size(), [&](std::size_t ia) {
        const std::size_t x = Ia[ia];
        const std::size_t fx = g.provenance[x].index;
        std::vector<double> via(mb, kInf);
        for (std::size_t t2 = 0; t2 < mb; ++t2) {
          for (std::size_t t1 = 0; t1 < ma; ++t1)
            via[t2] = std::min(via[t2], ca.filling(fx, ca.filling_cycle[t1]) + X(ca.base_cycle[t1], cb.base_cycle[t2]));
        }
        for (std::size_t y : Ib) {
          const std::size_t fy = g.provenance[y].index;
          double best = kInf;
          for (std::size_t t2 = 0; t2 < mb; ++t2) best = std::min(best, via[t2] + cb.filling(cb.filling_cycle[t2], fy));
          q(x, y) = best;
          q(y, x) = best;
        }
      });
    }
  }
  return {std::move(g), QuasiMetricTable(std::move(q))};
}

SewnSpace sew(const ScenarioBundle& bundle) {
  SewnSpace s;
  s.bundle = normalize_gluing(bundle);
  QuasiAssembly qa = build_quasimetric(s.bundle);
  s.points = std::move(qa.points);
  s.q = std::move(qa.q);
  s.space = chain_metrize(s.q);

  auto& cert = s.certificates;
  cert.L = 1.0;
  for (const auto& c : s.bundle.components) cert.L = std::max(cert.L, c.bilipschitz);

  const std::size_t n = s.space.size();
  const std::size_t nb = s.points.base_size;
  const double floor = (1.0 - kRelTol) / cert.L;
  cert.min_ratio = 1.0;
  cert.base_lower = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = s.space(i, j) / s.q(i, j);
      if (r < floor || r > 1.0 + kRelTol) throw ComparabilityError(i, j, r);
      cert.min_ratio = std::min(cert.min_ratio, r);
      if (j < nb) cert.base_lower = std::min(cert.base_lower, r);
    }
  }

  cert.Delta = 1.0;
  for (std::size_t k = 0; k < s.component_count(); ++k)
    cert.Delta = std::max(cert.Delta, diam(s.space, s.piece(k)) / diam(s.space, s.points.seams[k]));

  cert.c_flat = s.component_count() > 0 ? verify_flatness(s).c_flat : 1.0;
  return s;
}

FlatnessReport verify_flatness(const SewnSpace& sewn) {
  const std::size_t nc = sewn.component_count();
  if (nc == 0) throw InvalidInput("flatness needs at least one gluing component");
  const auto& d = sewn.space;
  const std::size_t nb = sewn.base_size();
  FlatnessReport rep;

  struct Min {
    double v = kInf;
    std::size_t a = 0, b = 0;
  };
  auto merge = [](std::vector<Min>& parts) {
    Min best;
    for (const auto& p : parts)
      if (p.v < best.v) best = p;
    return best;
  };

  // d(z, y) >= c * inf_{x in K} d(z, x) + d(x, y)
  std::vector<std::pair<std::size_t, std::size_t>> interior;  // (point, component)
  for (std::size_t k = 0; k < nc; ++k)
    for (std::size_t z : sewn.points.interiors[k]) interior.emplace_back(z, k);
  std::vector<Min> part(interior.size());
  parallel_for(0, interior.size(), [&](std::size_t idx) {
    const auto [z, k] = interior[idx];
    const auto& seam = sewn.points.seams[k].indices();
    for (std::size_t y = 0; y < nb; ++y) {
      double inf = kInf;
      for (std::size_t x : seam) inf = std::min(inf, d(z, x) + d(x, y));
      const double r = d(z, y) / inf;
      if (r < part[idx].v) part[idx] = {r, z, y};
    }
  });
  Min base = merge(part);
  if (!interior.empty()) {
    rep.c_base = std::min(1.0, base.v);
    rep.base_z = base.a;
    rep.base_y = base.b;
  }

  // d(z, z') >= c * inf_{x in K, x' in K'} d(z, x) + d(x, x') + d(x', z')
  std::fill(part.begin(), part.end(), Min{});
  parallel_for(0, interior.size(), [&](std::size_t idx) {
    const auto [z, k] = interior[idx];
    const auto& seam = sewn.points.seams[k].indices();
    for (std::size_t k2 = k + 1; k2 < nc; ++k2) {
      const auto& seam2 = sewn.points.seams[k2].indices();
      std::vector<double> via(seam2.size(), kInf);
      for (std::size_t t2 = 0; t2 < seam2.size(); ++t2)
        for (std::size_t x : seam) via[t2] = std::min(via[t2], d(z, x) + d(x, seam2[t2]));
      for (std::size_t z2 : sewn.points.interiors[k2]) {
        double inf = kInf;
        for (std::size_t t2 = 0; t2 < seam2.size(); ++t2) inf = std::min(inf, via[t2] + d(seam2[t2], z2));
        const double r = d(z, z2) / inf;
        if (r < part[idx].v) part[idx] = {r, z, z2};
      }
    }
  });
  Min pair = merge(part);
  if (pair.v < kInf) {
    rep.c_pair = std::min(1.0, pair.v);
    rep.pair_z = pair.a;
    rep.pair_z2 = pair.b;
  }
  rep.c_flat = std::min(rep.c_base, rep.c_pair);
  if (!(rep.c_flat > 0.0)) throw Error("flatness constant vanished on a sewn space");
  return rep;
}

SeparationReport check_interior_separation(const SewnSpace& sewn, double c) {
  SeparationReport rep;
  const auto& d = sewn.space;
  const std::size_t nb = sewn.base_size();
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < sewn.component_count(); ++k) {
    const auto& own = sewn.points.interiors[k];
    for (std::size_t z : own) {
      ++rep.checked;
      double delta = kInf;
      for (std::size_t y = 0; y < nb; ++y) delta = std::min(delta, d(z, y));
      const double radius = c * delta;
      for (std::size_t p = 0; p < n; ++p)
        if (p != z && d(z, p) < radius && !own.contains(p)) rep.violations.emplace_back(z, p);
    }
  }
  return rep;
}

CensusReport component_census(const SewnSpace& sewn, double eps) {
  CensusReport rep;
  rep.epsilon = eps;
  const std::size_t n = sewn.space.size();
  const std::size_t nb = sewn.base_size();
  std::vector<std::size_t> rest;
  for (std::size_t i = nb; i < n; ++i) rest.push_back(i);
  const auto comps = components(epsilon_graph(sewn.space, eps), Subset(rest));

  std::set<std::size_t> seen;
  bool ok = true;
  for (const auto& c : comps) {
    CensusEntry e{c, sewn.points.provenance[c[0]].component};
    for (std::size_t p : c)
      if (sewn.points.provenance[p].component != *e.component) e.component.reset();
    if (!e.component || !seen.insert(*e.component).second) ok = false;
    rep.entries.push_back(std::move(e));
  }
  std::size_t filled = 0;
  for (const auto& in : sewn.points.interiors) filled += in.empty() ? 0 : 1;
  rep.bijective = ok && seen.size() == filled;
  return rep;
}

NearestSeamReport nearest_seam_check(const SewnSpace& sewn) {
  NearestSeamReport rep;
  const auto& d = sewn.space;
  const std::size_t nb = sewn.base_size();
  for (std::size_t k = 0; k < sewn.component_count(); ++k) {
    const auto& seam = sewn.points.seams[k];
    for (std::size_t z : sewn.points.interiors[k]) {
      ++rep.checked;
      std::size_t arg = 0;
      for (std::size_t y = 1; y < nb; ++y)
        if (d(z, y) < d(z, arg)) arg = y;
      double on_seam = kInf;
      for (std::size_t x : seam) on_seam = std::min(on_seam, d(z, x));
      if (on_seam > d(z, arg) * (1.0 + kRelTol)) rep.violations.push_back({z, arg, d(z, arg), on_seam});
    }
  }
  return rep;
}

ContractReport verify_ba_contract(const FiniteMetricSpace& filling, const FiniteMetricSpace& seam,
                                  const std::vector<std::size_t>& psi, const FiniteMetricSpace& dhat,
                                  const std::optional<Eta>& eta) {
  if (dhat.size() != filling.size()) throw InvalidInput("candidate metric lives on a different point set");
  if (psi.size() != seam.size()) throw InvalidInput("seam map has the wrong length");
  PointMap{seam, filling, psi}.check();

  ContractReport rep;
  rep.profile = qs_distortion(PointMap::identity_between(filling, dhat));
  if (eta) {
    rep.eta_checked = true;
    for (const auto& smp : rep.profile.samples)
      if (smp.s > (*eta)(smp.t) * (1.0 + kRelTol)) {
        rep.eta_ok = false;
        break;
      }
  }

  std::vector<char> on_image(filling.size(), 0);
  for (std::size_t p : psi) on_image[p] = 1;
  double worst = 1.0;
  std::size_t samples = 0;
  for (std::size_t x = 0; x < filling.size(); ++x) {
    if (on_image[x]) continue;
    double r = kInf, rhat = kInf;
    for (std::size_t p : psi) {
      r = std::min(r, filling(x, p));
      rhat = std::min(rhat, dhat(x, p));
    }
    const Subset near = ball(filling, x, r / 2.0);
    for (std::size_t a = 0; a < near.size(); ++a) {
      for (std::size_t b = a + 1; b < near.size(); ++b) {
        const std::size_t y = near[a], z = near[b];
        const double ratio = dhat(y, z) / filling(y, z) * (r / rhat);
        worst = std::max({worst, ratio, 1.0 / ratio});
        ++samples;
      }
    }
  }
  rep.quasisimilarity = worst;
  rep.quasisimilarity_samples = samples;

  rep.lip_lower = kInf;
  rep.lip_upper = 0.0;
  for (std::size_t a = 0; a < psi.size(); ++a) {
    for (std::size_t b = a + 1; b < psi.size(); ++b) {
      const double r = dhat(psi[a], psi[b]) / seam(a, b);
      rep.lip_lower = std::min(rep.lip_lower, r);
      rep.lip_upper = std::max(rep.lip_upper, r);
    }
  }
  if (psi.size() < 2) rep.lip_lower = rep.lip_upper = 1.0;
  rep.bilipschitz = std::max({1.0, rep.lip_upper, 1.0 / rep.lip_lower});

  const double d0 = diam(filling), d1 = diam(dhat);
  rep.Delta = std::max(d1 / d0, d0 / d1);
  return rep;
}

}  // namespace sewkit
