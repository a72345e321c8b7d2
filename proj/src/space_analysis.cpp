#include "sewkit/space_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sewkit/error.hpp"
#include "sewkit/parallel.hpp"
#include "sewkit/sewing.hpp"

namespace sewkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), members_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) members_[i] = {i};
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  // Merges the classes of a and b; returns the surviving root.
  std::size_t unite(std::size_t ra, std::size_t rb) {
    if (members_[ra].size() < members_[rb].size()) std::swap(ra, rb);
    parent_[rb] = ra;
    auto& big = members_[ra];
    auto& small = members_[rb];
    big.insert(big.end(), small.begin(), small.end());
    small.clear();
    small.shrink_to_fit();
    return ra;
  }
  const std::vector<std::size_t>& members(std::size_t root) const { return members_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> members_;
};

std::vector<std::size_t> by_distance(const FiniteMetricSpace& space, std::size_t x) {
  std::vector<std::size_t> order(space.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = space.row(x);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return row[a] < row[b] || (row[a] == row[b] && a < b);
  });
  return order;
}

void require_connected(const EpsilonGraph& g) {
  const auto comps = components(g);
  if (comps.size() > 1) throw DisconnectedError(comps[0][0], comps[1][0]);
}

std::vector<double> join_radii(const FiniteMetricSpace& space, const EpsilonGraph& g, std::size_t x,
                               const std::vector<std::size_t>& order) {
  const std::size_t n = space.size();
  std::vector<double> J(n, kInf);
  std::vector<char> added(n, 0);
  UnionFind uf(n);
  auto row = space.row(x);
  J[x] = 0.0;
  for (std::size_t v : order) {
    const double rho = row[v];
    added[v] = 1;
    for (std::size_t w : g.adjacency[v]) {
      if (!added[w]) continue;
      std::size_t rv = uf.find(v), rw = uf.find(w);
      if (rv == rw) continue;
      const std::size_t rx = uf.find(x);
      if (rv == rx || rw == rx) {
        const std::size_t other = rv == rx ? rw : rv;
        for (std::size_t m : uf.members(other)) J[m] = rho;
      }
      uf.unite(rv, rw);
    }
  }
  return J;
}

std::vector<std::size_t> centers(std::size_t n, std::size_t cap) {
  std::vector<std::size_t> c(std::min(n, cap));
  std::iota(c.begin(), c.end(), std::size_t{0});
  return c;
}

double grid_up(double raw) {
  if (!std::isfinite(raw)) return kInf;
  if (raw <= 1.0) return 1.0;
  return 1.0 + 0.25 * std::ceil((raw - 1.0) / 0.25 - 1e-9);
}

// Diameter of an explicit index list.
double list_diam(const FiniteMetricSpace& space, const std::vector<std::size_t>& pts) {
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    auto row = space.row(pts[a]);
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::max(best, row[pts[b]]);
  }
  return best;
}

}  // namespace

std::optional<double> PropertyReport::constant(const std::string& key) const {
  for (const auto& [k, v] : constants)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<double> dyadic_radii(double hi, double lo) {
  std::vector<double> out;
  if (!(hi > 0.0)) return out;
  for (double r = hi; r >= lo; r /= 2.0) out.push_back(r);
  return out;
}

std::vector<double> join_radii(const FiniteMetricSpace& space, std::size_t x, double eps) {
  if (x >= space.size()) throw InvalidInput("center out of range");
  return join_radii(space, epsilon_graph(space, eps), x, by_distance(space, x));
}

// ---------------------------------------------------------------------------

BoundedTurning bounded_turning(const FiniteMetricSpace& space, double eps) {
  const auto g = epsilon_graph(space, eps);
  require_connected(g);
  const std::size_t n = space.size();
  DistanceTable J(n);
  parallel_for(0, n, [&](std::size_t x) {
    const auto jx = join_radii(space, g, x, by_distance(space, x));
    std::copy(jx.begin(), jx.end(), J.row(x).begin());
  });

  BoundedTurning out;
  out.epsilon = eps;
  out.diam = diam(space);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double d = space(x, y);
      if (d <= eps) continue;
      ++out.pairs;
      const double v = std::min(J(x, y), J(y, x)) / d;
      if (v > out.lambda || out.pairs == 1) {
        out.lambda = v;
        out.x = x;
        out.y = y;
      }
    }
  }
  return out;
}

LLCResult llc_check(const FiniteMetricSpace& space, double eps, std::size_t max_centers) {
  const auto g = epsilon_graph(space, eps);
  require_connected(g);
  const std::size_t n = space.size();
  const auto radii = dyadic_radii(diam(space), 4.0 * eps);
  const auto cs = centers(n, max_centers);

  struct Local {
    double raw = 1, l1 = 1, l2 = 1, radius = 0;
    std::size_t samples = 0;
  };
  std::vector<Local> part(cs.size());
  parallel_for(0, cs.size(), [&](std::size_t ci) {
    const std::size_t x = cs[ci];
    const auto order = by_distance(space, x);
    const auto J = join_radii(space, g, x, order);
    auto row = space.row(x);
    Local& loc = part[ci];
    for (double r : radii) {
      ++loc.samples;
      // LLC1: every point of B(x, r) joins x inside B(x, R).
      double R = 0.0;
      for (std::size_t v : order) {
        if (row[v] > r) break;
        R = std::max(R, J[v]);
      }
      const double l1 = R / r;

      // LLC2: sweep inward from the farthest points until the points outside
      // B(x, r) lie in one component; rho is the innermost distance used.
      double l2 = 1.0;
      std::size_t outer_count = 0;
      for (std::size_t v : order)
        if (row[v] > r) ++outer_count;
      if (outer_count > 1) {
        UnionFind uf(n);
        std::vector<char> added(n, 0), outer(n, 0);
        std::size_t pieces = 0;
        double rho = 0.0;
        bool joined = false;
        std::size_t idx = n;
        while (idx > 0 && !joined) {
          // add one group of equidistant points
          const double level = row[order[idx - 1]];
          while (idx > 0 && row[order[idx - 1]] == level) {
            const std::size_t v = order[--idx];
            added[v] = 1;
            if (level > r) {
              outer[v] = 1;
              ++pieces;
            }
            for (std::size_t w : g.adjacency[v]) {
              if (!added[w]) continue;
              std::size_t rv = uf.find(v), rw = uf.find(w);
              if (rv == rw) continue;
              const bool ov = outer[rv], ow = outer[rw];
              const std::size_t root = uf.unite(rv, rw);
              outer[root] = ov || ow;
              if (ov && ow) --pieces;
            }
          }
          if (level <= r || idx == 0 || row[order[idx - 1]] <= r) {
            // all outer points are in; from here on count merges
            if (pieces == 1) {
              joined = true;
              rho = std::min(level, r);
            }
          }
        }
        l2 = joined && rho > 0.0 ? r / rho : kInf;
      }
      const double need = std::max(l1, l2);
      loc.l1 = std::max(loc.l1, l1);
      loc.l2 = std::max(loc.l2, l2);
      if (need > loc.raw) {
        loc.raw = need;
        loc.radius = r;
      }
    }
  });

  LLCResult out;
  out.epsilon = eps;
  if (!radii.empty()) {
    out.r_max = radii.front();
    out.r_min = radii.back();
  }
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const auto& loc = part[ci];
    out.samples += loc.samples;
    out.llc1 = std::max(out.llc1, loc.l1);
    out.llc2 = std::max(out.llc2, loc.l2);
    if (loc.raw > out.raw) {
      out.raw = loc.raw;
      out.x = cs[ci];
      out.radius = loc.radius;
    }
  }
  out.lambda = grid_up(out.raw);
  return out;
}

// ---------------------------------------------------------------------------

DoublingResult doubling_constant(const FiniteMetricSpace& space, std::size_t max_centers) {
  DoublingResult out;
  const double m = mesh(space);
  const auto radii = dyadic_radii(diam(space), 4.0 * m);
  if (radii.empty()) return out;
  out.r_max = radii.front();
  out.r_min = radii.back();
  const auto cs = centers(space.size(), max_centers);
  std::vector<DoublingResult> part(cs.size());
  parallel_for(0, cs.size(), [&](std::size_t ci) {
    for (double r : radii) {
      const std::size_t N = epsilon_net(space, ball(space, cs[ci], r), r / 2.0).size();
      if (N > part[ci].N) part[ci] = {N, cs[ci], r, 0, 0};
    }
  });
  for (const auto& p : part)
    if (p.N > out.N) {
      out.N = p.N;
      out.x = p.x;
      out.radius = p.radius;
    }
  return out;
}

RelativeDoublingResult relative_doubling(const FiniteMetricSpace& space, const std::vector<Subset>& comps,
                                         double eps_frac, std::size_t max_centers) {
  if (!(eps_frac > 0.0 && eps_frac < 1.0)) throw InvalidInput("relative doubling fraction must lie in (0, 1)");
  RelativeDoublingResult out;
  const auto radii = dyadic_radii(diam(space), 4.0 * mesh(space));
  if (radii.empty()) return out;
  out.r_max = radii.front();
  out.r_min = radii.back();
  const auto cs = centers(space.size(), max_centers);
  std::vector<RelativeDoublingResult> part(cs.size());
  parallel_for(0, cs.size(), [&](std::size_t ci) {
    const std::size_t x = cs[ci];
    auto row = space.row(x);
    std::vector<std::size_t> pts;
    for (double r : radii) {
      std::size_t count = 0;
      for (const auto& K : comps) {
        pts.clear();
        for (std::size_t p : K)
          if (row[p] <= r) pts.push_back(p);
        if (!pts.empty() && list_diam(space, pts) >= eps_frac * r) ++count;
      }
      if (count > part[ci].N) part[ci] = {count, x, r, 0, 0};
    }
  });
  for (const auto& p : part)
    if (p.N > out.N) {
      out.N = p.N;
      out.x = p.x;
      out.radius = p.radius;
    }
  return out;
}

PorosityResult porosity(const FiniteMetricSpace& space, const Subset& Y, std::size_t max_centers) {
  if (Y.empty()) throw InvalidInput("porosity needs a nonempty subset");
  const std::size_t n = space.size();
  std::vector<double> dY(n, kInf);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t y : Y) dY[z] = std::min(dY[z], space(z, y));

  PorosityResult out;
  out.p = 0.5;
  const auto radii = dyadic_radii(diam(space), 4.0 * mesh(space));
  if (radii.empty()) {
    out.p = Y.size() == n ? 0.0 : out.p;
    return out;
  }
  out.r_max = radii.front();
  out.r_min = radii.back();
  std::vector<std::size_t> ys(Y.begin(), Y.end());
  if (ys.size() > max_centers) ys.resize(max_centers);
  std::vector<PorosityResult> part(ys.size());
  parallel_for(0, ys.size(), [&](std::size_t yi) {
    const std::size_t y = ys[yi];
    auto row = space.row(y);
    PorosityResult& loc = part[yi];
    loc.p = kInf;
    for (double r : radii) {
      double best = 0.0;
      std::size_t arg = y;
      for (std::size_t z = 0; z < n; ++z) {
        const double v = std::min(dY[z], r - row[z]);
        if (v > best) {
          best = v;
          arg = z;
        }
      }
      if (best / r < loc.p) {
        loc.p = best / r;
        loc.y = y;
        loc.radius = r;
        loc.hole_center = arg;
      }
    }
  });
  for (const auto& p : part)
    if (p.p < out.p) {
      out.p = p.p;
      out.y = p.y;
      out.radius = p.radius;
      out.hole_center = p.hole_center;
    }
  return out;
}

RelativePorosityResult relative_porosity(const FiniteMetricSpace& space, const std::vector<Subset>& comps,
                                         double eps, std::size_t max_centers) {
  if (comps.empty()) throw InvalidInput("relative porosity needs boundary components");
  const auto g = epsilon_graph(space, eps);
  auto radii = dyadic_radii(diam(space), 4.0 * mesh(space));
  std::reverse(radii.begin(), radii.end());  // ascending
  const auto cs = centers(space.size(), max_centers);

  // best[r][ci]: largest diam(K') / r, or -1 when no piece meets B(x, r/2)
  std::vector<std::vector<double>> best(radii.size(), std::vector<double>(cs.size(), -1.0));
  parallel_for(0, cs.size(), [&](std::size_t ci) {
    const std::size_t x = cs[ci];
    auto row = space.row(x);
    std::vector<std::size_t> inside;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      const double r = radii[ri];
      double b = -1.0;
      for (const auto& K : comps) {
        inside.clear();
        for (std::size_t p : K)
          if (row[p] <= r) inside.push_back(p);
        if (inside.empty()) continue;
        for (const auto& piece : components(g, Subset(inside))) {
          bool meets = false;
          for (std::size_t p : piece)
            if (row[p] <= r / 2.0) meets = true;
          if (meets) b = std::max(b, list_diam(space, piece.indices()) / r);
        }
      }
      best[ri][ci] = b;
    }
  });

  RelativePorosityResult out;
  out.p = kInf;
  std::size_t top = 0;
  for (; top < radii.size(); ++top) {
    const auto& row = best[top];
    if (std::any_of(row.begin(), row.end(), [](double v) { return v < 0.0; })) break;
  }
  if (top == 0) {
    out.p = 0.0;
    return out;
  }
  out.r0 = radii[top - 1];
  out.r_min = radii.front();
  out.r_max = out.r0;
  for (std::size_t ri = 0; ri < top; ++ri)
    for (std::size_t ci = 0; ci < cs.size(); ++ci)
      if (best[ri][ci] < out.p) {
        out.p = best[ri][ci];
        out.x = cs[ci];
        out.radius = radii[ri];
      }
  return out;
}

AhlforsFit ahlfors_dimension(const FiniteMetricSpace& space, std::size_t max_centers) {
  const std::size_t n = space.size();
  if (n < 32) throw InvalidInput("Ahlfors fit needs at least 32 points");
  const double lo = 2.0 * mesh(space);
  const double hi = diam(space) / 4.0;
  if (!(hi >= 4.0 * lo * (1.0 - 1e-12)))
    throw InvalidInput("scale range [2 mesh, diam/4] spans fewer than 3 dyadic levels");
  const auto steps = static_cast<std::size_t>(std::floor(8.0 * std::log2(hi / lo) + 1e-9));
  std::vector<double> radii;
  for (std::size_t i = 0; i <= steps; ++i) radii.push_back(lo * std::exp2(static_cast<double>(i) / 8.0));

  AhlforsFit fit;
  fit.net_scale = lo / 8.0;
  fit.r_min = radii.front();
  fit.r_max = radii.back();

  // Earlier points within the net scale; a point joins the net of a ball unless
  // one of these is already in it.
  std::vector<std::vector<std::size_t>> conflicts(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (space(i, j) <= fit.net_scale) conflicts[i].push_back(j);

  const auto cs = centers(n, max_centers);
  std::vector<std::vector<double>> counts(radii.size(), std::vector<double>(cs.size()));
  parallel_for(0, cs.size(), [&](std::size_t ci) {
    auto row = space.row(cs[ci]);
    std::vector<char> taken(n);
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      const double r = radii[ri];
      std::fill(taken.begin(), taken.end(), 0);
      std::size_t N = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (row[i] > r) continue;
        bool free = true;
        for (std::size_t j : conflicts[i])
          if (taken[j]) {
            free = false;
            break;
          }
        if (free) {
          taken[i] = 1;
          ++N;
        }
      }
      counts[ri][ci] = static_cast<double>(N);
    }
  });

  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    std::vector<double> v = counts[ri];
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size();
    const double med = k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
    fit.log_r.push_back(std::log(radii[ri]));
    fit.log_median.push_back(std::log(med));
  }
  const double m = static_cast<double>(radii.size());
  const double mx = std::accumulate(fit.log_r.begin(), fit.log_r.end(), 0.0) / m;
  const double my = std::accumulate(fit.log_median.begin(), fit.log_median.end(), 0.0) / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    sxy += (fit.log_r[i] - mx) * (fit.log_median[i] - my);
    sxx += (fit.log_r[i] - mx) * (fit.log_r[i] - mx);
  }
  fit.Q = sxy / sxx;
  fit.intercept = my - fit.Q * mx;
  fit.C_low = kInf;
  fit.C_high = 0.0;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const double model = std::exp(fit.intercept + fit.Q * fit.log_r[ri]);
    for (double N : counts[ri]) {
      fit.C_low = std::min(fit.C_low, N / model);
      fit.C_high = std::max(fit.C_high, N / model);
    }
  }
  return fit;
}

// ---------------------------------------------------------------------------

AngleResult angle(const FiniteMetricSpace& space, const Subset& A, const Subset& B) {
  const Subset seam = set_intersection(A, B);
  if (seam.empty()) throw InvalidInput("angle needs a nonempty seam");
  AngleResult out;
  for (std::size_t a : A) {
    auto ra = space.row(a);
    for (std::size_t b : B) {
      if (a == b) continue;
      double via = kInf;
      for (std::size_t y : seam) via = std::min(via, ra[y] + space(y, b));
      const double c = ra[b] / via;
      if (c < out.c) out = {c, a, b};
    }
  }
  return out;
}

PerfectnessResult uniform_perfectness(const FiniteMetricSpace& space, const Subset& S) {
  if (S.size() < 2) throw InvalidInput("uniform perfectness needs at least 2 points");
  PerfectnessResult out;
  const auto radii = dyadic_radii(diam(space, S), 2.0 * mesh(space));
  if (radii.empty()) return out;
  out.r_max = radii.front();
  out.r_min = radii.back();
  for (std::size_t x : S) {
    auto row = space.row(x);
    double far = 0.0;
    for (std::size_t s : S) far = std::max(far, row[s]);
    for (double r : radii) {
      if (far <= r) continue;
      double rho = 0.0;
      for (std::size_t s : S)
        if (row[s] <= r) rho = std::max(rho, row[s]);
      const double need = rho > 0.0 ? r / rho : kInf;
      if (need > out.lambda) {
        out.lambda = need;
        out.x = x;
        out.radius = r;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SewnCertificate certify_sewn(const SewnSpace& sewn, const CertifyOptions& opt) {
  SewnCertificate c;
  const auto& S = sewn.space;
  c.epsilon = opt.epsilon.value_or(default_epsilon(S));
  c.c_flat = sewn.certificates.c_flat;
  c.Delta = sewn.certificates.Delta;
  c.L = sewn.certificates.L;

  c.bt = bounded_turning(S, c.epsilon);
  c.llc = llc_check(S, c.epsilon, opt.max_centers);

  const FiniteMetricSpace base = restrict_to(S, sewn.base());
  c.bt_pieces = bounded_turning(base, c.epsilon).lambda;
  c.llc_pieces = llc_check(base, c.epsilon, opt.max_centers).lambda;
  for (std::size_t k = 0; k < sewn.component_count(); ++k) {
    const FiniteMetricSpace piece = restrict_to(S, sewn.piece(k));
    c.bt_pieces = std::max(c.bt_pieces, bounded_turning(piece, c.epsilon).lambda);
    c.llc_pieces = std::max(c.llc_pieces, llc_check(piece, c.epsilon, opt.max_centers).lambda);
  }
  c.bt_bound = c.bt_pieces / c.c_flat;
  const double lam = c.llc_pieces;
  c.llc_bound = std::max(2.0 * (1.0 + 2.0 * c.Delta * lam) / c.c_flat, 4.0 * lam * c.Delta);

  c.doubling = doubling_constant(S, opt.max_centers);
  c.base_porosity = porosity(S, sewn.base(), opt.max_centers);
  const auto& X = sewn.bundle.base;
  c.rel_doubling = relative_doubling(X, sewn.points.seams, opt.rel_doubling_frac, opt.max_centers);
  c.rel_porosity = relative_porosity(X, sewn.points.seams, default_epsilon(X), opt.max_centers);
  if (opt.ahlfors) {
    try {
      c.ahlfors = ahlfors_dimension(S, opt.max_centers);
    } catch (const InvalidInput&) {
      c.ahlfors.reset();
    }
  }

  auto bt = to_report(c.bt);
  bt.constants.emplace_back("lambda_pieces", c.bt_pieces);
  bt.constants.emplace_back("implied_bound", c.bt_bound);
  bt.pass = c.bt.lambda <= opt.slack * c.bt_bound;
  auto llc = to_report(c.llc);
  llc.constants.emplace_back("lambda_pieces", c.llc_pieces);
  llc.constants.emplace_back("implied_bound", c.llc_bound);
  llc.pass = std::isfinite(c.llc.lambda) && c.llc.lambda <= opt.slack * c.llc_bound;
  auto por = to_report(c.base_porosity);
  por.name = "base-porosity";
  por.pass = c.base_porosity.p > 0.0;
  auto rel_por = to_report(c.rel_porosity);
  rel_por.pass = c.rel_porosity.p > 0.0;

  PropertyReport sewing{"sewing", {{"L", c.L}, {"c_flat", c.c_flat}, {"Delta", c.Delta},
                                   {"min_ratio", sewn.certificates.min_ratio}}, 0, 0, {}, c.c_flat > 0.0};
  c.checks = {sewing, bt, llc, to_report(c.doubling), por, to_report(c.rel_doubling), rel_por};
  if (c.ahlfors) c.checks.push_back(to_report(*c.ahlfors));
  c.pass = std::all_of(c.checks.begin(), c.checks.end(), [](const PropertyReport& r) { return r.pass.value_or(true); });
  return c;
}

// ---------------------------------------------------------------------------

PropertyReport to_report(const BoundedTurning& r) {
  return {"bt", {{"lambda", r.lambda}, {"epsilon", r.epsilon}, {"pairs", static_cast<double>(r.pairs)}},
          r.epsilon, r.diam, {{"extremal pair", {r.x, r.y}, 0, r.lambda}}, std::nullopt};
}

PropertyReport to_report(const LLCResult& r) {
  return {"llc",
          {{"lambda", r.lambda}, {"raw", r.raw}, {"llc1", r.llc1}, {"llc2", r.llc2}, {"epsilon", r.epsilon},
           {"samples", static_cast<double>(r.samples)}},
          r.r_min, r.r_max, {{"extremal ball", {r.x}, r.radius, r.raw}}, std::nullopt};
}

PropertyReport to_report(const DoublingResult& r) {
  return {"doubling", {{"N", static_cast<double>(r.N)}}, r.r_min, r.r_max,
          {{"extremal ball", {r.x}, r.radius, static_cast<double>(r.N)}}, std::nullopt};
}

PropertyReport to_report(const RelativeDoublingResult& r) {
  return {"rel-doubling", {{"N_eps", static_cast<double>(r.N)}}, r.r_min, r.r_max,
          {{"extremal ball", {r.x}, r.radius, static_cast<double>(r.N)}}, std::nullopt};
}

PropertyReport to_report(const PorosityResult& r) {
  return {"porosity", {{"p", r.p}}, r.r_min, r.r_max,
          {{"extremal ball", {r.y, r.hole_center}, r.radius, r.p}}, std::nullopt};
}

PropertyReport to_report(const RelativePorosityResult& r) {
  return {"rel-porosity", {{"p_X", r.p}, {"r0", r.r0}}, r.r_min, r.r_max,
          {{"extremal ball", {r.x}, r.radius, r.p}}, std::nullopt};
}

PropertyReport to_report(const AhlforsFit& r) {
  return {"ahlfors",
          {{"Q", r.Q}, {"C_low", r.C_low}, {"C_high", r.C_high}, {"net_scale", r.net_scale},
           {"radii", static_cast<double>(r.log_r.size())}},
          r.r_min, r.r_max, {}, std::nullopt};
}

PropertyReport to_report(const AngleResult& r) {
  return {"angle", {{"c", r.c}}, 0, 0, {{"extremal pair", {r.a, r.b}, 0, r.c}}, std::nullopt};
}

PropertyReport to_report(const PerfectnessResult& r) {
  return {"perfect", {{"lambda", r.lambda}}, r.r_min, r.r_max,
          {{"extremal ball", {r.x}, r.radius, r.lambda}}, std::nullopt};
}

}  // namespace sewkit
