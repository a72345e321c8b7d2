#include "sewkit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sewkit/error.hpp"
#include "sewkit/parallel.hpp"

namespace sewkit {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_entries(const DistanceTable& t) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = t(i, j);
      if (!finite_nonneg(v)) {
        std::ostringstream os;
        os << "entry (" << i << ", " << j << ") is " << v << "; distances must be finite and nonnegative";
        throw InvalidInput(os.str());
      }
    }
  }
}

// Structural axioms that can be checked in O(n^2).
void check_structure(const DistanceTable& t) {
  if (t.size() == 0) throw InvalidInput("a metric space needs at least one point");
  check_entries(t);
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (t(i, i) != 0.0) throw InvalidInput("nonzero diagonal entry at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t(i, j) != t(j, i))
        throw InvalidInput("asymmetric entries at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (!(t(i, j) > 0.0))
        throw InvalidInput("distinct points " + std::to_string(i) + " and " + std::to_string(j) +
                           " are at distance zero");
    }
  }
}

void record(ValidationReport& report, std::size_t cap, AxiomViolation v) {
  if (report.violations.size() < cap) report.violations.push_back(v);
  ++report.violation_count;
}

void scan_triangles(const DistanceTable& t, ValidationReport& report, std::size_t cap) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double dik = t(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (dik > (t(i, j) + t(j, k)) * (1.0 + kRelTol)) record(report, cap, {AxiomKind::triangle, i, j, k});
      }
    }
  }
}

std::string describe(const AxiomViolation& v) {
  std::ostringstream os;
  switch (v.kind) {
    case AxiomKind::diagonal:
      os << "nonzero diagonal at " << v.i;
      break;
    case AxiomKind::symmetry:
      os << "asymmetric pair (" << v.i << ", " << v.j << ")";
      break;
    case AxiomKind::positivity:
      os << "distinct points " << v.i << ", " << v.j << " at distance zero";
      break;
    case AxiomKind::triangle:
      os << "triangle inequality fails for (" << v.i << ", " << v.j << ", " << v.k << ")";
      break;
  }
  return os.str();
}

}  // namespace

DistanceTable DistanceTable::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  DistanceTable t(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw InvalidInput("table is not square: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(n));
    std::copy(rows[i].begin(), rows[i].end(), t.row(i).begin());
  }
  return t;
}

// ---------------------------------------------------------------------------

Subset::Subset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw InvalidInput("subset contains duplicate indices");
}

Subset Subset::range(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return Subset(std::move(idx));
}

bool Subset::contains(std::size_t i) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool Subset::is_subset_of(const Subset& other) const noexcept {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

Subset set_union(const Subset& a, const Subset& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset(std::move(out));
}

Subset set_intersection(const Subset& a, const Subset& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset(std::move(out));
}

Subset set_difference(const Subset& a, const Subset& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset(std::move(out));
}

// ---------------------------------------------------------------------------

FiniteMetricSpace::FiniteMetricSpace(DistanceTable table, std::vector<std::string> labels, std::vector<Point> coords) {
  check_structure(table);
  if (!labels.empty() && labels.size() != table.size())
    throw InvalidInput("label count " + std::to_string(labels.size()) + " does not match point count " +
                       std::to_string(table.size()));
  if (!coords.empty() && coords.size() != table.size())
    throw InvalidInput("coordinate count does not match point count");
  data_ = std::make_shared<const Data>(Data{std::move(table), std::move(labels), std::move(coords)});
}

FiniteMetricSpace FiniteMetricSpace::euclidean(std::vector<Point> coords, std::vector<std::string> labels) {
  const std::size_t n = coords.size();
  if (n == 0) throw InvalidInput("a metric space needs at least one point");
  const std::size_t dim = coords[0].size();
  for (const auto& p : coords) {
    if (p.size() != dim) throw InvalidInput("coordinates have inconsistent dimensions");
    for (double c : p)
      if (!std::isfinite(c)) throw InvalidInput("non-finite coordinate");
  }
  DistanceTable t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        double diff = coords[i][a] - coords[j][a];
        s += diff * diff;
      }
      t.set_symmetric(i, j, std::sqrt(s));
    }
  }
  return FiniteMetricSpace(std::move(t), std::move(labels), std::move(coords));
}

FiniteMetricSpace FiniteMetricSpace::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidInput("scale factor must be positive and finite");
  DistanceTable t = table();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (double& v : t.row(i)) v *= factor;
  std::vector<Point> c = coords();
  for (auto& p : c)
    for (double& x : p) x *= factor;
  return FiniteMetricSpace(std::move(t), labels(), std::move(c));
}

QuasiMetricTable::QuasiMetricTable(DistanceTable table) : table_(std::move(table)) { check_structure(table_); }

// ---------------------------------------------------------------------------

ValidationReport validate_metric(const DistanceTable& t, std::size_t max_witnesses) {
  check_entries(t);
  ValidationReport report;
  report.points = t.size();
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (t(i, i) != 0.0) record(report, max_witnesses, {AxiomKind::diagonal, i, i, i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t(i, j) != t(j, i)) record(report, max_witnesses, {AxiomKind::symmetry, i, j, j});
      if (t(i, j) == 0.0 || t(j, i) == 0.0) record(report, max_witnesses, {AxiomKind::positivity, i, j, j});
    }
  }
  scan_triangles(t, report, max_witnesses);
  return report;
}

ValidationReport validate_metric(const std::vector<std::vector<double>>& rows, std::size_t max_witnesses) {
  return validate_metric(DistanceTable::from_rows(rows), max_witnesses);
}

ValidationReport validate_metric(const FiniteMetricSpace& space, std::size_t max_witnesses) {
  ValidationReport report;
  report.points = space.size();
  scan_triangles(space.table(), report, max_witnesses);
  return report;
}

FiniteMetricSpace make_validated_space(DistanceTable table, std::vector<std::string> labels) {
  ValidationReport r = validate_metric(table, 1);
  if (r.points == 0) throw InvalidInput("a metric space needs at least one point");
  if (!r.valid()) throw InvalidInput(describe(r.violations.front()));
  return FiniteMetricSpace(std::move(table), std::move(labels));
}

// ---------------------------------------------------------------------------

FiniteMetricSpace chain_metrize(const QuasiMetricTable& q) {
  constexpr double kAccept = 1.0 - 1e-12;
  DistanceTable d = q.table();
  const std::size_t n = d.size();
  // Row k and column k are fixed during pass k (d[k][k] = 0), so the rows can
  // be relaxed concurrently without changing the result.
  for (std::size_t k = 0; k < n; ++k) {
    const std::span<const double> rk = d.row(k);
    parallel_for(0, n, [&](std::size_t i) {
      if (i == k) return;
      std::span<double> ri = d.row(i);
      const double dik = ri[k];
      for (std::size_t j = 0; j < n; ++j) {
        const double alt = dik + rk[j];
        if (alt < ri[j] * kAccept) ri[j] = alt;
      }
    });
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Rows are relaxed independently; take the smaller of the two candidates
      // so the output is exactly symmetric.
      double v = std::min(d(i, j), d(j, i));
      if (!(v > 0.0)) throw CollapseError(i, j);
      d.set_symmetric(i, j, v);
    }
  }
  return FiniteMetricSpace(std::move(d));
}

// ---------------------------------------------------------------------------

Subset ball(const FiniteMetricSpace& space, std::size_t center, double r) {
  if (center >= space.size()) throw InvalidInput("ball center out of range");
  if (!(r >= 0.0)) throw InvalidInput("ball radius must be nonnegative");
  std::vector<std::size_t> out;
  auto row = space.row(center);
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] <= r) out.push_back(j);
  return Subset(std::move(out));
}

double diam(const FiniteMetricSpace& space) {
  if (space.size() == 0) throw InvalidInput("diameter of an empty set");
  const auto& data = space.table().data();
  return *std::max_element(data.begin(), data.end());
}

double diam(const FiniteMetricSpace& space, const Subset& subset) {
  if (subset.empty()) throw InvalidInput("diameter of an empty set");
  double best = 0.0;
  const auto& idx = subset.indices();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] >= space.size()) throw InvalidInput("subset index out of range");
    auto row = space.row(idx[a]);
    for (std::size_t b = a + 1; b < idx.size(); ++b) best = std::max(best, row[idx[b]]);
  }
  return best;
}

FiniteMetricSpace restrict_to(const FiniteMetricSpace& space, const Subset& subset) {
  if (subset.empty()) throw InvalidInput("cannot restrict to an empty subset");
  const auto& idx = subset.indices();
  const std::size_t m = idx.size();
  if (idx.back() >= space.size()) throw InvalidInput("subset index out of range");
  DistanceTable t(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t(a, b) = space(idx[a], idx[b]);
  std::vector<std::string> labels;
  if (!space.labels().empty())
    for (std::size_t i : idx) labels.push_back(space.labels()[i]);
  std::vector<Point> coords;
  if (space.has_coords())
    for (std::size_t i : idx) coords.push_back(space.coords()[i]);
  return FiniteMetricSpace(std::move(t), std::move(labels), std::move(coords));
}

Subset epsilon_net(const FiniteMetricSpace& space, const Subset& within, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("net scale must be positive");
  std::vector<std::size_t> net;
  for (std::size_t i : within) {
    auto row = space.row(i);
    bool separated = std::all_of(net.begin(), net.end(), [&](std::size_t c) { return row[c] > eps; });
    if (separated) net.push_back(i);
  }
  return Subset(std::move(net));
}

Subset epsilon_net(const FiniteMetricSpace& space, double eps) {
  return epsilon_net(space, Subset::range(space.size()), eps);
}

double mesh(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    auto row = space.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) nearest = std::min(nearest, row[j]);
    worst = std::max(worst, nearest);
  }
  return worst;
}

double default_epsilon(const FiniteMetricSpace& space) { return 3.0 * mesh(space); }

std::size_t EpsilonGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& nb : adjacency) twice += nb.size();
  return twice / 2;
}

EpsilonGraph epsilon_graph(const FiniteMetricSpace& space, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("graph scale must be positive");
  EpsilonGraph g;
  g.epsilon = eps;
  const std::size_t n = space.size();
  g.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = space.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && row[j] <= eps) g.adjacency[i].push_back(j);
  }
  return g;
}

std::vector<Subset> components(const EpsilonGraph& graph, const std::optional<Subset>& within) {
  const std::size_t n = graph.size();
  std::vector<char> allowed(n, within ? 0 : 1);
  if (within) {
    for (std::size_t i : *within) {
      if (i >= n) throw InvalidInput("subset index out of range");
      allowed[i] = 1;
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<Subset> out;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (!allowed[s] || seen[s]) continue;
    std::vector<std::size_t> comp;
    stack.assign(1, s);
    seen[s] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t w : graph.adjacency[v]) {
        if (allowed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

}  // namespace sewkit
