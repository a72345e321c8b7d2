#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sewkit {

// Relative tolerance used for every metric-axiom check and certified identity.
inline constexpr double kRelTol = 1e-9;

using Point = std::vector<double>;

// Dense square table of reals stored row-major.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  // Throws InvalidInput if the rows do not form a square table.
  static DistanceTable from_rows(const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
  [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }

  // Sets both (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, double v) noexcept {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Sorted set of distinct point indices.
class Subset {
 public:
  Subset() = default;
  // Sorts the indices; throws InvalidInput on duplicates.
  explicit Subset(std::vector<std::size_t> indices);

  static Subset range(std::size_t n);

  [[nodiscard]] const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }
  [[nodiscard]] bool contains(std::size_t i) const noexcept;
  [[nodiscard]] bool is_subset_of(const Subset& other) const noexcept;
  [[nodiscard]] auto begin() const noexcept { return indices_.begin(); }
  [[nodiscard]] auto end() const noexcept { return indices_.end(); }
  [[nodiscard]] std::size_t operator[](std::size_t k) const noexcept { return indices_[k]; }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<std::size_t> indices_;
};

Subset set_union(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);

// Immutable finite metric space. Copies share the underlying table.
//
// The constructor enforces the O(n^2) axioms (finite entries, zero diagonal,
// exact symmetry, positive off-diagonal entries). The triangle inequality is
// the caller's responsibility; validate_metric checks it exhaustively.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  explicit FiniteMetricSpace(DistanceTable table, std::vector<std::string> labels = {},
                             std::vector<Point> coords = {});

  // Euclidean distances between the given coordinates.
  static FiniteMetricSpace euclidean(std::vector<Point> coords, std::vector<std::string> labels = {});

  [[nodiscard]] std::size_t size() const noexcept { return data_ ? data_->table.size() : 0; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_->table(i, j); }
  [[nodiscard]] double distance(std::size_t i, std::size_t j) const noexcept { return data_->table(i, j); }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept { return data_->table.row(i); }
  [[nodiscard]] const DistanceTable& table() const noexcept { return data_->table; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return data_->labels; }
  [[nodiscard]] const std::vector<Point>& coords() const noexcept { return data_->coords; }
  [[nodiscard]] bool has_coords() const noexcept { return data_ && !data_->coords.empty(); }

  // Same points with every distance multiplied by factor > 0.
  [[nodiscard]] FiniteMetricSpace scaled(double factor) const;

 private:
  struct Data {
    DistanceTable table;
    std::vector<std::string> labels;
    std::vector<Point> coords;
  };
  std::shared_ptr<const Data> data_;
};

// Symmetric table, zero exactly on the diagonal and positive elsewhere.
// The triangle inequality is not required.
class QuasiMetricTable {
 public:
  QuasiMetricTable() = default;
  // Throws InvalidInput when the invariants fail.
  explicit QuasiMetricTable(DistanceTable table);

  [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return table_(i, j); }
  [[nodiscard]] const DistanceTable& table() const noexcept { return table_; }

 private:
  DistanceTable table_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class AxiomKind { diagonal, symmetry, positivity, triangle };

// Triangle witnesses read (i, j, k): d(i,k) > d(i,j) + d(j,k), j is the relay.
struct AxiomViolation {
  AxiomKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
};

struct ValidationReport {
  std::size_t points = 0;
  std::vector<AxiomViolation> violations;  // truncated to max_witnesses
  std::size_t violation_count = 0;         // total, including truncated ones

  [[nodiscard]] bool valid() const noexcept { return violation_count == 0; }
};

// Checks every metric axiom. Throws InvalidInput on a non-square table or on
// NaN / infinite / negative entries.
ValidationReport validate_metric(const DistanceTable& table, std::size_t max_witnesses = 64);
ValidationReport validate_metric(const std::vector<std::vector<double>>& rows, std::size_t max_witnesses = 64);

// Triangle check only, for spaces that already passed construction.
ValidationReport validate_metric(const FiniteMetricSpace& space, std::size_t max_witnesses = 64);

// Builds a space after a full validation; throws InvalidInput listing the
// first witness otherwise.
FiniteMetricSpace make_validated_space(DistanceTable table, std::vector<std::string> labels = {});

// ---------------------------------------------------------------------------
// Chain metrization
// ---------------------------------------------------------------------------

// d(x,y) = inf over finite chains of the summed quasimetric. Chains with
// repeated points never lower the sum, so the infimum is the all-pairs
// shortest-path value on the complete graph weighted by q (Floyd-Warshall).
// A relay is accepted only when it improves an entry by more than a relative
// 1e-12, so inputs that already satisfy the triangle inequality are returned
// unchanged bit for bit. Throws CollapseError when two distinct points end up
// at distance zero.
FiniteMetricSpace chain_metrize(const QuasiMetricTable& q);

// ---------------------------------------------------------------------------
// Balls, diameters, nets, connectivity
// ---------------------------------------------------------------------------

// Closed ball {j : d(center, j) <= r}.
Subset ball(const FiniteMetricSpace& space, std::size_t center, double r);

// Largest pairwise distance; 0 for singletons. Throws InvalidInput on empty input.
double diam(const FiniteMetricSpace& space);
double diam(const FiniteMetricSpace& space, const Subset& subset);

// Induced subspace, points renumbered in subset order.
FiniteMetricSpace restrict_to(const FiniteMetricSpace& space, const Subset& subset);

// Greedy maximal eps-separated set scanning indices in ascending order. Points
// are separated when their distance exceeds eps; the result is an eps-cover.
Subset epsilon_net(const FiniteMetricSpace& space, double eps);
Subset epsilon_net(const FiniteMetricSpace& space, const Subset& within, double eps);

// Largest nearest-neighbour distance; 0 for a single point.
double mesh(const FiniteMetricSpace& space);

// Default connectivity scale used when a caller does not supply one.
double default_epsilon(const FiniteMetricSpace& space);

struct EpsilonGraph {
  double epsilon = 0.0;
  std::vector<std::vector<std::size_t>> adjacency;  // sorted neighbour lists

  [[nodiscard]] std::size_t size() const noexcept { return adjacency.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept;
};

// Edges {i, j} with i != j and d(i, j) <= eps.
EpsilonGraph epsilon_graph(const FiniteMetricSpace& space, double eps);

// Connected components of the graph, optionally restricted to a subset;
// each component is listed in ascending order, components ordered by their
// smallest member.
std::vector<Subset> components(const EpsilonGraph& graph, const std::optional<Subset>& within = std::nullopt);

}  // namespace sewkit
