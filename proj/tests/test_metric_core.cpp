#include <doctest.h>

#include <cmath>

#include "sewkit/error.hpp"
#include "sewkit/generators.hpp"
#include "sewkit/metric_space.hpp"
#include "sewkit/parallel.hpp"
#include "support.hpp"

using namespace sewkit;
using namespace sewkit::testing;

TEST_CASE("validate_metric accepts the two-point metric") {
  const auto r = validate_metric(Rows{{0, 1}, {1, 0}});
  CHECK(r.valid());
  CHECK(r.points == 2);
}

TEST_CASE("validate_metric names the triangle witness") {
  const auto r = validate_metric(Rows{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  REQUIRE_FALSE(r.valid());
  REQUIRE(r.violations.size() >= 1);
  const auto& w = r.violations.front();
  CHECK(w.kind == AxiomKind::triangle);
  CHECK(w.i == 0);
  CHECK(w.j == 1);
  CHECK(w.k == 2);
}

TEST_CASE("validate_metric reports diagonal, symmetry and positivity") {
  CHECK(validate_metric(Rows{{1, 1}, {1, 0}}).violations.front().kind == AxiomKind::diagonal);
  CHECK(validate_metric(Rows{{0, 1}, {2, 0}}).violations.front().kind == AxiomKind::symmetry);
  CHECK(validate_metric(Rows{{0, 0}, {0, 0}}).violations.front().kind == AxiomKind::positivity);
}

TEST_CASE("validate_metric rejects malformed tables") {
  CHECK_THROWS_AS(validate_metric(Rows{{0, 1}, {1}}), InvalidInput);
  CHECK_THROWS_AS(validate_metric(Rows{{0, NAN}, {NAN, 0}}), InvalidInput);
  CHECK_THROWS_AS(validate_metric(Rows{{0, -1}, {-1, 0}}), InvalidInput);
  CHECK_THROWS_AS(make_validated_space(DistanceTable::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})), InvalidInput);
}

TEST_CASE("random Euclidean tables validate") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = random_points(rng, 6);
    Rows rows(6, std::vector<double>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) rows[i][j] = i == j ? 0.0 : euclid(pts[i], pts[j]);
    CHECK(validate_metric(rows).valid());
  }
}

TEST_CASE("chain_metrize relays through a single point") {
  DistanceTable q(3);
  q.set_symmetric(0, 1, 1);
  q.set_symmetric(1, 2, 1);
  q.set_symmetric(0, 2, 3);
  const auto d = chain_metrize(QuasiMetricTable(q));
  CHECK(d(0, 2) == 2.0);
  CHECK(d(0, 1) == 1.0);
}

TEST_CASE("chain_metrize is the identity on metrics") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const auto space = FiniteMetricSpace::euclidean(random_points(rng, uniform_index(rng, 3, 30)));
    const auto d = chain_metrize(QuasiMetricTable(space.table()));
    CHECK(d.table() == space.table());
  }
  const auto c = circle_net(40);
  CHECK(chain_metrize(QuasiMetricTable(c.table())).table() == c.table());
}

TEST_CASE("property: chain_metrize equals simple-chain enumeration and never exceeds q") {
  Rng rng(2024);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = uniform_index(rng, 2, 7);
    const auto q = random_table(n, [&] { return uniform(rng, 0.1, 2.0); });
    const auto d = chain_metrize(QuasiMetricTable(q));
    const auto oracle = brute_force_chains(q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(d(i, j) == doctest::Approx(oracle(i, j)).epsilon(1e-12));
        CHECK(d(i, j) <= q(i, j));
      }
    CHECK(validate_metric(d).valid());
    // idempotent
    CHECK(chain_metrize(QuasiMetricTable(d.table())).table() == d.table());
  }
}

TEST_CASE("chain_metrize is independent of the thread count") {
  Rng rng(3);
  const auto q = random_table(90, [&] { return uniform(rng, 0.1, 2.0); });
  set_thread_count(4);
  const auto d1 = chain_metrize(QuasiMetricTable(q));
  set_thread_count(1);
  const auto d2 = chain_metrize(QuasiMetricTable(q));
  set_thread_count(0);
  CHECK(d1.table() == d2.table());
}

TEST_CASE("QuasiMetricTable rejects zero off-diagonal entries") {
  DistanceTable q(3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) q(i, i) = 0;
  q.set_symmetric(0, 1, 0.0);
  CHECK_THROWS_AS((QuasiMetricTable(q)), InvalidInput);
}

TEST_CASE("ball, diam and restrict on the five-point interval") {
  const auto X = interval_net(4);
  CHECK(ball(X, 2, 0.3) == Subset({1, 2, 3}));
  CHECK(diam(X) == 1.0);
  CHECK(ball(X, 0, diam(X)) == Subset::range(5));
  CHECK(diam(X, Subset({3})) == 0.0);
  CHECK_THROWS_AS(diam(X, Subset()), InvalidInput);
  CHECK_THROWS_AS(restrict_to(X, Subset()), InvalidInput);
  const auto R = restrict_to(X, Subset({1, 4}));
  CHECK(R.size() == 2);
  CHECK(R(0, 1) == 0.75);
}

TEST_CASE("property: balls grow with the radius") {
  Rng rng(9);
  const auto X = FiniteMetricSpace::euclidean(random_points(rng, 40));
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t x = uniform_index(rng, 0, 39);
    double r1 = uniform(rng, 0, 1.5), r2 = uniform(rng, 0, 1.5);
    if (r1 > r2) std::swap(r1, r2);
    CHECK(ball(X, x, r1).is_subset_of(ball(X, x, r2)));
  }
}

TEST_CASE("epsilon_net greedy scan") {
  const auto X = interval_net(4);
  CHECK(epsilon_net(X, 0.6) == Subset({0, 3}));
  CHECK(epsilon_net(X, 2.0) == Subset({0}));
  CHECK(epsilon_net(X, 0.1) == Subset::range(5));
}

TEST_CASE("property: epsilon nets are separated covers") {
  Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const auto X = FiniteMetricSpace::euclidean(random_points(rng, uniform_index(rng, 5, 60)));
    const double eps = uniform(rng, 0.01, 0.8);
    const auto net = epsilon_net(X, eps);
    for (std::size_t a : net)
      for (std::size_t b : net)
        if (a != b) CHECK(X(a, b) > eps);
    for (std::size_t p = 0; p < X.size(); ++p) {
      double best = 1e9;
      for (std::size_t a : net) best = std::min(best, X(p, a));
      CHECK(best <= eps);
    }
  }
}

TEST_CASE("mesh and components") {
  CHECK(mesh(interval_net(4)) == 0.25);
  CHECK(default_epsilon(interval_net(4)) == 0.75);
  const auto two = FiniteMetricSpace::euclidean({{0.0}, {0.1}, {0.2}, {1.2}, {1.3}});
  const auto g = epsilon_graph(two, 0.5);
  CHECK(components(g).size() == 2);
  CHECK(g.edge_count() == 4);
  CHECK(components(g, Subset({0, 2, 4})).size() == 2);
}

TEST_CASE("carpet level 2 minus one hole boundary: components match a flood fill") {
  const auto net = carpet_net(2);
  const double eps = default_epsilon(net.space);
  const Subset removed(net.hole_cycles[0]);
  const Subset rest = set_difference(Subset::range(net.space.size()), removed);
  const auto comps = components(epsilon_graph(net.space, eps), rest);

  const auto& pts = rest.indices();
  const auto label = flood_fill(pts.size(), [&](std::size_t a, std::size_t b) {
    const auto& pa = net.grid[pts[a]];
    const auto& pb = net.grid[pts[b]];
    const double di = static_cast<double>(pa[0]) - static_cast<double>(pb[0]);
    const double dj = static_cast<double>(pa[1]) - static_cast<double>(pb[1]);
    return a != b && std::sqrt(di * di + dj * dj) / static_cast<double>(net.resolution) <= eps;
  });
  CHECK(comps.size() == count_labels(label));
}
