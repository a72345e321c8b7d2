#include <doctest.h>

#include <cmath>
#include <limits>

#include "sewkit/error.hpp"
#include "sewkit/generators.hpp"
#include "sewkit/sewing.hpp"
#include "sewkit/space_analysis.hpp"
#include "support.hpp"

using namespace sewkit;
using namespace sewkit::testing;

TEST_CASE("dyadic_radii") {
  const auto r = dyadic_radii(1.0, 0.2);
  REQUIRE(r.size() == 3);
  CHECK(r[2] == 0.25);
  CHECK(dyadic_radii(0.0, 0.1).empty());
}

TEST_CASE("bounded turning on a circle") {
  const auto X = circle_net(24);
  const auto bt = bounded_turning(X, 1.01 * mesh(X));
  CHECK(bt.lambda == doctest::Approx(1.0).epsilon(0.05));
  CHECK(bt.lambda >= 1.0);
  CHECK(bt.pairs > 0);
}

TEST_CASE("bounded turning on a segment is 1") {
  const auto X = interval_net(40);
  CHECK(bounded_turning(X, 1.01 * mesh(X)).lambda == doctest::Approx(1.0));
}

TEST_CASE("bounded turning on the U shape approaches sqrt(17)") {
  const std::size_t steps = 64;
  const auto X = u_shape(steps);
  const auto bt = bounded_turning(X, 1.5 / static_cast<double>(steps));
  CHECK(bt.lambda == doctest::Approx(std::sqrt(17.0)).epsilon(0.1));
}

TEST_CASE("bounded turning throws on a disconnected graph") {
  const auto X = FiniteMetricSpace::euclidean({{0.0}, {0.1}, {2.0}});
  CHECK_THROWS_AS(bounded_turning(X, 0.5), DisconnectedError);
}

TEST_CASE("join_radii on a segment") {
  const auto X = interval_net(8);
  const auto J = join_radii(X, 0, 0.2);
  for (std::size_t p = 0; p < X.size(); ++p) CHECK(J[p] == X(0, p));
}

TEST_CASE("LLC on a circle") {
  const auto X = circle_net(24);
  const auto r = llc_check(X, 1.01 * mesh(X));
  CHECK(r.lambda <= 1.25);
  CHECK(r.samples > 0);
  // grid rounding
  CHECK(std::fmod((r.lambda - 1.0) / 0.25, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("doubling constant") {
  const auto one = FiniteMetricSpace::euclidean({{0.0}, {1.0}});
  CHECK(doubling_constant(one).N <= 2);
  const auto r = doubling_constant(interval_net(64));
  CHECK(r.N == 4);
}

TEST_CASE("porosity") {
  const auto d = disk_net(6);
  CHECK(porosity(d.space, d.boundary).p >= 0.2);
  CHECK(porosity(d.space, Subset::range(d.space.size())).p == 0.0);
}

TEST_CASE("relative doubling and porosity on the level-3 carpet") {
  const auto net = carpet_net(3);
  const auto comps = net.peripheral_subsets();
  const auto rd = relative_doubling(net.space, comps, 0.5, 256);
  CHECK(rd.N >= 1);
  CHECK(rd.N <= 10);
  const auto rp = relative_porosity(net.space, comps, default_epsilon(net.space), 256);
  CHECK(rp.p > 0.0);
  CHECK(rp.p <= 1.0);
  CHECK(rp.r0 > 0.0);
}

TEST_CASE("Ahlfors dimension of a segment") {
  const auto fit = ahlfors_dimension(interval_net(256));
  CHECK(fit.Q == doctest::Approx(1.0).epsilon(0.1));
  CHECK(fit.C_low > 0);
  CHECK(fit.C_high >= fit.C_low);
  CHECK(fit.log_r.size() == fit.log_median.size());
  CHECK_THROWS_AS(ahlfors_dimension(interval_net(8)), InvalidInput);
}

TEST_CASE("Ahlfors dimension scales under snowflaking") {
  const auto X = interval_net(1024);
  const double q = ahlfors_dimension(X, 512).Q;
  const double qs = ahlfors_dimension(snowflake(X, 0.5), 512).Q;
  CHECK(qs == doctest::Approx(q / 0.5).epsilon(0.1));
}

TEST_CASE("Ahlfors dimension of the level-4 carpet against box counting") {
  const auto net = carpet_net(4);
  const auto fit = ahlfors_dimension(net.space, 512);

  std::vector<double> ls, lc;
  for (int k = 1; k <= 3; ++k) {
    const double s = std::pow(3.0, -k);
    ls.push_back(std::log(1.0 / s));
    lc.push_back(std::log(static_cast<double>(box_count(net.space.coords(), s))));
  }
  const double oracle = slope(ls, lc);
  CHECK(oracle == doctest::Approx(std::log(8.0) / std::log(3.0)).epsilon(0.1));
  CHECK(fit.Q == doctest::Approx(std::log(8.0) / std::log(3.0)).epsilon(0.1));
}

TEST_CASE("angle") {
  SUBCASE("collinear") {
    std::vector<Point> p{{0.0, 0.0}};
    std::vector<std::size_t> a{0}, b{0};
    for (int i = 1; i <= 6; ++i) {
      a.push_back(p.size());
      p.push_back({-static_cast<double>(i), 0.0});
      b.push_back(p.size());
      p.push_back({static_cast<double>(i), 0.0});
    }
    CHECK(angle(FiniteMetricSpace::euclidean(p), Subset(a), Subset(b)).c == doctest::Approx(1.0));
  }
  SUBCASE("perpendicular") {
    const auto c = perpendicular_segments(16);
    const auto r = angle(c.space, c.A, c.B);
    CHECK(r.c == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(angle(c.space, c.B, c.A).c == r.c);
    CHECK(angle(c.space.scaled(3.0), c.A, c.B).c == doctest::Approx(r.c).epsilon(1e-14));
  }
  SUBCASE("A = B") {
    const auto X = circle_net(12);
    CHECK(angle(X, Subset({0, 1, 2, 3}), Subset({0, 1, 2, 3})).c == 1.0);
  }
  SUBCASE("disjoint sets are rejected") {
    const auto X = circle_net(12);
    CHECK_THROWS_AS(angle(X, Subset({0}), Subset({1})), InvalidInput);
  }
}

TEST_CASE("uniform perfectness") {
  const auto circ = circle_net(32);
  CHECK(uniform_perfectness(circ, Subset::range(32)).lambda <= 2.0);
  const auto I = interval_net(64);
  CHECK(uniform_perfectness(I, Subset::range(65)).lambda <= 2.0);
  const auto two = interval_net(64);
  CHECK(std::isinf(uniform_perfectness(two, Subset({0, 64})).lambda));
}

TEST_CASE("certify_sewn") {
  SUBCASE("toy") {
    CertifyOptions opt;
    opt.ahlfors = false;
    const auto cert = certify_sewn(sew(circle_center_toy()), opt);
    CHECK(cert.c_flat == 1.0);
    CHECK(cert.L == 1.0);
    CHECK(cert.bt.lambda <= cert.bt_bound * opt.slack);
    CHECK_FALSE(cert.checks.empty());
  }
  SUBCASE("carpet level 2") {
    const auto s = sew(carpet_with_disks(2).bundle);
    const auto cert = certify_sewn(s);
    CHECK(cert.pass);
    CHECK(cert.bt.lambda <= cert.bt_bound * 2.0);
    CHECK(cert.llc.lambda <= cert.llc_bound * 2.0);
    CHECK(cert.base_porosity.p > 0);
    CHECK(cert.rel_doubling.N >= 1);
    for (const auto& c : cert.checks) {
      INFO(c.name);
      CHECK(c.pass.value_or(true));
    }
  }
}

TEST_CASE("to_report carries the constants") {
  const auto r = to_report(doubling_constant(interval_net(64)));
  REQUIRE(r.constant("N").has_value());
  CHECK(*r.constant("N") == 4.0);
  CHECK_FALSE(r.constant("missing").has_value());
}
