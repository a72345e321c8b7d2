#include <doctest.h>

#include <cmath>

#include "sewkit/error.hpp"
#include "sewkit/generators.hpp"
#include "sewkit/map_analysis.hpp"
#include "support.hpp"

using namespace sewkit;
using namespace sewkit::testing;

TEST_CASE("identity map: s equals t") {
  Rng rng(1);
  const auto X = FiniteMetricSpace::euclidean(random_points(rng, 12));
  const auto f = PointMap::identity(X);
  for (const auto& smp : qs_distortion(f).samples) CHECK(smp.s == smp.t);
  const auto qm = qm_distortion(f);
  for (const auto& smp : qm.samples) CHECK(smp.s == smp.t);
  CHECK(qm.exhaustive);
  CHECK(qm.population == 12ull * 11 * 10 * 9);
}

TEST_CASE("snowflake map: s = t^alpha") {
  const auto X = interval_net(20);
  for (double alpha : {0.5, 1.0 / 3.0}) {
    const auto f = PointMap::identity_between(X, snowflake(X, alpha));
    for (const auto& smp : qs_distortion(f).samples)
      CHECK(smp.s == doctest::Approx(std::pow(smp.t, alpha)).epsilon(1e-12));
  }
}

TEST_CASE("scaling map: s = t") {
  Rng rng(2);
  const auto X = FiniteMetricSpace::euclidean(random_points(rng, 10));
  const auto f = PointMap::identity_between(X, X.scaled(7.5));
  for (const auto& smp : qs_distortion(f).samples) CHECK(smp.s == doctest::Approx(smp.t).epsilon(1e-14));
  for (const auto& smp : qm_distortion(f).samples) CHECK(smp.s == doctest::Approx(smp.t).epsilon(1e-14));
}

TEST_CASE("envelope is monotone and evaluates as a step function") {
  const auto p = DistortionProfile::from_samples({{1.0, 2.0}, {0.5, 3.0}, {2.0, 1.0}, {3.0, 5.0}});
  CHECK(p(0.1) == 0.0);
  CHECK(p(0.5) == 3.0);
  CHECK(p(2.5) == 3.0);
  CHECK(p(3.0) == 5.0);
  CHECK(p.max_s() == 5.0);
  for (std::size_t i = 1; i < p.envelope.size(); ++i) {
    CHECK(p.envelope[i].t > p.envelope[i - 1].t);
    CHECK(p.envelope[i].s >= p.envelope[i - 1].s);
  }
}

TEST_CASE("enumeration caps subsample deterministically") {
  const auto X = interval_net(30);
  const auto f = PointMap::identity(X);
  const auto a = qm_distortion(f, {1000, 3});
  const auto b = qm_distortion(f, {1000, 3});
  CHECK_FALSE(a.exhaustive);
  CHECK(a.samples.size() <= 1000);
  CHECK(a.samples.size() == b.samples.size());
  CHECK(a.max_s() == b.max_s());
}

TEST_CASE("cross_ratio") {
  const auto X = interval_net(3);  // 0, 1/3, 2/3, 1
  CHECK(cross_ratio(X, 0, 1, 2, 3) == doctest::Approx(0.25));
  CHECK(cross_ratio(X, 0, 3, 1, 2) == doctest::Approx(1.0 * (1.0 / 3.0) / ((1.0 / 3.0) * (1.0 / 3.0))));
  CHECK(cross_ratio(X.scaled(4.0), 0, 1, 2, 3) == doctest::Approx(0.25));
}

TEST_CASE("PointMap checks") {
  const auto X = interval_net(3);
  CHECK_THROWS_AS((PointMap{X, X, {0, 1, 1, 2}}.check()), InvalidInput);
  CHECK_THROWS_AS((PointMap{X, X, {0, 1, 2, 9}}.check()), InvalidInput);
  CHECK_THROWS_AS((PointMap{X, X, {0, 1}}.check()), InvalidInput);
  CHECK(PointMap::identity(X).bijective());
}

TEST_CASE("diam_distortion_check") {
  const auto X = interval_net(100);
  const Subset A({0, 1}), B = Subset::range(101);
  const auto id = diam_distortion_check(PointMap::identity(X), power_law_eta(1.0, 1.0), A, B);
  CHECK(id.pass);
  CHECK(id.lower <= id.ratio);
  CHECK(id.ratio <= id.upper);
  CHECK(id.ratio == doctest::Approx(0.01));

  const auto snow = PointMap::identity_between(X, snowflake(X, 1.0 / 3.0));
  CHECK_FALSE(diam_distortion_check(snow, power_law_eta(1.0, 1.0), A, B).pass);
  CHECK(diam_distortion_check(snow, power_law_eta(1.0, 1.0 / 3.0), A, B).pass);
  CHECK(diam_distortion_check(snow, tabulated_eta(qs_distortion(snow)), A, B).pass);

  CHECK_THROWS_AS(diam_distortion_check(PointMap::identity(X), power_law_eta(1, 1), Subset({0, 5}), Subset({0, 1})),
                  InvalidInput);
}

TEST_CASE("eta families") {
  CHECK(power_law_eta(2.0, 0.5)(4.0) == doctest::Approx(2.0 * 16.0));
  CHECK(power_law_eta(2.0, 0.5)(0.25) == doctest::Approx(2.0 * 0.5));
  CHECK(monomial_eta(3.0, 0.5)(4.0) == doctest::Approx(6.0));
}

TEST_CASE("separated_triple") {
  const auto X = circle_net(12);
  const auto t = separated_triple(PointMap::identity(X));
  CHECK(t.lambda_source == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(t.lambda_target == t.lambda_source);
  CHECK_THROWS_AS(separated_triple(PointMap::identity(interval_net(1))), InvalidInput);
}

TEST_CASE("inverse envelope bound for a snowflake map") {
  // For a homeomorphism with envelope eta, the inverse has envelope
  // 1 / eta^{-1}(1/t); for t -> t^alpha that is t^{1/alpha}.
  const auto X = interval_net(16);
  const auto Y = snowflake(X, 0.5);
  const auto fwd = qs_distortion(PointMap::identity_between(X, Y));
  const auto inv = qs_distortion(PointMap::identity_between(Y, X));
  for (const auto& e : inv.envelope) {
    CHECK(e.s == doctest::Approx(e.t * e.t).epsilon(1e-12));
    CHECK(fwd(e.s) <= e.t * (1 + 1e-12));
  }
}
