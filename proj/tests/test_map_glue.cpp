#include <doctest.h>

#include <cmath>
#include <memory>

#include "sewkit/error.hpp"
#include "sewkit/map_glue.hpp"
#include "support.hpp"

using namespace sewkit;
using namespace sewkit::testing;

namespace {

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

MapSpec identity_spec(const SewnSpace& s) {
  MapSpec m;
  m.base_map = iota_vec(s.base_size());
  m.permutation = iota_vec(s.component_count());
  for (const auto& c : s.bundle.components) m.filling_maps.push_back(iota_vec(c.filling.size()));
  return m;
}

struct Rotations {
  CarpetScenario sc;
  std::shared_ptr<const SewnSpace> sewn;
  GluedMap turn(int k) const { return glue_maps(sewn, sewn, carpet_rotation(sc, k)); }
};

Rotations rotations(int level) {
  auto sc = carpet_with_disks(level);
  auto sewn = std::make_shared<const SewnSpace>(sew(sc.bundle));
  return {std::move(sc), std::move(sewn)};
}

}  // namespace

TEST_CASE("identity pieces glue to the identity") {
  const auto s = std::make_shared<const SewnSpace>(sew(circle_center_toy()));
  const auto g = glue_maps(s, s, identity_spec(*s));
  CHECK(g.assembled.image == iota_vec(s->space.size()));
  const auto cert = certify_glued_qm(g);
  CHECK(cert.isometry);
  CHECK(cert.exact_identity);
  CHECK(cert.max_deviation == 0.0);
}

TEST_CASE("mismatched filling map is rejected at the seam") {
  const auto s = std::make_shared<const SewnSpace>(sew(circle_center_toy()));
  auto spec = identity_spec(*s);
  spec.filling_maps[0] = {1, 2, 3, 0, 4};
  try {
    glue_maps(s, s, spec);
    FAIL("expected CompatibilityError");
  } catch (const CompatibilityError& e) {
    CHECK(e.component == 0);
    CHECK(e.seam_point < 4);
  }
}

TEST_CASE("malformed pieces are rejected") {
  const auto s = std::make_shared<const SewnSpace>(sew(circle_center_toy()));
  auto spec = identity_spec(*s);
  spec.base_map.pop_back();
  CHECK_THROWS_AS(glue_maps(s, s, spec), InvalidInput);
  spec = identity_spec(*s);
  spec.permutation = {1};
  CHECK_THROWS_AS(glue_maps(s, s, spec), InvalidInput);
  spec = identity_spec(*s);
  spec.filling_maps[0] = {0, 1, 2, 3, 3};
  CHECK_THROWS_AS(glue_maps(s, s, spec), InvalidInput);
}

TEST_CASE("carpet rotations glue to bijections") {
  const auto r = rotations(2);
  for (int k = 0; k < 4; ++k) {
    const auto g = r.turn(k);
    CHECK(g.assembled.bijective());
    CHECK_NOTHROW(g.assembled.check());
  }
  CHECK(r.turn(0).assembled.image == iota_vec(r.sewn->space.size()));
  CHECK(r.turn(4).assembled.image == r.turn(0).assembled.image);
}

TEST_CASE("rotations form a cyclic group of order four") {
  const auto r = rotations(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto ab = compose(r.turn(a), r.turn(b));
      CHECK(ab.assembled.image == r.turn((a + b) % 4).assembled.image);
      CHECK(ab.pieces.permutation == r.turn((a + b) % 4).pieces.permutation);
    }
  const auto inv = inverse(r.turn(1));
  CHECK(inv.assembled.image == r.turn(3).assembled.image);
  CHECK(compose(inv, r.turn(1)).assembled.image == iota_vec(r.sewn->space.size()));
}

TEST_CASE("compose requires matching spaces") {
  const auto r = rotations(1);
  const auto other = std::make_shared<const SewnSpace>(sew(carpet_with_disks(1).bundle));
  const auto g = glue_maps(other, other, carpet_rotation(r.sc, 1));
  CHECK_THROWS_AS(compose(g, r.turn(1)), InvalidInput);
}

TEST_CASE("rotation certificate: an isometry with s = t") {
  const auto r = rotations(1);
  const auto cert = certify_glued_qm(r.turn(1));
  CHECK(cert.max_deviation <= 1e-12);
  for (const auto& smp : cert.global.samples) CHECK(smp.s == doctest::Approx(smp.t).epsilon(1e-12));
  CHECK(cert.domination >= 1.0 - 1e-12);
  CHECK(std::isfinite(cert.domination));
  CHECK(cert.seam_angle_source > 0);
  CHECK(cert.seam_angle_target > 0);
  CHECK(cert.mu > 0);
  CHECK(cert.mu <= 1.0);
  CHECK_FALSE(cert.pieces.empty());
}
