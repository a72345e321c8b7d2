#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "sewkit/cli.hpp"
#include "sewkit/error.hpp"
#include "sewkit/io.hpp"
#include "support.hpp"

using namespace sewkit;
using namespace sewkit::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sewkit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("two-point space round-trips byte for byte") {
  const auto X = FiniteMetricSpace::euclidean({{0.0}, {0.1}});
  auto doc = SpaceDocument::matrix("pair", X);
  doc.subsets["first"] = Subset({0});
  const std::string bytes = dump_json(encode_space(doc));
  const auto back = decode_space(Json::parse(bytes));
  CHECK(back.space.table() == X.table());
  CHECK(back.subsets.at("first") == Subset({0}));
  CHECK(dump_json(encode_space(back)) == bytes);
}

TEST_CASE("real numbers and non-finite values") {
  CHECK(real_from_json(real_to_json(0.1), "$") == 0.1);
  CHECK(std::isinf(real_from_json(real_to_json(std::numeric_limits<double>::infinity()), "$")));
  CHECK(std::isnan(real_from_json(real_to_json(std::nan("")), "$")));
  CHECK_THROWS_AS(real_from_json(Json("seven"), "$.x"), SchemaError);
}

TEST_CASE("bundle round trip passes check_bundle") {
  const auto b = carpet_with_disks(1).bundle;
  const auto back = decode_bundle(encode_bundle(b));
  CHECK_NOTHROW(check_bundle(back));
  CHECK(back.base.table() == b.base.table());
  CHECK(back.components[0].filling.table() == b.components[0].filling.table());
  CHECK(back.components[0].bilipschitz == b.components[0].bilipschitz);
}

TEST_CASE("sewn round trip") {
  const auto s = sew(carpet_with_disks(2).bundle);
  const auto back = decode_sewn(encode_sewn(s));
  CHECK(back.space.table() == s.space.table());
  CHECK(back.certificates.L == s.certificates.L);

  auto j = encode_sewn(s);
  j["space"]["metric"]["matrix"][std::size_t{0}] = 123.0;
  CHECK_THROWS_AS(decode_sewn(j), SchemaError);
}

TEST_CASE("truncated documents name the missing field") {
  auto j = encode_space(SpaceDocument::matrix("pair", FiniteMetricSpace::euclidean({{0.0}, {1.0}})));
  j.erase("metric");
  try {
    decode_space(j);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.path.find("metric") != std::string::npos);
  }
  auto v = encode_space(SpaceDocument::matrix("pair", FiniteMetricSpace::euclidean({{0.0}, {1.0}})));
  v["format_version"] = kFormatVersion + 1;
  CHECK_THROWS_AS(decode_space(v), SchemaError);
  v["format_version"] = kFormatVersion;
  v["kind"] = "bundle";
  CHECK_THROWS_AS(decode_space(v), SchemaError);
}

TEST_CASE("invalid metric in a document") {
  auto j = encode_space(SpaceDocument::matrix("tri", FiniteMetricSpace::euclidean({{0.0}, {1.0}, {2.0}})));
  j["metric"]["matrix"] = Json::array({1.0, 5.0, 1.0});
  CHECK_THROWS_AS(decode_space(j), SchemaError);
  CHECK_NOTHROW(decode_space(j, false));
}

TEST_CASE("map spec and point map round trip") {
  MapSpec m{{1, 0}, {0}, {{2, 1, 0}}};
  const auto back = decode_map_spec(encode_map_spec(m));
  CHECK(back.base_map == m.base_map);
  CHECK(back.permutation == m.permutation);
  CHECK(back.filling_maps == m.filling_maps);
  CHECK(decode_point_map(encode_point_map({3, 1, 2})) == std::vector<std::size_t>{3, 1, 2});
}

TEST_CASE("report digest ignores the timestamp") {
  ReportDocument r;
  r.checks.push_back({"doubling", {{"N", 4.0}}, 0.1, 1.0, {{"extremal ball", {2}, 0.5, 4.0}}, true});
  r.inputs.push_back({"x.json", sha256_hex("abc")});
  r.timestamp = "2026-01-01T00:00:00Z";
  const auto j1 = encode_report(r);
  r.timestamp = "2026-02-02T00:00:00Z";
  const auto j2 = encode_report(r);
  CHECK(report_digest(j1) == report_digest(j2));
  const auto back = decode_report(j1);
  REQUIRE(back.checks.size() == 1);
  CHECK(back.checks[0].pass == std::optional<bool>(true));
  CHECK(*back.checks[0].constant("N") == 4.0);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  const auto bundle = dir / "bundle.json", sewn = dir / "sewn.json", report = dir / "report.json";
  CHECK(cli({"generate", "carpet-disks", "--level", "1", "-o", bundle}) == kExitOk);
  CHECK(cli({"validate", "-i", bundle}) == kExitOk);
  CHECK(cli({"sew", "-i", bundle, "-o", sewn}) == kExitOk);
  CHECK(cli({"certify", "-i", sewn, "-o", report}) == kExitOk);
  CHECK(decode_report(read_json_file(report)).checks.size() >= 5);

  CHECK(cli({}) == kExitUsage);
  CHECK(cli({"frobnicate"}) == kExitUsage);
  CHECK(cli({"sew", "-i", dir / "missing.json", "-o", sewn}) == kExitUsage);

  const auto circle = dir / "circle.json";
  CHECK(cli({"generate", "circle", "--size", "24", "-o", circle}) == kExitOk);
  CHECK(cli({"diagnose", "-i", circle, "--check", "doubling", "--threshold", "100", "-o", report}) == kExitOk);
  CHECK(cli({"diagnose", "-i", circle, "--check", "doubling", "--threshold", "1", "-o", report}) ==
        kExitCheckFailed);
}

TEST_CASE("cli glue-map on a rotation") {
  TempDir dir;
  const auto bundle = dir / "b.json", sewn = dir / "s.json", map = dir / "m.json", report = dir / "r.json";
  REQUIRE(cli({"generate", "carpet-disks", "--level", "1", "-o", bundle}) == kExitOk);
  REQUIRE(cli({"sew", "-i", bundle, "-o", sewn}) == kExitOk);
  REQUIRE(cli({"generate", "rotation", "--level", "1", "--turns", "1", "-o", map}) == kExitOk);
  CHECK(cli({"glue-map", "-i", sewn, "-i", sewn, "--map", map, "-o", report}) == kExitOk);
}

TEST_CASE("cli output is deterministic up to the timestamp") {
  TempDir dir;
  const auto carpet = dir / "carpet.json", r1 = dir / "r1.json", r2 = dir / "r2.json";
  const auto c1 = dir / "a.csv", c2 = dir / "b.csv";
  REQUIRE(cli({"generate", "carpet", "--level", "3", "-o", carpet}) == kExitOk);
  REQUIRE(cli({"diagnose", "-i", carpet, "--check", "ahlfors", "--csv", c1, "-o", r1}) == kExitOk);
  REQUIRE(cli({"diagnose", "-i", carpet, "--check", "ahlfors", "--csv", c2, "-o", r2}) == kExitOk);
  CHECK(report_digest(read_json_file(r1)) == report_digest(read_json_file(r2)));
  CHECK(read_text_file(c1) == read_text_file(c2));
  CHECK(read_text_file(c1).rfind("log_r,log_N", 0) == 0);
}
