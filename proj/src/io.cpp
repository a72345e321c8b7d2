#include "sewkit/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sewkit/error.hpp"

namespace sewkit {

namespace {

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

std::string at(const std::string& path, const char* key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_header(const Json& j, const char* kind, const std::string& path) {
  const Json& v = need(j, "format_version", path);
  if (!v.is_number_integer()) throw SchemaError(at(path, "format_version"), "expected an integer");
  if (v.get<long long>() != kFormatVersion)
    throw SchemaError(at(path, "format_version"), "unsupported version " + v.dump() + ", expected " +
                                                      std::to_string(kFormatVersion));
  const Json& k = need(j, "kind", path);
  if (!k.is_string() || k.get<std::string>() != kind)
    throw SchemaError(at(path, "kind"), std::string("expected \"") + kind + "\"");
}

Json header(const char* kind) {
  Json j = Json::object();
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

std::size_t index_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw SchemaError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of indices");
  std::vector<std::size_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(index_from_json(j[i], at(path, i)));
  return out;
}

std::string string_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

Json subset_to_json(const Subset& s) { return Json(s.indices()); }

// Rethrows library errors raised while building decoded objects with a path attached.
template <class F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

SpaceDocument SpaceDocument::matrix(std::string name, FiniteMetricSpace space) {
  SpaceDocument d;
  d.name = std::move(name);
  d.space = std::move(space);
  return d;
}

Json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw SchemaError(path, "expected a real");
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

Json encode_space(const SpaceDocument& doc) {
  const std::size_t n = doc.space.size();
  Json j = header("space");
  j["name"] = doc.name;
  j["points"] = n;
  if (!doc.space.labels().empty()) j["labels"] = doc.space.labels();
  Json metric = Json::object();
  switch (doc.form) {
    case MetricForm::matrix: {
      Json tri = Json::array();
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) tri.push_back(doc.space(i, k));
      metric["matrix"] = std::move(tri);
      break;
    }
    case MetricForm::euclidean:
      if (!doc.space.has_coords()) throw InvalidInput("euclidean form needs coordinates");
      metric["euclidean"] = doc.space.coords();
      break;
    case MetricForm::snowflake:
      if (!doc.inner) throw InvalidInput("snowflake form needs an inner document");
      metric["snowflake"] = Json{{"alpha", doc.alpha}, {"space", encode_space(*doc.inner)}};
      break;
  }
  j["metric"] = std::move(metric);
  Json subsets = Json::object();
  for (const auto& [name, s] : doc.subsets) subsets[name] = subset_to_json(s);
  j["subsets"] = std::move(subsets);
  return j;
}

SpaceDocument decode_space(const Json& j, bool validate, const std::string& path) {
  check_header(j, "space", path);
  SpaceDocument doc;
  doc.name = string_from_json(need(j, "name", path), at(path, "name"));
  const std::size_t n = index_from_json(need(j, "points", path), at(path, "points"));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_array() || l.size() != n) throw SchemaError(at(path, "labels"), "expected " + std::to_string(n) + " labels");
    for (std::size_t i = 0; i < n; ++i) labels.push_back(string_from_json(l[i], at(at(path, "labels"), i)));
  }

  const std::string mpath = at(path, "metric");
  const Json& metric = need(j, "metric", path);
  if (!metric.is_object() || metric.size() != 1)
    throw SchemaError(mpath, "expected exactly one of matrix, euclidean, snowflake");
  if (metric.contains("matrix")) {
    const std::string p = at(mpath, "matrix");
    const Json& tri = metric["matrix"];
    if (!tri.is_array()) throw SchemaError(p, "expected an array");
    if (tri.size() != n * (n - (n > 0 ? 1 : 0)) / 2)
      throw SchemaError(p, "expected " + std::to_string(n * (n > 0 ? n - 1 : 0) / 2) + " lower-triangle entries, found " +
                               std::to_string(tri.size()));
    DistanceTable t(n);
    std::size_t e = 0;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k, ++e) t.set_symmetric(i, k, real_from_json(tri[e], at(p, e)));
    doc.form = MetricForm::matrix;
    doc.space = at_path(p, [&] {
      return validate ? make_validated_space(std::move(t), labels) : FiniteMetricSpace(std::move(t), labels);
    });
  } else if (metric.contains("euclidean")) {
    const std::string p = at(mpath, "euclidean");
    const Json& cs = metric["euclidean"];
    if (!cs.is_array() || cs.size() != n) throw SchemaError(p, "expected " + std::to_string(n) + " coordinate rows");
    std::vector<Point> coords;
    for (std::size_t i = 0; i < n; ++i) {
      if (!cs[i].is_array()) throw SchemaError(at(p, i), "expected a coordinate list");
      Point pt;
      for (std::size_t c = 0; c < cs[i].size(); ++c) pt.push_back(real_from_json(cs[i][c], at(at(p, i), c)));
      if (!coords.empty() && pt.size() != coords.front().size()) throw SchemaError(at(p, i), "dimension mismatch");
      coords.push_back(std::move(pt));
    }
    doc.form = MetricForm::euclidean;
    doc.space = at_path(p, [&] { return FiniteMetricSpace::euclidean(std::move(coords), labels); });
  } else if (metric.contains("snowflake")) {
    const std::string p = at(mpath, "snowflake");
    const Json& sf = metric["snowflake"];
    doc.form = MetricForm::snowflake;
    doc.alpha = real_from_json(need(sf, "alpha", p), at(p, "alpha"));
    auto inner = std::make_shared<SpaceDocument>(decode_space(need(sf, "space", p), validate, at(p, "space")));
    if (inner->space.size() != n) throw SchemaError(at(p, "space"), "point count differs from the outer document");
    doc.space = at_path(p, [&] {
      auto s = snowflake(inner->space, doc.alpha);
      return labels.empty() ? s : FiniteMetricSpace(s.table(), labels);
    });
    doc.inner = std::move(inner);
  } else {
    throw SchemaError(mpath, "expected exactly one of matrix, euclidean, snowflake");
  }

  if (j.contains("subsets")) {
    const std::string p = at(path, "subsets");
    const Json& subs = j["subsets"];
    if (!subs.is_object()) throw SchemaError(p, "expected an object of index lists");
    for (const auto& [name, list] : subs.items()) {
      const std::string sp = p + "." + name;
      auto idx = indices_from_json(list, sp);
      for (std::size_t i : idx)
        if (i >= n) throw SchemaError(sp, "index " + std::to_string(i) + " out of range");
      doc.subsets.emplace(name, at_path(sp, [&] { return Subset(std::move(idx)); }));
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Bundles and sewn spaces
// ---------------------------------------------------------------------------

Json encode_bundle(const ScenarioBundle& bundle) {
  Json j = header("bundle");
  j["base"] = encode_space(SpaceDocument::matrix("base", bundle.base));
  Json comps = Json::array();
  for (std::size_t k = 0; k < bundle.components.size(); ++k) {
    const auto& c = bundle.components[k];
    comps.push_back(Json{{"base_cycle", c.base_cycle},
                         {"filling_cycle", c.filling_cycle},
                         {"bilipschitz", c.bilipschitz},
                         {"filling", encode_space(SpaceDocument::matrix("filling:" + std::to_string(k), c.filling))}});
  }
  j["components"] = std::move(comps);
  return j;
}

ScenarioBundle decode_bundle(const Json& j, const std::string& path) {
  check_header(j, "bundle", path);
  ScenarioBundle b;
  b.base = decode_space(need(j, "base", path), true, at(path, "base")).space;
  const std::string cp = at(path, "components");
  const Json& comps = need(j, "components", path);
  if (!comps.is_array()) throw SchemaError(cp, "expected an array");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string p = at(cp, k);
    GluingComponent c;
    c.base_cycle = indices_from_json(need(comps[k], "base_cycle", p), at(p, "base_cycle"));
    c.filling_cycle = indices_from_json(need(comps[k], "filling_cycle", p), at(p, "filling_cycle"));
    c.bilipschitz = real_from_json(need(comps[k], "bilipschitz", p), at(p, "bilipschitz"));
    c.filling = decode_space(need(comps[k], "filling", p), true, at(p, "filling")).space;
    b.components.push_back(std::move(c));
  }
  at_path(path, [&] {
    check_bundle(b);
    return 0;
  });
  return b;
}

Json encode_sewn(const SewnSpace& sewn) {
  Json j = header("sewn");
  j["bundle"] = encode_bundle(sewn.bundle);
  SpaceDocument doc = SpaceDocument::matrix("sewn", sewn.space);
  doc.subsets.emplace("base", sewn.base());
  for (std::size_t k = 0; k < sewn.component_count(); ++k) {
    doc.subsets.emplace("seam:" + std::to_string(k), sewn.points.seams[k]);
    doc.subsets.emplace("piece:" + std::to_string(k), sewn.piece(k));
  }
  j["space"] = encode_space(doc);
  const auto& c = sewn.certificates;
  j["certificates"] = Json{{"L", real_to_json(c.L)},
                           {"c_flat", real_to_json(c.c_flat)},
                           {"Delta", real_to_json(c.Delta)},
                           {"min_ratio", real_to_json(c.min_ratio)},
                           {"base_lower", real_to_json(c.base_lower)}};
  return j;
}

SewnSpace decode_sewn(const Json& j, const std::string& path) {
  check_header(j, "sewn", path);
  const ScenarioBundle b = decode_bundle(need(j, "bundle", path), at(path, "bundle"));
  SewnSpace s = at_path(at(path, "bundle"), [&] { return sew(b); });
  const SpaceDocument stored = decode_space(need(j, "space", path), false, at(path, "space"));
  if (!(stored.space.table() == s.space.table()))
    throw SchemaError(at(path, "space"), "stored metric does not match the sewn bundle");
  return s;
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

Json encode_map_spec(const MapSpec& spec) {
  Json j = header("map_spec");
  j["base_map"] = spec.base_map;
  j["permutation"] = spec.permutation;
  j["filling_maps"] = spec.filling_maps;
  return j;
}

MapSpec decode_map_spec(const Json& j, const std::string& path) {
  check_header(j, "map_spec", path);
  MapSpec s;
  s.base_map = indices_from_json(need(j, "base_map", path), at(path, "base_map"));
  s.permutation = indices_from_json(need(j, "permutation", path), at(path, "permutation"));
  const std::string fp = at(path, "filling_maps");
  const Json& fm = need(j, "filling_maps", path);
  if (!fm.is_array()) throw SchemaError(fp, "expected an array");
  for (std::size_t k = 0; k < fm.size(); ++k) s.filling_maps.push_back(indices_from_json(fm[k], at(fp, k)));
  return s;
}

Json encode_point_map(const std::vector<std::size_t>& image) {
  Json j = header("point_map");
  j["image"] = image;
  return j;
}

std::vector<std::size_t> decode_point_map(const Json& j, const std::string& path) {
  check_header(j, "point_map", path);
  return indices_from_json(need(j, "image", path), at(path, "image"));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json encode_report(const ReportDocument& r) {
  Json j = header("report");
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj = Json::object();
    cj["name"] = c.name;
    cj["pass"] = c.pass ? Json(*c.pass) : Json(nullptr);
    Json consts = Json::object();
    for (const auto& [k, v] : c.constants) consts[k] = real_to_json(v);
    cj["constants"] = std::move(consts);
    Json ws = Json::array();
    for (const auto& w : c.witnesses)
      ws.push_back(Json{{"role", w.role}, {"points", w.points}, {"radius", real_to_json(w.radius)},
                        {"value", real_to_json(w.value)}});
    cj["witnesses"] = std::move(ws);
    cj["scale_range"] = Json::array({real_to_json(c.r_min), real_to_json(c.r_max)});
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  if (!r.extra.empty()) j["extra"] = r.extra;
  Json inputs = Json::array();
  for (const auto& in : r.inputs) inputs.push_back(Json{{"path", in.path}, {"sha256", in.sha256}});
  j["provenance"] = Json{{"inputs", std::move(inputs)}, {"tool", r.tool}};
  j["timestamp"] = r.timestamp;
  return j;
}

ReportDocument decode_report(const Json& j, const std::string& path) {
  check_header(j, "report", path);
  ReportDocument r;
  const std::string cp = at(path, "checks");
  const Json& checks = need(j, "checks", path);
  if (!checks.is_array()) throw SchemaError(cp, "expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string p = at(cp, i);
    const Json& c = checks[i];
    PropertyReport pr;
    pr.name = string_from_json(need(c, "name", p), at(p, "name"));
    const Json& pass = need(c, "pass", p);
    if (pass.is_boolean())
      pr.pass = pass.get<bool>();
    else if (!pass.is_null())
      throw SchemaError(at(p, "pass"), "expected a boolean or null");
    const Json& consts = need(c, "constants", p);
    if (!consts.is_object()) throw SchemaError(at(p, "constants"), "expected an object");
    for (const auto& [k, v] : consts.items()) pr.constants.emplace_back(k, real_from_json(v, at(p, "constants") + "." + k));
    const Json& ws = need(c, "witnesses", p);
    if (!ws.is_array()) throw SchemaError(at(p, "witnesses"), "expected an array");
    for (std::size_t w = 0; w < ws.size(); ++w) {
      const std::string wp = at(at(p, "witnesses"), w);
      Witness wi;
      wi.role = string_from_json(need(ws[w], "role", wp), at(wp, "role"));
      wi.points = indices_from_json(need(ws[w], "points", wp), at(wp, "points"));
      wi.radius = real_from_json(need(ws[w], "radius", wp), at(wp, "radius"));
      wi.value = real_from_json(need(ws[w], "value", wp), at(wp, "value"));
      pr.witnesses.push_back(std::move(wi));
    }
    const Json& sr = need(c, "scale_range", p);
    if (!sr.is_array() || sr.size() != 2) throw SchemaError(at(p, "scale_range"), "expected [r_min, r_max]");
    pr.r_min = real_from_json(sr[0], at(at(p, "scale_range"), std::size_t{0}));
    pr.r_max = real_from_json(sr[1], at(at(p, "scale_range"), std::size_t{1}));
    r.checks.push_back(std::move(pr));
  }
  if (j.contains("extra")) r.extra = j["extra"];
  const std::string pp = at(path, "provenance");
  const Json& prov = need(j, "provenance", path);
  r.tool = string_from_json(need(prov, "tool", pp), at(pp, "tool"));
  const Json& inputs = need(prov, "inputs", pp);
  if (!inputs.is_array()) throw SchemaError(at(pp, "inputs"), "expected an array");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string ip = at(at(pp, "inputs"), i);
    r.inputs.push_back({string_from_json(need(inputs[i], "path", ip), at(ip, "path")),
                        string_from_json(need(inputs[i], "sha256", ip), at(ip, "sha256"))});
  }
  if (j.contains("timestamp")) r.timestamp = string_from_json(j["timestamp"], at(path, "timestamp"));
  return r;
}

std::string report_digest(const Json& report) {
  Json copy = report;
  copy.erase("timestamp");
  return json_digest(copy);
}

// ---------------------------------------------------------------------------
// Digests and files
// ---------------------------------------------------------------------------

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string json_digest(const Json& j) { return sha256_hex(j.dump()); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(1) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << dump_json(j);
  if (!out) throw InvalidInput("write failed for " + path);
}

}  // namespace sewkit
