#include "sewkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sewkit/error.hpp"
#include "sewkit/generators.hpp"
#include "sewkit/io.hpp"
#include "sewkit/map_analysis.hpp"
#include "sewkit/map_glue.hpp"
#include "sewkit/sewing.hpp"
#include "sewkit/space_analysis.hpp"
#include "sewkit/sphericalize.hpp"

namespace sewkit {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::string> checks;
  std::optional<double> epsilon;
  std::optional<double> threshold;
  std::optional<std::size_t> max_points;
  std::uint64_t seed = 0;
  std::string csv;

  // generate
  std::string kind;
  int level = 2;
  std::size_t size = 16;
  double alpha = 0.5;
  int turns = 1;
  // sphericalize
  std::size_t basepoint = 0;
  // diagnose
  std::string subset, subset2;
  // glue-map
  std::string map;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void need_inputs(const Options& o, std::size_t lo, std::size_t hi) {
  if (o.inputs.size() < lo || o.inputs.size() > hi)
    throw InvalidInput("expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                       " input file(s), got " + std::to_string(o.inputs.size()));
}

class Command {
 public:
  Command(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  Json load(const std::string& path) {
    report_.inputs.push_back({path, sha256_hex(read_text_file(path))});
    return read_json_file(path);
  }

  // A space document, or the metric stored in a sewn document.
  SpaceDocument load_space(const std::string& path, bool validate = true) {
    Json j = load(path);
    if (j.is_object() && j.value("kind", "") == "sewn") {
      if (!j.contains("space")) throw SchemaError("$.space", "missing field");
      return decode_space(j["space"], false, "$.space");
    }
    return decode_space(j, validate);
  }

  void add(PropertyReport r) { report_.checks.push_back(std::move(r)); }
  Json& extra() { return report_.extra; }

  void write(const std::string& path, const Json& j) {
    if (path.empty() || path == "-")
      out_ << dump_json(j);
    else
      write_json_file(path, j);
  }

  // Writes the report to -o (or stdout) and turns its verdicts into an exit code.
  int finish(const std::string& path) {
    report_.timestamp = utc_now();
    write(path, encode_report(report_));
    const bool ok = std::all_of(report_.checks.begin(), report_.checks.end(),
                                [](const PropertyReport& r) { return r.pass.value_or(true); });
    return ok ? kExitOk : kExitCheckFailed;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  ReportDocument report_;
};

void write_csv(const std::string& path, const std::string& header, const std::vector<std::pair<double, double>>& rows) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f.precision(17);
  f << header << "\n";
  for (const auto& [a, b] : rows) f << a << "," << b << "\n";
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 1);
  Command c(o, out);
  const Json j = c.load(o.inputs[0]);
  const std::string kind = j.is_object() ? j.value("kind", "") : "";
  PropertyReport r;
  if (kind == "bundle") {
    r.name = "bundle";
    try {
      decode_bundle(j);
      r.pass = true;
    } catch (const SchemaError& e) {
      // Only a broken bundle invariant is a failed check; malformed files stay input errors.
      if (e.path != "$") throw;
      r.pass = false;
      c.extra()["error"] = e.what();
    }
  } else if (kind == "sewn") {
    r.name = "sewn";
    const SewnSpace s = decode_sewn(j);
    r.constants = {{"points", static_cast<double>(s.space.size())}, {"L", s.certificates.L},
                   {"c_flat", s.certificates.c_flat}, {"min_ratio", s.certificates.min_ratio}};
    r.pass = true;
  } else {
    r.name = "metric";
    const SpaceDocument doc = decode_space(j, false);
    const ValidationReport v = validate_metric(doc.space);
    r.constants = {{"points", static_cast<double>(v.points)}, {"violations", static_cast<double>(v.violation_count)}};
    for (const auto& w : v.violations) {
      static const char* names[] = {"diagonal", "symmetry", "positivity", "triangle"};
      const std::size_t i = w.i, rel = w.j, k = w.k;
      r.witnesses.push_back({names[static_cast<int>(w.kind)], {i, rel, k}, 0,
                             doc.space(i, k) - doc.space(i, rel) - doc.space(rel, k)});
    }
    r.pass = v.valid();
  }
  c.add(std::move(r));
  return c.finish(o.output);
}

int cmd_generate(const Options& o, std::ostream& out) {
  Command c(o, out);
  Json doc;
  if (o.kind == "carpet") {
    const CarpetNet net = carpet_net(o.level);
    SpaceDocument d;
    d.name = "carpet_net(" + std::to_string(o.level) + ")";
    d.space = net.space;
    d.form = MetricForm::euclidean;
    for (std::size_t k = 0; k < net.hole_cycles.size(); ++k) d.subsets.emplace("hole:" + std::to_string(k), Subset(net.hole_cycles[k]));
    d.subsets.emplace("outer", Subset(net.outer_cycle));
    doc = encode_space(d);
  } else if (o.kind == "carpet-disks") {
    doc = encode_bundle(carpet_with_disks(o.level).bundle);
  } else if (o.kind == "rotation") {
    doc = encode_map_spec(carpet_rotation(carpet_with_disks(o.level), o.turns));
  } else if (o.kind == "circle") {
    SpaceDocument d = SpaceDocument::matrix("circle_net(" + std::to_string(o.size) + ")", circle_net(o.size));
    doc = encode_space(d);
  } else if (o.kind == "disk") {
    const DiskNet dn = disk_net(o.size);
    SpaceDocument d = SpaceDocument::matrix("disk_net(" + std::to_string(o.size) + ")", dn.space);
    d.subsets.emplace("boundary", dn.boundary);
    doc = encode_space(d);
  } else if (o.kind == "interval") {
    SpaceDocument d;
    d.name = "interval_net(" + std::to_string(o.size) + ")";
    d.space = interval_net(o.size);
    d.form = MetricForm::euclidean;
    doc = encode_space(d);
  } else if (o.kind == "snowflake") {
    auto inner = std::make_shared<SpaceDocument>();
    inner->name = "interval_net(" + std::to_string(o.size) + ")";
    inner->space = interval_net(o.size);
    inner->form = MetricForm::euclidean;
    SpaceDocument d;
    d.name = "snowflake";
    d.form = MetricForm::snowflake;
    d.alpha = o.alpha;
    d.space = snowflake(inner->space, o.alpha);
    d.inner = std::move(inner);
    doc = encode_space(d);
  } else {
    throw InvalidInput("unknown generator '" + o.kind +
                       "' (carpet, carpet-disks, rotation, circle, disk, interval, snowflake)");
  }
  c.write(o.output, doc);
  return kExitOk;
}

int cmd_sew(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 1);
  Command c(o, out);
  const ScenarioBundle b = decode_bundle(c.load(o.inputs[0]));
  const SewnSpace s = sew(b);
  if (o.output.empty()) throw InvalidInput("sew needs -o for the sewn document");
  c.write(o.output, encode_sewn(s));
  return kExitOk;
}

int cmd_sphericalize(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 1);
  Command c(o, out);
  const SpaceDocument in = c.load_space(o.inputs[0]);
  const SphericalizedSpace sph = sphericalize(in.space, o.basepoint);
  std::vector<std::string> labels;
  for (std::size_t i : sph.original)
    labels.push_back(in.space.labels().empty() ? std::to_string(i) : in.space.labels()[i]);
  SpaceDocument d = SpaceDocument::matrix(in.name + " sphericalized at " + std::to_string(o.basepoint),
                                          FiniteMetricSpace(sph.space.table(), labels));
  for (const auto& [name, s] : in.subsets) {
    std::vector<std::size_t> kept;
    for (std::size_t i : s)
      if (i != sph.basepoint) kept.push_back(sphericalized_index(sph, i));
    d.subsets.emplace(name, Subset(std::move(kept)));
  }
  if (o.output.empty()) throw InvalidInput("sphericalize needs -o for the output space");
  c.write(o.output, encode_space(d));
  return kExitOk;
}

const Subset& named_subset(const SpaceDocument& d, const std::string& name) {
  if (name.empty()) throw InvalidInput("this check needs --subset");
  auto it = d.subsets.find(name);
  if (it == d.subsets.end()) throw InvalidInput("no subset named '" + name + "'");
  return it->second;
}

// Checks whose constant must stay below the threshold, and those that must stay above it.
void apply_threshold(PropertyReport& r, const char* key, bool upper, std::optional<double> threshold) {
  if (!threshold) return;
  const double v = r.constant(key).value();
  r.pass = upper ? v <= *threshold : v >= *threshold;
}

int cmd_diagnose(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 1);
  if (o.checks.empty()) throw InvalidInput("diagnose needs at least one --check");
  Command c(o, out);
  const SpaceDocument d = c.load_space(o.inputs[0]);
  const FiniteMetricSpace& X = d.space;
  const double eps = o.epsilon.value_or(default_epsilon(X));
  const std::size_t centers = o.max_points.value_or(kDefaultMaxCenters);
  auto boundary_components = [&] {
    std::vector<Subset> comps;
    for (const auto& [name, s] : d.subsets)
      if (name.rfind(o.subset.empty() ? "hole:" : o.subset, 0) == 0) comps.push_back(s);
    if (comps.empty()) throw InvalidInput("no subsets match the boundary prefix");
    return comps;
  };

  for (const auto& check : o.checks) {
    PropertyReport r;
    if (check == "metric") {
      const ValidationReport v = validate_metric(X);
      r = {"metric", {{"violations", static_cast<double>(v.violation_count)}}, 0, 0, {}, v.valid()};
    } else if (check == "bt") {
      r = to_report(bounded_turning(X, eps));
      apply_threshold(r, "lambda", true, o.threshold);
    } else if (check == "llc") {
      r = to_report(llc_check(X, eps, centers));
      apply_threshold(r, "lambda", true, o.threshold);
    } else if (check == "doubling") {
      r = to_report(doubling_constant(X, centers));
      apply_threshold(r, "N", true, o.threshold);
    } else if (check == "porosity") {
      r = to_report(porosity(X, named_subset(d, o.subset), centers));
      apply_threshold(r, "p", false, o.threshold);
    } else if (check == "rel-doubling") {
      r = to_report(relative_doubling(X, boundary_components(), 0.5, centers));
      apply_threshold(r, "N_eps", true, o.threshold);
    } else if (check == "rel-porosity") {
      r = to_report(relative_porosity(X, boundary_components(), eps, centers));
      apply_threshold(r, "p_X", false, o.threshold);
    } else if (check == "ahlfors") {
      const AhlforsFit fit = ahlfors_dimension(X, centers);
      r = to_report(fit);
      if (!o.csv.empty()) {
        std::vector<std::pair<double, double>> rows;
        for (std::size_t i = 0; i < fit.log_r.size(); ++i) rows.emplace_back(fit.log_r[i], fit.log_median[i]);
        write_csv(o.csv, "log_r,log_N", rows);
      }
    } else if (check == "perfect" || check == "perfectness") {
      r = to_report(uniform_perfectness(X, named_subset(d, o.subset)));
      apply_threshold(r, "lambda", true, o.threshold);
    } else if (check == "angle") {
      r = to_report(angle(X, named_subset(d, o.subset), named_subset(d, o.subset2)));
      apply_threshold(r, "c", false, o.threshold);
    } else {
      throw InvalidInput("unknown check '" + check +
                         "' (metric, bt, llc, doubling, porosity, rel-doubling, rel-porosity, ahlfors, perfect, "
                         "angle)");
    }
    c.add(std::move(r));
  }
  return c.finish(o.output);
}

int cmd_distort(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 2);
  Command c(o, out);
  const SpaceDocument src = c.load_space(o.inputs[0]);
  const SpaceDocument dst = o.inputs.size() == 2 ? c.load_space(o.inputs[1]) : src;
  PointMap f = o.map.empty() ? PointMap::identity_between(src.space, dst.space)
                             : PointMap{src.space, dst.space, decode_point_map(c.load(o.map))};
  f.check();
  const std::string kind = o.checks.empty() ? "qs" : o.checks.front();
  DistortionProfile prof;
  if (kind == "qs")
    prof = qs_distortion(f, {o.max_points.value_or(kDefaultTripleCap), o.seed});
  else if (kind == "qm")
    prof = qm_distortion(f, {o.max_points.value_or(kDefaultQuadrupleCap), o.seed});
  else
    throw InvalidInput("distort checks are qs and qm");

  PropertyReport r;
  r.name = kind;
  double worst = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < prof.samples.size(); ++i) {
    const double ratio = prof.samples[i].s / prof.samples[i].t;
    if (ratio > worst) worst = ratio, worst_i = i;
  }
  r.constants = {{"max_s", prof.max_s()},
                 {"max_s_over_t", worst},
                 {"samples", static_cast<double>(prof.samples.size())},
                 {"population", static_cast<double>(prof.population)},
                 {"exhaustive", prof.exhaustive ? 1.0 : 0.0}};
  if (!prof.samples.empty()) r.witnesses.push_back({"largest s/t", {worst_i}, prof.samples[worst_i].t, worst});
  if (!prof.envelope.empty()) {
    r.r_min = prof.envelope.front().t;
    r.r_max = prof.envelope.back().t;
  }
  if (o.threshold) r.pass = worst <= *o.threshold;
  Json env = Json::array();
  for (const auto& e : prof.envelope) env.push_back(Json::array({real_to_json(e.t), real_to_json(e.s)}));
  c.extra()["envelope"] = std::move(env);
  if (!o.csv.empty()) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& smp : prof.samples) rows.emplace_back(smp.t, smp.s);
    write_csv(o.csv, "t,s", rows);
  }
  c.add(std::move(r));
  return c.finish(o.output);
}

int cmd_glue_map(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 2);
  if (o.map.empty()) throw InvalidInput("glue-map needs --map");
  Command c(o, out);
  auto src = std::make_shared<const SewnSpace>(decode_sewn(c.load(o.inputs[0])));
  auto dst = o.inputs.size() == 2 ? std::make_shared<const SewnSpace>(decode_sewn(c.load(o.inputs[1]))) : src;
  MapSpec spec = decode_map_spec(c.load(o.map));

  PropertyReport compat{"seam_compatibility", {}, 0, 0, {}, true};
  std::optional<GluedMap> g;
  try {
    g = glue_maps(src, dst, std::move(spec));
  } catch (const CompatibilityError& e) {
    compat.pass = false;
    compat.witnesses.push_back({"seam point", {e.component, e.seam_point}, 0, 0});
    c.extra()["error"] = e.what();
  }
  c.add(std::move(compat));
  if (g) {
    const GluedCertificate cert = certify_glued_qm(*g, {o.max_points.value_or(kDefaultQuadrupleCap), o.seed});
    PropertyReport r;
    r.name = "glued_qm";
    r.constants = {{"max_s", cert.global.max_s()},
                   {"isometry", cert.isometry ? 1.0 : 0.0},
                   {"max_deviation", cert.max_deviation},
                   {"domination", cert.domination},
                   {"seam_angle_source", cert.seam_angle_source},
                   {"seam_angle_target", cert.seam_angle_target},
                   {"seam_perfectness", cert.seam_perfectness},
                   {"mu", cert.mu}};
    r.pass = std::isfinite(cert.global.max_s()) && cert.domination <= o.threshold.value_or(2.0);
    c.add(std::move(r));
    Json pieces = Json::array();
    for (const auto& p : cert.pieces)
      pieces.push_back(Json{{"name", p.name}, {"qs_max", real_to_json(p.qs_max)}, {"qm_max", real_to_json(p.qm.max_s())}});
    c.extra()["pieces"] = std::move(pieces);
    c.extra()["assembled"] = encode_point_map(g->assembled.image);
  }
  return c.finish(o.output);
}

int cmd_certify(const Options& o, std::ostream& out) {
  need_inputs(o, 1, 1);
  Command c(o, out);
  const SewnSpace s = decode_sewn(c.load(o.inputs[0]));
  CertifyOptions opt;
  opt.epsilon = o.epsilon;
  if (o.max_points) opt.max_centers = *o.max_points;
  if (o.threshold) opt.slack = *o.threshold;
  const SewnCertificate cert = certify_sewn(s, opt);
  for (const auto& r : cert.checks) c.add(r);
  c.extra()["certificates"] = Json{{"epsilon", real_to_json(cert.epsilon)},
                                   {"L", real_to_json(cert.L)},
                                   {"c_flat", real_to_json(cert.c_flat)},
                                   {"Delta", real_to_json(cert.Delta)},
                                   {"bt_pieces", real_to_json(cert.bt_pieces)},
                                   {"bt_bound", real_to_json(cert.bt_bound)},
                                   {"llc_pieces", real_to_json(cert.llc_pieces)},
                                   {"llc_bound", real_to_json(cert.llc_bound)}};
  return c.finish(o.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sewing of metric spaces: generators, certificates and map gluing", "sewkit"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_output = true) {
    sub->add_option("-i,--input", o.inputs, "input document (repeatable)");
    if (with_output) sub->add_option("-o,--output", o.output, "output file, '-' or absent for stdout");
    sub->add_option("--check", o.checks, "check to run (repeatable or comma separated)")->delimiter(',');
    sub->add_option("--epsilon", o.epsilon, "connectivity scale");
    sub->add_option("--threshold", o.threshold, "pass threshold for the reported constant");
    sub->add_option("--max-points", o.max_points, "cap on centers or enumerated tuples");
    sub->add_option("--seed", o.seed, "stride phase for subsampled enumeration");
    sub->add_option("--csv", o.csv, "scatter data output");
  };

  auto* validate = app.add_subcommand("validate", "check a space, bundle or sewn document");
  common(validate);
  auto* generate = app.add_subcommand("generate", "emit a generator space, bundle or rotation map spec");
  common(generate);
  generate->add_option("kind", o.kind, "carpet, carpet-disks, rotation, circle, disk, interval, snowflake")->required();
  generate->add_option("--level", o.level, "carpet level");
  generate->add_option("--size", o.size, "point parameter for circle, disk, interval, snowflake");
  generate->add_option("--alpha", o.alpha, "snowflake exponent");
  generate->add_option("--turns", o.turns, "quarter turns for rotation");
  auto* sewc = app.add_subcommand("sew", "sew a bundle into a sewn document");
  common(sewc);
  auto* sph = app.add_subcommand("sphericalize", "sphericalize a space at a basepoint");
  common(sph);
  sph->add_option("--basepoint", o.basepoint, "basepoint index")->required();
  auto* diagnose = app.add_subcommand("diagnose", "run geometric diagnostics on a space");
  common(diagnose);
  diagnose->add_option("--subset", o.subset, "named subset, or boundary prefix for relative checks");
  diagnose->add_option("--subset2", o.subset2, "second subset for angle");
  auto* distort = app.add_subcommand("distort", "distortion profile of a point map");
  common(distort);
  distort->add_option("--map", o.map, "point map document (identity when absent)");
  auto* glue = app.add_subcommand("glue-map", "assemble and certify a glued map");
  common(glue);
  glue->add_option("--map", o.map, "map spec document")->required();
  auto* certify = app.add_subcommand("certify", "certify a sewn document");
  common(certify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*generate) return cmd_generate(o, out);
    if (*sewc) return cmd_sew(o, out);
    if (*sph) return cmd_sphericalize(o, out);
    if (*diagnose) return cmd_diagnose(o, out);
    if (*distort) return cmd_distort(o, out);
    if (*glue) return cmd_glue_map(o, out);
    if (*certify) return cmd_certify(o, out);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace sewkit
