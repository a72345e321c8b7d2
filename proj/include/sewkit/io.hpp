#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sewkit/generators.hpp"
#include "sewkit/map_analysis.hpp"
#include "sewkit/map_glue.hpp"
#include "sewkit/sewing.hpp"
#include "sewkit/space_analysis.hpp"

namespace sewkit {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "sewkit 0.1.0";

enum class MetricForm { matrix, euclidean, snowflake };

struct SpaceDocument {
  std::string name;
  FiniteMetricSpace space;
  MetricForm form = MetricForm::matrix;
  double alpha = 1;                             // snowflake exponent
  std::shared_ptr<const SpaceDocument> inner;   // snowflake source
  std::map<std::string, Subset> subsets;

  // Matrix form of an arbitrary space.
  static SpaceDocument matrix(std::string name, FiniteMetricSpace space);
};

// Reals go out as the shortest decimal that reads back to the same double;
// infinities and NaN become the strings "inf", "-inf" and "nan".
Json real_to_json(double v);
double real_from_json(const Json& j, const std::string& path);

Json encode_space(const SpaceDocument& doc);
// Matrix entries are checked against every metric axiom when validate is set.
// Euclidean and snowflake forms are metrics by construction.
SpaceDocument decode_space(const Json& j, bool validate = true, const std::string& path = "$");

Json encode_bundle(const ScenarioBundle& bundle);
// The result passes check_bundle.
ScenarioBundle decode_bundle(const Json& j, const std::string& path = "$");

// The bundle, d_Sigma in matrix form and the sewing certificates.
Json encode_sewn(const SewnSpace& sewn);
// Re-sews the stored bundle and requires the stored metric to match it bit for bit.
SewnSpace decode_sewn(const Json& j, const std::string& path = "$");

Json encode_map_spec(const MapSpec& spec);
MapSpec decode_map_spec(const Json& j, const std::string& path = "$");

Json encode_point_map(const std::vector<std::size_t>& image);
std::vector<std::size_t> decode_point_map(const Json& j, const std::string& path = "$");

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct ReportDocument {
  std::vector<PropertyReport> checks;
  std::vector<InputDigest> inputs;
  std::string tool = kToolVersion;
  std::string timestamp;  // excluded from the digest
  Json extra = Json::object();
};

Json encode_report(const ReportDocument& report);
ReportDocument decode_report(const Json& j, const std::string& path = "$");
// sha256 of the report with the timestamp removed.
std::string report_digest(const Json& report);

std::string sha256_hex(const std::string& bytes);
// Digest of the compact serialization.
std::string json_digest(const Json& j);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump_json(const Json& j);

}  // namespace sewkit
