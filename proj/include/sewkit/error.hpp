#pragma once

#include <stdexcept>
#include <string>

namespace sewkit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-square tables, NaN entries, out-of-range indices,
// bundles that violate their own invariants.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Chain metrization identified two distinct points.
class CollapseError : public Error {
 public:
  CollapseError(std::size_t i, std::size_t j)
      : Error("chain metrization collapsed distinct points " + std::to_string(i) + " and " +
              std::to_string(j)),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

// The sewn metric is not comparable to the quasimetric with the certified constant.
class ComparabilityError : public Error {
 public:
  ComparabilityError(std::size_t i, std::size_t j, double ratio)
      : Error("comparability q >= d >= q/L fails at pair (" + std::to_string(i) + ", " +
              std::to_string(j) + "), d/q = " + std::to_string(ratio)),
        first(i),
        second(j),
        ratio(ratio) {}
  std::size_t first;
  std::size_t second;
  double ratio;
};

// The epsilon-graph is disconnected; `first` and `second` lie in different components.
class DisconnectedError : public Error {
 public:
  DisconnectedError(std::size_t a, std::size_t b)
      : Error("epsilon-graph is disconnected: points " + std::to_string(a) + " and " +
              std::to_string(b) + " lie in different components"),
        first(a),
        second(b) {}
  std::size_t first;
  std::size_t second;
};

// A glued map violates the seam compatibility condition.
class CompatibilityError : public Error {
 public:
  CompatibilityError(std::size_t component, std::size_t seam_point, const std::string& what)
      : Error("seam compatibility violated on component " + std::to_string(component) +
              " at base point " + std::to_string(seam_point) + ": " + what),
        component(component),
        seam_point(seam_point) {}
  std::size_t component;
  std::size_t seam_point;
};

// Document decoding failed; `path` names the offending field (JSON-pointer style).
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error("schema error at " + path + ": " + what), path(std::move(path)) {}
  std::string path;
};

}  // namespace sewkit
