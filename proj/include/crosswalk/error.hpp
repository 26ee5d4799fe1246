#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crosswalk {

// Root of every error raised by the library. The CLI maps subclasses of
// ExecutionError to exit code 3 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class JsonSyntaxError : public Error {
 public:
  using Error::Error;
};

// A document is structurally valid JSON/YAML/Turtle but does not match the
// expected file format (missing field, wrong type, unknown enum value).
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnknownColumnError : public Error {
 public:
  explicit UnknownColumnError(std::string column)
      : Error("unknown column \"" + column + "\""), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class UnsupportedFeatureError : public Error {
 public:
  UnsupportedFeatureError(std::string feature, std::string location)
      : Error("unsupported feature: " + feature +
              (location.empty() ? "" : " (at " + location + ")")),
        feature_(std::move(feature)),
        location_(std::move(location)) {}
  const std::string& feature() const noexcept { return feature_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string feature_;
  std::string location_;
};

class DanglingJoinError : public Error {
 public:
  DanglingJoinError(const std::string& from, const std::string& parent)
      : Error("mapping \"" + from + "\" joins unknown mapping \"" + parent + "\"") {}
};

// Errors raised while executing a mapping over data. They carry the triples
// map and, when known, the row that triggered them.
class ExecutionError : public Error {
 public:
  ExecutionError(const std::string& message, std::string map_id = {},
                 std::optional<std::size_t> row = std::nullopt)
      : Error(decorate(message, map_id, row)), map_id_(std::move(map_id)), row_(row) {}
  const std::string& map_id() const noexcept { return map_id_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  static std::string decorate(const std::string& message, const std::string& map_id,
                              std::optional<std::size_t> row) {
    std::string out = message;
    if (!map_id.empty()) out += " [map " + map_id;
    if (!map_id.empty() && row) out += ", row " + std::to_string(*row);
    if (!map_id.empty()) out += "]";
    return out;
  }

  std::string map_id_;
  std::optional<std::size_t> row_;
};

// Collects non-fatal findings (ignored JSON fields, overridden prefixes).
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace crosswalk
