#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/error.hpp"

// Small helpers shared by the JSON file formats (schemas, questionnaires,
// responses, decision sets, template packs, pipeline configs).
namespace crosswalk::json_util {

using Json = nlohmann::ordered_json;

// Throws JsonSyntaxError with the parser's byte offset.
Json parse(std::string_view text);

// Field-by-field reader for a JSON object. Keys that are never read are
// reported by finish() as warnings, or rejected by finish_strict().
class ObjectReader {
 public:
  ObjectReader(const Json& object, std::string context, Diagnostics* diagnostics = nullptr);

  bool has(const std::string& key) const;
  const Json* get(const std::string& key);

  std::string required_string(const std::string& key);
  std::optional<std::string> optional_string(const std::string& key);
  std::optional<bool> optional_bool(const std::string& key);
  const Json& required_array(const std::string& key);
  const Json& required_object(const std::string& key);
  std::vector<std::string> optional_string_array(const std::string& key);

  void finish();
  void finish_strict();

  const std::string& context() const noexcept { return context_; }

 private:
  const Json& object_;
  std::string context_;
  Diagnostics* diagnostics_;
  std::set<std::string> consumed_;
};

}  // namespace crosswalk::json_util
