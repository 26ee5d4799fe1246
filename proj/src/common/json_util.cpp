#include "crosswalk/json_util.hpp"

namespace crosswalk::json_util {

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonSyntaxError(std::string("JSON syntax error: ") + e.what());
  }
}

ObjectReader::ObjectReader(const Json& object, std::string context, Diagnostics* diagnostics)
    : object_(object), context_(std::move(context)), diagnostics_(diagnostics) {
  if (!object_.is_object()) throw FormatError(context_ + ": expected a JSON object");
}

bool ObjectReader::has(const std::string& key) const { return object_.contains(key); }

const Json* ObjectReader::get(const std::string& key) {
  auto it = object_.find(key);
  if (it == object_.end()) return nullptr;
  consumed_.insert(key);
  return &*it;
}

std::string ObjectReader::required_string(const std::string& key) {
  auto v = optional_string(key);
  if (!v) throw FormatError(context_ + ": missing string field \"" + key + "\"");
  return *v;
}

std::optional<std::string> ObjectReader::optional_string(const std::string& key) {
  const Json* v = get(key);
  if (!v || v->is_null()) return std::nullopt;
  if (!v->is_string()) throw FormatError(context_ + ": field \"" + key + "\" must be a string");
  return v->get<std::string>();
}

std::optional<bool> ObjectReader::optional_bool(const std::string& key) {
  const Json* v = get(key);
  if (!v || v->is_null()) return std::nullopt;
  if (!v->is_boolean()) throw FormatError(context_ + ": field \"" + key + "\" must be a boolean");
  return v->get<bool>();
}

const Json& ObjectReader::required_array(const std::string& key) {
  const Json* v = get(key);
  if (!v || !v->is_array()) throw FormatError(context_ + ": field \"" + key + "\" must be an array");
  return *v;
}

const Json& ObjectReader::required_object(const std::string& key) {
  const Json* v = get(key);
  if (!v || !v->is_object()) throw FormatError(context_ + ": field \"" + key + "\" must be an object");
  return *v;
}

std::vector<std::string> ObjectReader::optional_string_array(const std::string& key) {
  const Json* v = get(key);
  std::vector<std::string> out;
  if (!v || v->is_null()) return out;
  if (!v->is_array()) throw FormatError(context_ + ": field \"" + key + "\" must be an array of strings");
  for (const auto& item : *v) {
    if (!item.is_string()) throw FormatError(context_ + ": field \"" + key + "\" must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

void ObjectReader::finish() {
  for (const auto& [key, value] : object_.items()) {
    if (!consumed_.count(key) && diagnostics_)
      diagnostics_->warn(context_ + ": ignoring unknown field \"" + key + "\"");
  }
}

void ObjectReader::finish_strict() {
  for (const auto& [key, value] : object_.items())
    if (!consumed_.count(key)) throw FormatError(context_ + ": unknown field \"" + key + "\"");
}

}  // namespace crosswalk::json_util
