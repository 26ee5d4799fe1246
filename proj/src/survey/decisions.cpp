#include <algorithm>

#include "crosswalk/iri.hpp"
#include "crosswalk/json_util.hpp"
#include "crosswalk/survey.hpp"

namespace crosswalk::survey {

using json_util::Json;
using json_util::ObjectReader;

namespace {

bool valid_base(const std::string& iri) {
  return is_absolute_iri(iri) && (iri.back() == '/' || iri.back() == '#');
}

std::string answer_text(const AnswerValue& value) {
  if (auto b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  if (auto s = std::get_if<std::string>(&value)) return *s;
  const auto& list = std::get<std::vector<std::string>>(value);
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) out += (i ? ", " : "") + list[i];
  return out;
}

std::map<std::string, std::string> string_map(const Json* node, const std::string& field) {
  std::map<std::string, std::string> out;
  if (!node || node->is_null()) return out;
  if (!node->is_object()) throw FormatError("decisions: \"" + field + "\" must be an object");
  for (const auto& [k, v] : node->items()) {
    if (!v.is_string()) throw FormatError("decisions: \"" + field + "\" values must be text");
    out.emplace(k, v.get<std::string>());
  }
  return out;
}

}  // namespace

void validate(const DecisionSet& decisions) {
  if (!valid_base(decisions.base_iri)) throw InvalidBaseIriError(decisions.base_iri);
  for (const auto& [prefix, iri] : decisions.prefix_map)
    if (!is_absolute_iri(iri))
      throw FormatError("decisions: namespace for prefix \"" + prefix + "\" is not an absolute IRI");
}

DecisionSet parse_decisions(std::string_view json_text) {
  auto doc = json_util::parse(json_text);
  ObjectReader root(doc, "decisions");
  DecisionSet d;
  d.base_iri = root.required_string("base_iri");
  d.prefix_map = string_map(root.get("prefix_map"), "prefix_map");
  for (auto& f : root.optional_string_array("enabled_functions")) d.enabled_functions.insert(std::move(f));
  d.vocabulary_slots = string_map(root.get("vocabulary_slots"), "vocabulary_slots");
  for (auto& c : root.optional_string_array("included_columns")) d.included_columns.insert(std::move(c));
  d.feedback = root.optional_string_array("feedback");
  root.finish_strict();
  validate(d);
  return d;
}

std::string decisions_to_json(const DecisionSet& d) {
  Json doc;
  doc["base_iri"] = d.base_iri;
  doc["prefix_map"] = Json::object();
  for (const auto& [k, v] : d.prefix_map) doc["prefix_map"][k] = v;
  doc["enabled_functions"] = Json::array();
  for (const auto& f : d.enabled_functions) doc["enabled_functions"].push_back(f);
  doc["vocabulary_slots"] = Json::object();
  for (const auto& [k, v] : d.vocabulary_slots) doc["vocabulary_slots"][k] = v;
  doc["included_columns"] = Json::array();
  for (const auto& c : d.included_columns) doc["included_columns"].push_back(c);
  doc["feedback"] = d.feedback;
  return doc.dump(2) + "\n";
}

DecisionSet derive_decisions(const ResponseSet& responses, const Questionnaire& questionnaire,
                             const DecisionSet& defaults, const std::set<std::string>& known_functions) {
  for (const auto& q : questionnaire.questions())
    if (auto ef = std::get_if<EnableFunction>(&q.binding); ef && !known_functions.count(ef->function))
      throw UnknownFunctionError(ef->function);

  DecisionSet out = defaults;
  // Questionnaire order, so the result never depends on response key order.
  for (const auto& q : questionnaire.questions()) {
    auto it = responses.answers.find(q.code);
    if (it == responses.answers.end()) continue;
    const AnswerValue& value = it->second;
    std::visit(
        [&](const auto& b) {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, EnableFunction>) {
            if (std::get<bool>(value))
              out.enabled_functions.insert(b.function);
            else
              out.enabled_functions.erase(b.function);
          } else if constexpr (std::is_same_v<B, IncludeColumn>) {
            if (std::get<bool>(value))
              out.included_columns.insert(b.column);
            else
              out.included_columns.erase(b.column);
          } else if constexpr (std::is_same_v<B, SelectVocabulary>) {
            if (auto s = std::get_if<std::string>(&value)) {
              out.vocabulary_slots[b.slot] = *s;
            } else {
              const auto& picked = std::get<std::vector<std::string>>(value);
              const std::string* first = nullptr;
              for (const auto& opt : q.options) {
                if (std::find(picked.begin(), picked.end(), opt) != picked.end()) {
                  first = &opt;
                  break;
                }
              }
              if (first)
                out.vocabulary_slots[b.slot] = *first;
              else
                out.vocabulary_slots.erase(b.slot);
            }
          } else if constexpr (std::is_same_v<B, SetBaseIri>) {
            auto iri = trim(std::get<std::string>(value));
            if (!valid_base(iri)) throw InvalidBaseIriError(iri);
            out.base_iri = iri;
          } else {
            out.feedback.push_back(answer_text(value));
          }
        },
        q.binding);
  }
  validate(out);
  return out;
}

std::vector<FeedbackItem> feedback_report(const ResponseSet& responses, const Questionnaire& questionnaire) {
  std::vector<FeedbackItem> items;
  for (const auto& q : questionnaire.questions()) {
    if (q.kind != QuestionKind::free_text) continue;
    auto it = responses.answers.find(q.code);
    if (it == responses.answers.end()) continue;
    if (auto s = std::get_if<std::string>(&it->second)) items.push_back({q.code, *s});
  }
  return items;
}

}  // namespace crosswalk::survey
