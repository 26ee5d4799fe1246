#include <algorithm>
#include <regex>
#include <set>

#include "crosswalk/json_util.hpp"
#include "crosswalk/survey.hpp"

namespace crosswalk::survey {

using json_util::Json;

namespace {

constexpr std::string_view kRespondentKey = "@respondent";
constexpr std::string_view kTimestampKey = "@timestamp";

bool is_instant(const std::string& text) {
  static const std::regex pattern(
      R"(^\d{4}-\d{2}-\d{2}([T ]\d{2}:\d{2}(:\d{2}(\.\d+)?)?(Z|[+-]\d{2}:?\d{2})?)?$)");
  return std::regex_match(text, pattern);
}

AnswerValue check_shape(const Question& q, const Json& value) {
  auto in_options = [&](const std::string& v) {
    return std::find(q.options.begin(), q.options.end(), v) != q.options.end();
  };
  switch (q.kind) {
    case QuestionKind::boolean:
      if (!value.is_boolean()) throw AnswerShapeError(q.code, "expected a boolean");
      return value.get<bool>();
    case QuestionKind::free_text:
      if (!value.is_string()) throw AnswerShapeError(q.code, "expected text");
      return value.get<std::string>();
    case QuestionKind::single_choice: {
      if (!value.is_string()) throw AnswerShapeError(q.code, "expected one option as text");
      auto v = value.get<std::string>();
      if (!in_options(v)) throw AnswerShapeError(q.code, "\"" + v + "\" is not an option");
      return v;
    }
    case QuestionKind::multi_choice: {
      if (!value.is_array()) throw AnswerShapeError(q.code, "expected a list of options");
      std::vector<std::string> picked;
      std::set<std::string> seen;
      for (const auto& item : value) {
        if (!item.is_string()) throw AnswerShapeError(q.code, "list items must be text");
        auto v = item.get<std::string>();
        if (!in_options(v)) throw AnswerShapeError(q.code, "\"" + v + "\" is not an option");
        if (!seen.insert(v).second) throw AnswerShapeError(q.code, "option \"" + v + "\" chosen twice");
        picked.push_back(std::move(v));
      }
      return picked;
    }
  }
  throw AnswerShapeError(q.code, "unsupported question kind");
}

}  // namespace

ResponseSet parse_responses(std::string_view json_text, const Questionnaire& questionnaire) {
  auto doc = json_util::parse(json_text);
  if (!doc.is_object()) throw FormatError("responses: expected a JSON object mapping codes to answers");
  ResponseSet out;
  for (const auto& [key, value] : doc.items()) {
    if (key == kRespondentKey || key == kTimestampKey) {
      if (value.is_null()) continue;
      if (!value.is_string()) throw FormatError("responses: \"" + key + "\" must be text");
      auto text = value.get<std::string>();
      if (key == kTimestampKey) {
        if (!is_instant(text)) throw FormatError("responses: \"" + text + "\" is not an ISO 8601 instant");
        out.timestamp = std::move(text);
      } else {
        out.respondent_id = std::move(text);
      }
      continue;
    }
    const Question* q = questionnaire.find(key);
    if (!q) throw UnknownQuestionError(key);
    if (value.is_null()) continue;
    out.answers.emplace(key, check_shape(*q, value));
  }
  return out;
}

std::string responses_to_json(const ResponseSet& responses) {
  Json doc = Json::object();
  if (responses.respondent_id) doc[std::string(kRespondentKey)] = *responses.respondent_id;
  if (responses.timestamp) doc[std::string(kTimestampKey)] = *responses.timestamp;
  for (const auto& [code, value] : responses.answers)
    std::visit([&](const auto& v) { doc[code] = v; }, value);
  return doc.dump(2) + "\n";
}

std::string limesurvey_to_canonical(std::string_view export_json, const Questionnaire& questionnaire) {
  auto doc = json_util::parse(export_json);
  const Json* records = nullptr;
  if (doc.is_array()) {
    records = &doc;
  } else if (doc.is_object() && doc.contains("responses") && doc["responses"].is_array()) {
    records = &doc["responses"];
  } else {
    throw FormatError("LimeSurvey export: expected an array of response records or {\"responses\": [...]}");
  }
  if (records->empty()) throw FormatError("LimeSurvey export contains no response records");
  const Json* record = &(*records)[0];
  // Some exports wrap each record as {"<response id>": {...}}.
  if (record->is_object() && record->size() == 1 && record->begin().value().is_object())
    record = &record->begin().value();
  if (!record->is_object()) throw FormatError("LimeSurvey export: response record must be an object");

  static const std::set<std::string> ignored = {"lastpage", "startlanguage", "seed", "startdate",
                                                "datestamp", "token", "refurl", "ipaddr"};
  static const std::regex subquestion(R"(^(.+)\[(.+)\]$)");

  Json out = Json::object();
  std::map<std::string, std::set<std::string>> selections;
  for (const auto& [key, value] : record->items()) {
    if (ignored.count(key)) continue;
    if (key == "id") {
      if (!value.is_null()) out[std::string(kRespondentKey)] = value.is_string() ? value.get<std::string>() : value.dump();
      continue;
    }
    if (key == "submitdate") {
      if (value.is_string() && !value.get<std::string>().empty())
        out[std::string(kTimestampKey)] = value.get<std::string>();
      continue;
    }
    std::smatch m;
    if (std::regex_match(key, m, subquestion)) {
      const Question* q = questionnaire.find(m[1].str());
      if (q && q->kind == QuestionKind::multi_choice) {
        auto& picked = selections[q->code];
        if (value.is_string() && (value.get<std::string>() == "Y" || value.get<std::string>() == "Yes"))
          picked.insert(m[2].str());
        else if (value.is_boolean() && value.get<bool>())
          picked.insert(m[2].str());
        continue;
      }
    }
    const Question* q = questionnaire.find(key);
    if (value.is_null() || (value.is_string() && value.get<std::string>().empty())) continue;
    if (q && q->kind == QuestionKind::boolean && value.is_string()) {
      auto v = value.get<std::string>();
      if (v == "Y" || v == "Yes" || v == "true" || v == "1") {
        out[key] = true;
        continue;
      }
      if (v == "N" || v == "No" || v == "false" || v == "0") {
        out[key] = false;
        continue;
      }
    }
    out[key] = value;
  }
  for (const auto& [code, picked] : selections) {
    if (picked.empty()) continue;
    const Question* q = questionnaire.find(code);
    Json list = Json::array();
    for (const auto& opt : q->options)
      if (picked.count(opt)) list.push_back(opt);
    for (const auto& p : picked)
      if (std::find(q->options.begin(), q->options.end(), p) == q->options.end()) list.push_back(p);
    out[code] = std::move(list);
  }
  return out.dump(2) + "\n";
}

}  // namespace crosswalk::survey
