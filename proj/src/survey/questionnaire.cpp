#include <unordered_set>

#include "crosswalk/json_util.hpp"
#include "crosswalk/survey.hpp"

namespace crosswalk::survey {

using json_util::Json;
using json_util::ObjectReader;

std::string_view to_string(QuestionKind kind) {
  switch (kind) {
    case QuestionKind::boolean: return "boolean";
    case QuestionKind::single_choice: return "single_choice";
    case QuestionKind::multi_choice: return "multi_choice";
    case QuestionKind::free_text: return "free_text";
  }
  return "free_text";
}

namespace {

QuestionKind parse_kind(const std::string& text, const std::string& code) {
  if (text == "boolean") return QuestionKind::boolean;
  if (text == "single_choice") return QuestionKind::single_choice;
  if (text == "multi_choice") return QuestionKind::multi_choice;
  if (text == "free_text") return QuestionKind::free_text;
  throw FormatError("question \"" + code + "\": unknown kind \"" + text + "\"");
}

bool is_choice(QuestionKind k) { return k == QuestionKind::single_choice || k == QuestionKind::multi_choice; }

void check_binding(const Question& q) {
  auto fail = [&](std::string_view binding) {
    throw FormatError("question \"" + q.code + "\": binding " + std::string(binding) +
                      " is not valid for kind " + std::string(to_string(q.kind)));
  };
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, EnableFunction>) {
          if (b.function.empty()) throw FormatError("question \"" + q.code + "\": empty function name");
          if (q.kind != QuestionKind::boolean) fail("enable_function");
        } else if constexpr (std::is_same_v<B, IncludeColumn>) {
          if (b.column.empty()) throw FormatError("question \"" + q.code + "\": empty column name");
          if (q.kind != QuestionKind::boolean) fail("include_column");
        } else if constexpr (std::is_same_v<B, SelectVocabulary>) {
          if (b.slot.empty()) throw FormatError("question \"" + q.code + "\": empty vocabulary slot");
          if (!is_choice(q.kind)) fail("select_vocabulary");
        } else if constexpr (std::is_same_v<B, SetBaseIri>) {
          if (q.kind != QuestionKind::free_text && q.kind != QuestionKind::single_choice) fail("set_base_iri");
        }
      },
      q.binding);
}

DecisionBinding parse_binding(const Json* node, const std::string& code) {
  if (!node || node->is_null()) return FeedbackOnly{};
  if (node->is_string()) {
    auto s = node->get<std::string>();
    if (s == "feedback_only") return FeedbackOnly{};
    if (s == "set_base_iri") return SetBaseIri{};
    throw FormatError("question \"" + code + "\": binding \"" + s + "\" needs an argument");
  }
  if (!node->is_object() || node->size() != 1)
    throw FormatError("question \"" + code + "\": binding must be an object with exactly one key");
  const std::string key = node->begin().key();
  const Json& value = node->begin().value();
  auto text_arg = [&]() {
    if (!value.is_string()) throw FormatError("question \"" + code + "\": binding " + key + " takes a string");
    return value.get<std::string>();
  };
  if (key == "enable_function") return EnableFunction{text_arg()};
  if (key == "select_vocabulary") return SelectVocabulary{text_arg()};
  if (key == "include_column") return IncludeColumn{text_arg()};
  if (key == "set_base_iri") return SetBaseIri{};
  if (key == "feedback_only") return FeedbackOnly{};
  throw FormatError("question \"" + code + "\": unknown binding \"" + key + "\"");
}

Json binding_to_json(const DecisionBinding& binding) {
  return std::visit(
      [](const auto& b) -> Json {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, EnableFunction>) return Json{{"enable_function", b.function}};
        if constexpr (std::is_same_v<B, SelectVocabulary>) return Json{{"select_vocabulary", b.slot}};
        if constexpr (std::is_same_v<B, IncludeColumn>) return Json{{"include_column", b.column}};
        if constexpr (std::is_same_v<B, SetBaseIri>) return Json("set_base_iri");
        return Json("feedback_only");
      },
      binding);
}

}  // namespace

Questionnaire::Questionnaire(std::string id, std::vector<Question> questions)
    : id_(std::move(id)), questions_(std::move(questions)) {
  std::unordered_set<std::string> codes;
  for (const auto& q : questions_) {
    if (q.code.empty()) throw FormatError("question with empty code");
    if (!codes.insert(q.code).second) throw DuplicateCodeError(q.code);
    if (is_choice(q.kind) && q.options.empty()) throw MissingOptionsError(q.code);
    std::unordered_set<std::string> opts;
    for (const auto& o : q.options)
      if (!opts.insert(o).second) throw FormatError("question \"" + q.code + "\": duplicate option \"" + o + "\"");
    check_binding(q);
  }
}

const Question* Questionnaire::find(std::string_view code) const {
  for (const auto& q : questions_)
    if (q.code == code) return &q;
  return nullptr;
}

Questionnaire parse_questionnaire(std::string_view json_text, Diagnostics* diagnostics) {
  auto doc = json_util::parse(json_text);
  ObjectReader root(doc, "questionnaire", diagnostics);
  auto id = root.optional_string("id").value_or("");
  std::vector<Question> questions;
  for (const auto& entry : root.required_array("questions")) {
    ObjectReader reader(entry, "question", diagnostics);
    Question q;
    q.code = reader.required_string("code");
    q.prompt = reader.optional_string("prompt").value_or("");
    q.kind = parse_kind(reader.required_string("kind"), q.code);
    q.options = reader.optional_string_array("options");
    q.binding = parse_binding(reader.get("binding"), q.code);
    reader.finish();
    questions.push_back(std::move(q));
  }
  root.finish();
  return Questionnaire(std::move(id), std::move(questions));
}

std::string questionnaire_to_json(const Questionnaire& questionnaire) {
  Json doc;
  doc["id"] = questionnaire.id();
  doc["questions"] = Json::array();
  for (const auto& q : questionnaire.questions()) {
    Json j;
    j["code"] = q.code;
    j["prompt"] = q.prompt;
    j["kind"] = std::string(to_string(q.kind));
    if (!q.options.empty()) j["options"] = q.options;
    j["binding"] = binding_to_json(q.binding);
    doc["questions"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace crosswalk::survey
