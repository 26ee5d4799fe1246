#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crosswalk/error.hpp"

namespace crosswalk::survey {

class DuplicateCodeError : public Error {
 public:
  explicit DuplicateCodeError(const std::string& code)
      : Error("duplicate question code \"" + code + "\"") {}
};

class MissingOptionsError : public Error {
 public:
  explicit MissingOptionsError(const std::string& code)
      : Error("choice question \"" + code + "\" declares no options") {}
};

class UnknownQuestionError : public Error {
 public:
  explicit UnknownQuestionError(const std::string& code)
      : Error("response answers unknown question \"" + code + "\"") {}
};

class AnswerShapeError : public Error {
 public:
  AnswerShapeError(const std::string& code, const std::string& detail)
      : Error("answer to \"" + code + "\": " + detail) {}
};

class InvalidBaseIriError : public Error {
 public:
  explicit InvalidBaseIriError(const std::string& iri)
      : Error("base IRI \"" + iri + "\" must be absolute and end with '/' or '#'") {}
};

class UnknownFunctionError : public Error {
 public:
  explicit UnknownFunctionError(const std::string& name)
      : Error("questionnaire enables unregistered function \"" + name + "\"") {}
};

enum class QuestionKind { boolean, single_choice, multi_choice, free_text };

std::string_view to_string(QuestionKind kind);

struct EnableFunction {
  std::string function;
  bool operator==(const EnableFunction&) const = default;
};
struct SelectVocabulary {
  std::string slot;
  bool operator==(const SelectVocabulary&) const = default;
};
struct SetBaseIri {
  bool operator==(const SetBaseIri&) const = default;
};
struct IncludeColumn {
  std::string column;
  bool operator==(const IncludeColumn&) const = default;
};
struct FeedbackOnly {
  bool operator==(const FeedbackOnly&) const = default;
};

// Which DecisionSet field an answer mutates.
//   enable_function, include_column: boolean questions (true adds, false removes)
//   select_vocabulary: single_choice, or multi_choice (first selected option
//     in option order; an empty selection clears the slot)
//   set_base_iri: free_text or single_choice
//   feedback_only: any kind; the answer text is appended to feedback
using DecisionBinding = std::variant<EnableFunction, SelectVocabulary, SetBaseIri, IncludeColumn, FeedbackOnly>;

struct Question {
  std::string code;
  std::string prompt;
  QuestionKind kind = QuestionKind::free_text;
  std::vector<std::string> options;
  DecisionBinding binding = FeedbackOnly{};

  bool operator==(const Question&) const = default;
};

class Questionnaire {
 public:
  Questionnaire() = default;
  // Validates code uniqueness, options, and binding/kind compatibility.
  Questionnaire(std::string id, std::vector<Question> questions);

  const std::string& id() const noexcept { return id_; }
  const std::vector<Question>& questions() const noexcept { return questions_; }
  std::size_t size() const noexcept { return questions_.size(); }
  const Question* find(std::string_view code) const;

 private:
  std::string id_;
  std::vector<Question> questions_;
};

Questionnaire parse_questionnaire(std::string_view json_text, Diagnostics* diagnostics = nullptr);
std::string questionnaire_to_json(const Questionnaire& questionnaire);

using AnswerValue = std::variant<bool, std::string, std::vector<std::string>>;

struct ResponseSet {
  std::map<std::string, AnswerValue> answers;
  std::optional<std::string> respondent_id;
  std::optional<std::string> timestamp;  // ISO 8601 instant as exported

  bool operator==(const ResponseSet&) const = default;
};

// Canonical format: a flat object {code: value}. Null values mean
// "unanswered". The reserved keys "@respondent" and "@timestamp" carry the
// optional metadata.
ResponseSet parse_responses(std::string_view json_text, const Questionnaire& questionnaire);
std::string responses_to_json(const ResponseSet& responses);

// Flattens the first record of a LimeSurvey JSON response export (either a
// bare array of records or {"responses": [...]}, records optionally wrapped
// in a single-key object) into canonical response JSON. Expects the export
// to use question codes as keys and answer codes as values: "Y"/"N" for
// yes/no questions, "CODE[option]": "Y" columns for multiple choice.
std::string limesurvey_to_canonical(std::string_view export_json, const Questionnaire& questionnaire);

struct DecisionSet {
  std::string base_iri;
  std::map<std::string, std::string> prefix_map;
  std::set<std::string> enabled_functions;
  std::map<std::string, std::string> vocabulary_slots;
  std::set<std::string> included_columns;
  std::vector<std::string> feedback;

  bool operator==(const DecisionSet&) const = default;
};

// Throws InvalidBaseIriError or FormatError when the invariants fail.
void validate(const DecisionSet& decisions);

// Strict: unknown fields are rejected, base_iri is required, the rest
// default to empty. The result is validated.
DecisionSet parse_decisions(std::string_view json_text);
std::string decisions_to_json(const DecisionSet& decisions);

// Every answered question mutates exactly the field its binding names;
// unanswered questions leave the defaults alone. known_functions lists the
// function registry; an enable_function binding to anything else throws
// UnknownFunctionError.
DecisionSet derive_decisions(const ResponseSet& responses, const Questionnaire& questionnaire,
                             const DecisionSet& defaults, const std::set<std::string>& known_functions);

struct FeedbackItem {
  std::string code;
  std::string text;
  bool operator==(const FeedbackItem&) const = default;
};

// All free_text answers, in questionnaire order.
std::vector<FeedbackItem> feedback_report(const ResponseSet& responses, const Questionnaire& questionnaire);

}  // namespace crosswalk::survey
