#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "crosswalk/iri.hpp"
#include "crosswalk/json_util.hpp"
#include "crosswalk/tabular.hpp"

namespace crosswalk::tabular {

TableSchema::TableSchema(std::string id, std::vector<ColumnSpec> columns, std::string notes)
    : id_(std::move(id)), columns_(std::move(columns)), notes_(std::move(notes)) {
  std::unordered_set<std::string> seen;
  for (auto& c : columns_) {
    if (trim(c.name).empty()) throw FormatError("schema \"" + id_ + "\": column name is empty");
    if (!seen.insert(normalize_name(c.name)).second) throw DuplicateColumnError(c.name);
    if (c.value_delimiter && !c.multivalued)
      throw FormatError("schema \"" + id_ + "\": value_delimiter set on single-valued column \"" +
                        c.name + "\"");
  }
}

const ColumnSpec* TableSchema::find(std::string_view name) const {
  auto key = normalize_name(name);
  for (const auto& c : columns_)
    if (normalize_name(c.name) == key) return &c;
  return nullptr;
}

TableSchema parse_schema_json(std::string_view text, Diagnostics* diagnostics) {
  auto doc = json_util::parse(text);
  json_util::ObjectReader root(doc, "schema", diagnostics);
  auto id = root.required_string("id");
  auto notes = root.optional_string("notes").value_or("");
  std::vector<ColumnSpec> columns;
  for (const auto& entry : root.required_array("columns")) {
    json_util::ObjectReader col(entry, "schema column", diagnostics);
    ColumnSpec spec;
    spec.name = col.required_string("name");
    spec.required = col.optional_bool("required").value_or(false);
    spec.multivalued = col.optional_bool("multivalued").value_or(false);
    if (auto d = col.optional_string("value_delimiter")) {
      if (d->size() != 1) throw FormatError("value_delimiter must be a single character");
      spec.value_delimiter = (*d)[0];
    }
    col.finish();
    columns.push_back(std::move(spec));
  }
  root.finish();
  return TableSchema(std::move(id), std::move(columns), std::move(notes));
}

std::string schema_to_json(const TableSchema& schema) {
  nlohmann::ordered_json doc;
  doc["id"] = schema.id();
  if (!schema.notes().empty()) doc["notes"] = schema.notes();
  doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : schema.columns()) {
    nlohmann::ordered_json col;
    col["name"] = c.name;
    col["required"] = c.required;
    col["multivalued"] = c.multivalued;
    if (c.value_delimiter) col["value_delimiter"] = std::string(1, *c.value_delimiter);
    doc["columns"].push_back(std::move(col));
  }
  return doc.dump(2) + "\n";
}

bool ValidationReport::ok() const noexcept { return error_count() == 0; }

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const noexcept { return issues.size() - error_count(); }

ValidationReport validate_schema(const TabularDataset& dataset, const TableSchema& schema) {
  ValidationReport report;
  std::vector<std::pair<const ColumnSpec*, std::size_t>> required_present;
  for (const auto& col : schema.columns()) {
    auto idx = dataset.find_column(col.name);
    if (!idx) {
      if (col.required)
        report.issues.push_back({Severity::error, std::nullopt, col.name,
                                 "required column \"" + col.name + "\" is missing"});
      continue;
    }
    if (col.required) required_present.emplace_back(&col, *idx);
  }
  for (const auto& name : dataset.header()) {
    if (!schema.find(name))
      report.issues.push_back({Severity::warning, std::nullopt, name,
                               "column \"" + name + "\" is not part of schema \"" + schema.id() + "\""});
  }
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    for (const auto& [spec, idx] : required_present) {
      if (!dataset.rows()[r][idx])
        report.issues.push_back({Severity::error, r, spec->name,
                                 "required cell \"" + spec->name + "\" is empty"});
    }
  }
  return report;
}

std::string report_to_text(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& issue : report.issues) {
    out << (issue.severity == Severity::error ? "error" : "warning");
    if (issue.row) out << " row " << *issue.row;
    if (issue.column) out << " column \"" << *issue.column << "\"";
    out << ": " << issue.message << "\n";
  }
  out << (report.ok() ? "OK" : "FAILED") << " (" << report.error_count() << " errors, "
      << report.warning_count() << " warnings)\n";
  return out.str();
}

std::string report_to_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["ok"] = report.ok();
  doc["issues"] = nlohmann::ordered_json::array();
  for (const auto& issue : report.issues) {
    nlohmann::ordered_json i;
    i["severity"] = issue.severity == Severity::error ? "error" : "warning";
    i["row"] = issue.row ? nlohmann::ordered_json(*issue.row) : nlohmann::ordered_json(nullptr);
    i["column"] = issue.column ? nlohmann::ordered_json(*issue.column) : nlohmann::ordered_json(nullptr);
    i["message"] = issue.message;
    doc["issues"].push_back(std::move(i));
  }
  return doc.dump(2) + "\n";
}

}  // namespace crosswalk::tabular
