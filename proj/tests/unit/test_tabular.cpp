#include <gtest/gtest.h>

#include "crosswalk/io.hpp"
#include "crosswalk/iri.hpp"
#include "crosswalk/tabular.hpp"
#include "paths.hpp"

using namespace crosswalk;
using namespace crosswalk::tabular;

namespace {

TabularDataset load(std::string_view text, const CsvDialect& d = CsvDialect()) { return load_csv(text, d, "t"); }

const std::vector<std::string> kObjectColumns = {
    "Identification Number", "Linked Identification Number", "Relationship", "Exhibition Room", "Caption",
    "Consistency", "Documentary Typology", "Technique", "Reproduction Typology in Exhibition", "Subjects",
    "Original Title", "Museum Title", "English Title", "Date", "Discoverer", "Author", "Translator", "Illustrator",
    "Engraver", "Publisher", "Place of Publication", "Museum Preparer", "Commissioner", "Parent Work Typology",
    "Parent Work Title", "Volume", "Collection", "Conservator Entity", "Location of Conservation", "Placement",
    "Source", "Digital Image", "Iconography"};

std::string header_line(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  return out + "\n";
}

TableSchema object_schema() { return parse_schema_json(read_file(testpaths::data("schemas/chad-object.json"))); }

}  // namespace

TEST(LoadCsv, MinimalTable) {
  auto d = load("A,B\n1,2\n");
  ASSERT_EQ(d.row_count(), 1u);
  EXPECT_EQ(d.header(), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(d.rows()[0][0], "1");
  EXPECT_EQ(d.rows()[0][1], "2");
  EXPECT_EQ(d.source_id(), "t");
}

TEST(LoadCsv, QuotedDelimiter) {
  auto d = load("A,B\nx,\"y,z\"\n");
  EXPECT_EQ(d.rows()[0][0], "x");
  EXPECT_EQ(d.rows()[0][1], "y,z");
}

TEST(LoadCsv, RaggedRowReportsIndex) {
  try {
    load("A,B\n1,2,3\n");
    FAIL() << "expected RaggedRowError";
  } catch (const RaggedRowError& e) {
    EXPECT_EQ(e.row(), 0u);
  }
  try {
    load("A,B\n1,2\n3,4\n5\n");
    FAIL() << "expected RaggedRowError";
  } catch (const RaggedRowError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(LoadCsv, EmptyInput) {
  EXPECT_THROW(load(""), EmptyInputError);
  EXPECT_THROW(load("\n\n"), EmptyInputError);
}

TEST(LoadCsv, AbsentVersusEmpty) {
  auto d = load("A,B,C\n,\"\",x\n");
  EXPECT_FALSE(d.rows()[0][0].has_value());
  ASSERT_TRUE(d.rows()[0][1].has_value());
  EXPECT_EQ(*d.rows()[0][1], "");
  EXPECT_EQ(d.rows()[0][2], "x");
}

TEST(LoadCsv, EmbeddedLineBreaksAndQuotes) {
  auto d = load("A,B\r\n\"line 1\r\nline 2\",\"say \"\"hi\"\"\"\r\n");
  ASSERT_EQ(d.row_count(), 1u);
  EXPECT_EQ(d.rows()[0][0], "line 1\r\nline 2");
  EXPECT_EQ(d.rows()[0][1], "say \"hi\"");
}

TEST(LoadCsv, MissingFinalNewlineAndBlankLines) {
  auto d = load("A,B\n1,2\n\n3,4");
  ASSERT_EQ(d.row_count(), 2u);
  EXPECT_EQ(d.rows()[1][1], "4");
}

TEST(LoadCsv, NoHeaderNamesColumns) {
  auto d = load("1,2\n3,4\n", CsvDialect(',', '"', "UTF-8", false));
  EXPECT_EQ(d.header(), (std::vector<std::string>{"column1", "column2"}));
  EXPECT_EQ(d.row_count(), 2u);
}

TEST(LoadCsv, SemicolonDialect) {
  auto d = load("A;B\n\"1;2\";3\n", CsvDialect(';'));
  EXPECT_EQ(d.rows()[0][0], "1;2");
}

TEST(LoadCsv, Latin1IsTranscoded) {
  auto d = load("A\ncaf\xE9\n", CsvDialect(',', '"', "ISO-8859-1"));
  EXPECT_EQ(d.rows()[0][0], "caf\xC3\xA9");
}

TEST(LoadCsv, DecodeErrors) {
  EXPECT_THROW(load("A\ncaf\xE9\n"), DecodeError);
  EXPECT_THROW(load("A\n\xC3\n"), DecodeError);
  EXPECT_THROW(load("A\ncaf\xC3\xA9\n", CsvDialect(',', '"', "US-ASCII")), DecodeError);
}

TEST(LoadCsv, Utf8ByteOrderMarkIsDropped) {
  auto d = load("\xEF\xBB\xBF" "A,B\n1,2\n");
  EXPECT_EQ(d.header()[0], "A");
}

TEST(LoadCsv, SyntaxErrors) {
  EXPECT_THROW(load("A,B\n\"open,2\n"), CsvSyntaxError);
  EXPECT_THROW(load("A,B\n\"x\"y,2\n"), CsvSyntaxError);
  EXPECT_THROW(load("A,,B\n1,2,3\n"), CsvSyntaxError);
}

TEST(LoadCsv, DuplicateHeaderAfterNormalization) {
  EXPECT_THROW(load("Title,  title \n1,2\n"), DuplicateColumnError);
}

TEST(CsvDialect, Invariants) {
  EXPECT_THROW(CsvDialect(',', ','), FormatError);
  EXPECT_THROW(CsvDialect(',', '"', "EBCDIC"), FormatError);
  EXPECT_EQ(CsvDialect(',', '"', "latin1").encoding(), Encoding::latin1);
  EXPECT_EQ(parse_encoding("utf8"), Encoding::utf8);
  EXPECT_FALSE(parse_encoding("utf-16").has_value());
}

TEST(Cell, LooksUpByNormalizedName) {
  auto d = load("A,Museum  Title\n1,x\n");
  EXPECT_EQ(cell(d, 0, "A"), "1");
  EXPECT_EQ(cell(d, 0, "a"), "1");
  EXPECT_EQ(cell(d, 0, " museum title "), "x");
  EXPECT_THROW(cell(d, 0, "Z"), UnknownColumnError);
}

TEST(Cell, AbsentCell) {
  auto d = load("A,B\n,2\n");
  EXPECT_FALSE(cell(d, 0, "A").has_value());
}

TEST(SplitMultivalued, Examples) {
  EXPECT_EQ(split_multivalued("botany; zoology", ';'), (std::vector<std::string>{"botany", "zoology"}));
  EXPECT_EQ(split_multivalued("botany", ';'), (std::vector<std::string>{"botany"}));
  EXPECT_EQ(split_multivalued(" ; a ;; b ", ';'), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(split_multivalued("", ';').empty());
  EXPECT_EQ(split_multivalued("a|b", '|'), (std::vector<std::string>{"a", "b"}));
}

TEST(WriteCsv, QuotesOnlyWhenNeeded) {
  TabularDataset d({"A", "B", "C"}, {{std::string("x,y"), std::nullopt, std::string("")}}, "t");
  EXPECT_EQ(write_csv(d, CsvDialect()), "A,B,C\r\n\"x,y\",,\"\"\r\n");
}

TEST(WriteCsv, RoundTripsFixture) {
  auto bytes = read_file(testpaths::data("fixtures/objects.csv"));
  auto d = load_csv(bytes, CsvDialect(), "chad-object");
  auto again = load_csv(write_csv(d, CsvDialect()), CsvDialect(), "chad-object");
  EXPECT_EQ(d, again);
}

TEST(Schema, BundledObjectSchemaHasAllCatalogueColumns) {
  auto s = object_schema();
  EXPECT_EQ(s.id(), "chad-object");
  ASSERT_EQ(s.columns().size(), kObjectColumns.size());
  for (std::size_t i = 0; i < kObjectColumns.size(); ++i) EXPECT_EQ(s.columns()[i].name, kObjectColumns[i]);
  EXPECT_TRUE(s.find("subjects")->multivalued);
  EXPECT_EQ(s.find("Subjects")->delimiter(), ';');
}

TEST(Schema, BundledProcessSchemaFlattensSubdivisions) {
  auto s = parse_schema_json(read_file(testpaths::data("schemas/chad-process.json")));
  std::vector<std::string> top;
  for (const auto& c : s.columns()) {
    auto group = c.name.substr(0, c.name.find('.'));
    if (top.empty() || top.back() != group) top.push_back(group);
  }
  EXPECT_EQ(top, (std::vector<std::string>{"Identification Numbers", "Objects", "Showcases", "Captions",
                                           "Current Status", "Link", "Notes", "Acquisition", "Processing",
                                           "Modeling", "Optimisation", "Export", "Metadata", "Upload"}));
  EXPECT_NE(s.find("Acquisition.Start Date"), nullptr);
}

TEST(Schema, Invariants) {
  EXPECT_THROW(TableSchema("s", {{"A"}, {" a "}}), DuplicateColumnError);
  EXPECT_THROW(TableSchema("s", {{"  "}}), FormatError);
  EXPECT_THROW(parse_schema_json(R"({"id": "s", "columns": [{"name": "A", "multivalued": true, "value_delimiter": "ab"}]})"),
               FormatError);
  EXPECT_THROW(parse_schema_json("{"), JsonSyntaxError);
}

TEST(Schema, JsonRoundTrip) {
  auto s = object_schema();
  auto again = parse_schema_json(schema_to_json(s));
  ASSERT_EQ(again.columns().size(), s.columns().size());
  for (std::size_t i = 0; i < s.columns().size(); ++i) {
    EXPECT_EQ(again.columns()[i].name, s.columns()[i].name);
    EXPECT_EQ(again.columns()[i].required, s.columns()[i].required);
    EXPECT_EQ(again.columns()[i].multivalued, s.columns()[i].multivalued);
    EXPECT_EQ(again.columns()[i].value_delimiter, s.columns()[i].value_delimiter);
  }
}

TEST(Schema, UnknownFieldsWarn) {
  Diagnostics diag;
  parse_schema_json(R"({"id": "s", "colour": "red", "columns": [{"name": "A"}]})", &diag);
  EXPECT_EQ(diag.warnings.size(), 1u);
}

TEST(ValidateSchema, FullObjectTableIsOk) {
  std::string row;
  for (std::size_t i = 0; i < kObjectColumns.size(); ++i) row += (i ? ",v" : "v") + std::to_string(i);
  auto d = load(header_line(kObjectColumns) + row + "\n");
  auto report = validate_schema(d, object_schema());
  EXPECT_TRUE(report.ok()) << report_to_text(report);
  EXPECT_TRUE(report.issues.empty());
}

TEST(ValidateSchema, MissingColumnIsAnError) {
  auto cols = kObjectColumns;
  cols.erase(std::find(cols.begin(), cols.end(), "Technique"));
  std::string row;
  for (std::size_t i = 0; i < cols.size(); ++i) row += (i ? ",v" : "v") + std::to_string(i);
  auto report = validate_schema(load(header_line(cols) + row + "\n"), object_schema());
  EXPECT_FALSE(report.ok());
  ASSERT_EQ(report.error_count(), 1u);
  EXPECT_EQ(report.issues[0].column, "Technique");
  EXPECT_NE(report.issues[0].message.find("Technique"), std::string::npos);
}

TEST(ValidateSchema, ExtraColumnIsAWarning) {
  auto cols = kObjectColumns;
  cols.push_back("Notes2");
  std::string row;
  for (std::size_t i = 0; i < cols.size(); ++i) row += (i ? ",v" : "v") + std::to_string(i);
  auto report = validate_schema(load(header_line(cols) + row + "\n"), object_schema());
  EXPECT_TRUE(report.ok());
  ASSERT_EQ(report.warning_count(), 1u);
  EXPECT_EQ(report.issues[0].column, "Notes2");
}

TEST(ValidateSchema, AbsentRequiredCellsOrderedByRow) {
  TableSchema s("s", {{"B", true}, {"A", true}, {"C"}});
  auto d = load("A,B,C,D\n,,x,y\n1,,,\n");
  auto report = validate_schema(d, s);
  ASSERT_EQ(report.issues.size(), 4u);
  EXPECT_EQ(report.issues[0].severity, Severity::warning);
  EXPECT_EQ(report.issues[0].column, "D");
  EXPECT_EQ(report.issues[1].row, 0u);
  EXPECT_EQ(report.issues[1].column, "B");
  EXPECT_EQ(report.issues[2].row, 0u);
  EXPECT_EQ(report.issues[2].column, "A");
  EXPECT_EQ(report.issues[3].row, 1u);
  EXPECT_EQ(report.issues[3].column, "B");
  EXPECT_EQ(report, validate_schema(d, s));
}

TEST(ValidateSchema, BundledFixturesValidate) {
  auto objects = load_csv(read_file(testpaths::data("fixtures/objects.csv")), CsvDialect(), "chad-object");
  auto r1 = validate_schema(objects, object_schema());
  EXPECT_TRUE(r1.ok()) << report_to_text(r1);
  EXPECT_TRUE(r1.issues.empty()) << report_to_text(r1);
  auto process = load_csv(read_file(testpaths::data("fixtures/process.csv")), CsvDialect(), "chad-process");
  auto r2 = validate_schema(process, parse_schema_json(read_file(testpaths::data("schemas/chad-process.json"))));
  EXPECT_TRUE(r2.issues.empty()) << report_to_text(r2);
}

TEST(ValidateSchema, JsonReport) {
  TableSchema s("s", {{"A", true}});
  auto text = report_to_json(validate_schema(load("A\n\"\"\n"), s));
  EXPECT_NE(text.find("\"ok\": true"), std::string::npos) << text;
}

TEST(Normalization, Names) {
  EXPECT_EQ(normalize_name("  Museum \t Title "), "museum title");
  EXPECT_EQ(trim("\t x \n"), "x");
}
