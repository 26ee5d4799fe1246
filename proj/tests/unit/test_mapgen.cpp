#include <gtest/gtest.h>

#include "crosswalk/engine.hpp"
#include "crosswalk/io.hpp"
#include "crosswalk/mapgen.hpp"
#include "paths.hpp"

using namespace crosswalk;
using namespace crosswalk::mapgen;

namespace {

tabular::TableSchema object_schema() {
  return tabular::parse_schema_json(read_file(testpaths::data("schemas/chad-object.json")));
}
TemplatePack object_pack() { return parse_template_pack(read_file(testpaths::data("packs/chad-object.json"))); }
survey::DecisionSet defaults() { return survey::parse_decisions(read_file(testpaths::data("survey/defaults.json"))); }

const yarrrml::PoEntry* find_po(const yarrrml::YarrrmlMapping& m, const std::string& predicate) {
  for (const auto& e : m.po)
    if (e.predicate == predicate) return &e;
  return nullptr;
}

tabular::TableSchema small_schema() {
  return tabular::TableSchema("things", {{"ID", true}, {"Name"}, {"Tag"}, {"Link"}});
}

TemplatePack small_pack(const std::string& body) {
  return parse_template_pack(R"({"id": "p", "required_prefixes": {"ex": "http://ex.org/"}, "fragments": [)" + body +
                             "]}");
}

}  // namespace

TEST(CompileMappings, AatEnabledUsesLookup) {
  auto d = defaults();
  d.enabled_functions.insert("aat_lookup");
  auto doc = compile_mappings(d, object_schema(), object_pack());
  const auto* po = find_po(doc.mappings.at("creation"), "crm:P32_used_general_technique");
  ASSERT_NE(po, nullptr);
  const auto& t = std::get<yarrrml::TermSpec>(po->object);
  EXPECT_EQ(t.kind, yarrrml::TermKind::function_call);
  EXPECT_EQ(t.value, "aat_lookup");
  EXPECT_EQ(t.term_type, rml::TermType::iri);
  ASSERT_EQ(t.args.size(), 1u);
  EXPECT_EQ(t.args[0], yarrrml::TermSpec::reference("Technique"));
  int p32 = 0;
  for (const auto& e : doc.mappings.at("creation").po) p32 += e.predicate == "crm:P32_used_general_technique";
  EXPECT_EQ(p32, 1);
}

TEST(CompileMappings, AatDisabledUsesReference) {
  auto doc = compile_mappings(defaults(), object_schema(), object_pack());
  const auto* po = find_po(doc.mappings.at("creation"), "crm:P32_used_general_technique");
  ASSERT_NE(po, nullptr);
  EXPECT_EQ(std::get<yarrrml::TermSpec>(po->object), yarrrml::TermSpec::reference("Technique"));
}

TEST(CompileMappings, EmptyPack) {
  auto d = defaults();
  d.prefix_map = {{"ex", "http://ex.org/"}};
  auto doc = compile_mappings(d, object_schema(), parse_template_pack(R"({"id": "empty", "fragments": []})"));
  EXPECT_TRUE(doc.mappings.empty());
  EXPECT_EQ(doc.prefixes, d.prefix_map);
}

TEST(CompileMappings, OnePerFragment) {
  auto pack = object_pack();
  auto doc = compile_mappings(defaults(), object_schema(), pack);
  EXPECT_EQ(doc.mappings.size(), pack.fragments.size());
  for (const auto& f : pack.fragments) EXPECT_TRUE(doc.mappings.count(f.mapping_id)) << f.mapping_id;
}

TEST(CompileMappings, BaseIriResolvesRelativePatterns) {
  auto d = defaults();
  d.base_iri = "http://museum.example/id#";
  auto doc = compile_mappings(d, object_schema(), object_pack());
  const auto& object = doc.mappings.at("object");
  EXPECT_EQ(object.subject, yarrrml::TermSpec::templ("http://museum.example/id#object/$(Identification Number)"));
  const auto* carries = find_po(object, "crm:P128_carries");
  ASSERT_NE(carries, nullptr);
  EXPECT_EQ(std::get<yarrrml::TermSpec>(carries->object),
            yarrrml::TermSpec::templ("http://museum.example/id#expression/$(Identification Number)"));
}

TEST(CompileMappings, AbsoluteAndCuriePatternsKept) {
  auto pack = small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:thing/{ID}",
    "po": [{"predicate": "ex:page", "object": {"template": "http://other.org/{ID}"}},
           {"predicate": "ex:label", "object": {"template": "{Name} item"}, "type": "literal"}]})");
  survey::DecisionSet d{"http://base.org/", {}, {}, {}, {}, {}};
  auto doc = compile_mappings(d, small_schema(), pack);
  const auto& m = doc.mappings.at("t");
  EXPECT_EQ(m.subject.value, "ex:thing/$(ID)");
  EXPECT_EQ(std::get<yarrrml::TermSpec>(m.po[0].object).value, "http://other.org/$(ID)");
  EXPECT_EQ(std::get<yarrrml::TermSpec>(m.po[1].object), yarrrml::TermSpec::templ("$(Name) item", rml::TermType::literal));
}

TEST(CompileMappings, DecisionPrefixWins) {
  auto d = defaults();
  d.prefix_map = {{"crm", "http://erlangen-crm.org/current/"}};
  Diagnostics diag;
  auto doc = compile_mappings(d, object_schema(), object_pack(), &diag);
  EXPECT_EQ(doc.prefixes.at("crm"), "http://erlangen-crm.org/current/");
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_NE(diag.warnings[0].find("crm"), std::string::npos);
}

TEST(CompileMappings, KnownFunctionsEnforced) {
  auto d = defaults();
  d.enabled_functions.insert("aat_lookup");
  std::set<std::string> none;
  EXPECT_THROW(compile_mappings(d, object_schema(), object_pack(), nullptr, &none), survey::UnknownFunctionError);
  std::set<std::string> known{"aat_lookup", "split"};
  EXPECT_NO_THROW(compile_mappings(d, object_schema(), object_pack(), nullptr, &known));
}

TEST(CompileMappings, ColumnNamesCanonicalized) {
  auto pack = small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{ id }",
    "po": [{"predicate": "ex:name", "object": {"reference": "NAME"}}]})");
  auto doc = compile_mappings(survey::DecisionSet{"http://b.org/", {}, {}, {}, {}, {}}, small_schema(), pack);
  EXPECT_EQ(doc.mappings.at("t").subject.value, "ex:t/$(ID)");
  EXPECT_EQ(std::get<yarrrml::TermSpec>(doc.mappings.at("t").po[0].object).value, "Name");
}

TEST(Guards, Semantics) {
  survey::DecisionSet d{"http://b.org/", {}, {"aat_lookup"}, {{"title", "museum"}}, {"Date"}, {}};
  EXPECT_TRUE(guard_passes({Guard::Kind::requires_function, "aat_lookup", ""}, d));
  EXPECT_FALSE(guard_passes({Guard::Kind::unless_function, "aat_lookup", ""}, d));
  EXPECT_FALSE(guard_passes({Guard::Kind::requires_function, "trim", ""}, d));
  EXPECT_TRUE(guard_passes({Guard::Kind::requires_column, "Date", ""}, d));
  EXPECT_TRUE(guard_passes({Guard::Kind::unless_column, "Notes", ""}, d));
  EXPECT_TRUE(guard_passes({Guard::Kind::requires_vocabulary, "title", "museum"}, d));
  EXPECT_FALSE(guard_passes({Guard::Kind::requires_vocabulary, "title", "original"}, d));
  EXPECT_FALSE(guard_passes({Guard::Kind::requires_vocabulary, "other", "museum"}, d));
  EXPECT_TRUE(guards_pass({}, d));
  EXPECT_FALSE(guards_pass({{Guard::Kind::requires_column, "Date", ""}, {Guard::Kind::requires_column, "X", ""}}, d));
}

TEST(Guards, ColumnGuardOmitsEntry) {
  auto d = defaults();
  auto with = compile_mappings(d, object_schema(), object_pack());
  d.included_columns.erase("Location of Conservation");
  auto without = compile_mappings(d, object_schema(), object_pack());
  EXPECT_NE(find_po(with.mappings.at("object"), "crm:P55_has_current_location"), nullptr);
  EXPECT_EQ(find_po(without.mappings.at("object"), "crm:P55_has_current_location"), nullptr);
  EXPECT_EQ(with.mappings.at("object").po.size(), without.mappings.at("object").po.size() + 1);
}

TEST(PackPrefixes, Collision) {
  auto pack = small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{ID}",
    "prefixes": {"ex": "http://elsewhere.org/"}})");
  EXPECT_THROW(pack_prefixes(pack), PrefixCollisionError);
  auto same = small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{ID}",
    "prefixes": {"ex": "http://ex.org/", "dc": "http://purl.org/dc/terms/"}})");
  EXPECT_EQ(pack_prefixes(same).size(), 2u);
}

TEST(ValidatePack, Errors) {
  auto schema = small_schema();
  EXPECT_THROW(validate_pack(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{Missing}"})"), schema),
               UnknownColumnError);
  EXPECT_THROW(validate_pack(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{ID}",
    "po": [{"predicate": "ex:p", "object": {"function": "trim", "args": [{"reference": "Nope"}]}}]})"),
                             schema),
               UnknownColumnError);
  EXPECT_THROW(validate_pack(small_pack(R"({"mapping_id": "t", "source": "other", "subject": "ex:t/{ID}"})"), schema),
               FormatError);
  EXPECT_THROW(validate_pack(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{ID}",
    "po": [{"predicate": "ex:p", "object": {"join": {"mapping": "ghost"}}}]})"),
                             schema),
               DanglingJoinError);
  EXPECT_THROW(validate_pack(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:t/{ID}",
    "po": [{"predicate": "ex:p", "object": {"reference": "Name"}, "datatype": "xsd:string", "language": "en"}]})"),
                             schema),
               FormatError);
  EXPECT_NO_THROW(validate_pack(object_pack(), object_schema()));
}

TEST(ParsePack, Errors) {
  EXPECT_THROW(parse_template_pack("{"), JsonSyntaxError);
  EXPECT_THROW(parse_template_pack(R"({"fragments": []})"), FormatError);
  EXPECT_THROW(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:{ID}"},
    {"mapping_id": "t", "source": "things", "subject": "ex:{ID}"})"),
               FormatError);
  EXPECT_THROW(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:{ID}",
    "po": [{"predicate": "ex:p", "object": {"reference": "A", "constant": "B"}}]})"),
               FormatError);
  EXPECT_THROW(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:{ID}",
    "po": [{"predicate": "ex:p", "object": {"reference": "A"}, "guard": {"maybe": "x"}}]})"),
               FormatError);
  EXPECT_THROW(small_pack(R"({"mapping_id": "t", "source": "things", "subject": "ex:{ID}", "subject_type": "literal"})"),
               FormatError);
  Diagnostics diag;
  parse_template_pack(R"({"id": "p", "fragments": [], "colour": "blue"})", &diag);
  EXPECT_EQ(diag.warnings.size(), 1u);
}

TEST(CompiledOutput, ParsesAndTranslates) {
  for (const auto& name : {"object", "process"}) {
    auto schema = tabular::parse_schema_json(read_file(testpaths::data(std::string("schemas/chad-") + name + ".json")));
    auto pack = parse_template_pack(read_file(testpaths::data(std::string("packs/chad-") + name + ".json")));
    for (bool aat : {false, true}) {
      auto d = defaults();
      if (aat) d.enabled_functions.insert("aat_lookup");
      auto doc = compile_mappings(d, schema, pack);
      auto text = yarrrml::serialize_yarrrml(doc);
      yarrrml::YarrrmlDocument back;
      ASSERT_NO_THROW(back = yarrrml::parse_yarrrml(text)) << name;
      EXPECT_EQ(back, doc);
      auto graph = yarrrml::to_rml(back);
      for (const auto& tm : graph.triples_maps) {
        for (const auto& c : rml::referenced_columns(tm.subject.term)) EXPECT_TRUE(schema.find(c)) << c;
        for (const auto& pom : tm.predicate_object_maps)
          if (const auto* t = std::get_if<rml::TermMap>(&pom.object))
            for (const auto& c : rml::referenced_columns(*t)) EXPECT_TRUE(schema.find(c)) << c;
      }
    }
  }
}
