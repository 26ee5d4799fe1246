#include <gtest/gtest.h>

#include <map>

#include "crosswalk/engine.hpp"
#include "crosswalk/io.hpp"
#include "paths.hpp"

using namespace crosswalk;
using namespace crosswalk::engine;
using rml::TermMap;
using rml::TermType;

namespace {

const std::string ex = "http://ex.org/";
const std::string type_iri = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

RowAccessor row(std::map<std::string, std::optional<std::string>> cells) {
  auto shared = std::make_shared<std::map<std::string, std::optional<std::string>>>(std::move(cells));
  return [shared](std::string_view column) -> std::optional<std::string_view> {
    auto it = shared->find(std::string(column));
    if (it == shared->end()) throw UnknownColumnError(std::string(column));
    if (!it->second) return std::nullopt;
    return std::string_view(*it->second);
  };
}

FunctionRegistry builtins() {
  FunctionRegistry r;
  register_builtin_functions(r);
  return r;
}

rml::PredicateObjectMap pom(const std::string& predicate, rml::ObjectMap object) {
  return {TermMap::constant(ex + predicate, TermType::iri), std::move(object)};
}

rml::TriplesMap map(std::string id, std::string source, TermMap subject, std::vector<rml::PredicateObjectMap> poms,
                    std::vector<std::string> classes = {}) {
  rml::TriplesMap tm;
  tm.id = std::move(id);
  tm.logical_source.source_id = std::move(source);
  tm.subject.term = std::move(subject);
  tm.subject.classes = std::move(classes);
  tm.predicate_object_maps = std::move(poms);
  return tm;
}

tabular::TabularDataset table(std::string id, std::vector<std::string> header, std::vector<tabular::Row> rows) {
  return tabular::TabularDataset(std::move(header), std::move(rows), std::move(id));
}

rdf::Triple triple(std::string s, std::string p, rdf::Term o) { return {rdf::Iri{std::move(s)}, rdf::Iri{std::move(p)}, std::move(o)}; }

}  // namespace

TEST(GenerateTerm, ReferenceLiteral) {
  auto t = generate_term(TermMap::reference("Technique"), row({{"Technique", "drawing technique"}}), builtins());
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, rdf::Term(rdf::make_literal("drawing technique")));
}

TEST(GenerateTerm, AatLookup) {
  auto fn = TermMap::function("aat_lookup", {TermMap::reference("Technique")}, TermType::iri);
  auto t = generate_term(fn, row({{"Technique", "drawing technique"}}), builtins());
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, rdf::Term(rdf::Iri{"http://vocab.getty.edu/aat/300054196"}));
  EXPECT_FALSE(generate_term(fn, row({{"Technique", "unknown technique xyz"}}), builtins()));
}

TEST(GenerateTerm, AbsentReference) {
  EXPECT_FALSE(generate_term(TermMap::reference("Technique"), row({{"Technique", std::nullopt}}), builtins()));
  EXPECT_FALSE(generate_term(TermMap::templ(ex + "{A}"), row({{"A", std::nullopt}}), builtins()));
  auto empty = generate_term(TermMap::reference("A"), row({{"A", ""}}), builtins());
  ASSERT_TRUE(empty);
  EXPECT_EQ(*empty, rdf::Term(rdf::make_literal("")));
}

TEST(GenerateTerm, ConstantsAndAnnotations) {
  auto r = row({{"A", "x"}});
  EXPECT_EQ(generate_term(TermMap::constant(ex + "c", TermType::iri), r, builtins()), rdf::Term(rdf::Iri{ex + "c"}));
  auto dt = TermMap::reference("A");
  dt.datatype = "http://www.w3.org/2001/XMLSchema#token";
  EXPECT_EQ(generate_term(dt, r, builtins()), rdf::Term(rdf::make_literal("x", dt.datatype)));
  auto lang = TermMap::reference("A");
  lang.language = "it";
  auto t = generate_term(lang, r, builtins());
  ASSERT_TRUE(t);
  const auto& lit = std::get<rdf::Literal>(*t);
  EXPECT_EQ(lit.language, "it");
  EXPECT_EQ(lit.datatype, "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString");
}

TEST(GenerateTerm, TemplatesEncodeOnlyIris) {
  auto r = row({{"ID", "OBJ 12"}});
  EXPECT_EQ(generate_term(TermMap::templ(ex + "o/{ID}"), r, builtins()), rdf::Term(rdf::Iri{ex + "o/OBJ%2012"}));
  EXPECT_EQ(generate_term(TermMap::templ("id {ID}", TermType::literal), r, builtins()),
            rdf::Term(rdf::make_literal("id OBJ 12")));
}

TEST(GenerateTerm, ReferenceIriMustBeAbsolute) {
  EXPECT_THROW(generate_term(TermMap::reference("A", TermType::iri), row({{"A", "not an iri"}}), builtins()),
               IriInvalidError);
  EXPECT_THROW(generate_term(TermMap::templ("{A}/x"), row({{"A", "rel"}}), builtins()), IriInvalidError);
  EXPECT_EQ(generate_term(TermMap::reference("A", TermType::iri), row({{"A", ex + "z"}}), builtins()),
            rdf::Term(rdf::Iri{ex + "z"}));
}

TEST(GenerateTerm, BlankNodes) {
  TermContext ctx{"person", 3, ""};
  auto t = generate_term(TermMap::templ("{A}", TermType::blank), row({{"A", "x"}}), builtins(), ctx);
  ASSERT_TRUE(t);
  EXPECT_EQ(std::get<rdf::BlankNode>(*t).label, blank_label(ctx));
  EXPECT_NE(blank_label({"person", 3, ""}), blank_label({"person", 4, ""}));
  EXPECT_NE(blank_label({"person", 3, ""}), blank_label({"person", 3, "1"}));
  EXPECT_NE(blank_label({"ab", 1, ""}), blank_label({"a", 11, ""}));
  for (char c : blank_label({"m-1 é", 0, "2"})) EXPECT_TRUE(std::isalnum(static_cast<unsigned char>(c)));
}

TEST(GenerateTerm, FunctionFanOut) {
  auto fn = TermMap::function("split", {TermMap::constant(";", TermType::literal), TermMap::reference("S")});
  auto terms = generate_terms(fn, row({{"S", "a; b;;c"}}), builtins());
  EXPECT_EQ(terms, (std::vector<rdf::Term>{rdf::make_literal("a"), rdf::make_literal("b"), rdf::make_literal("c")}));
  EXPECT_THROW(generate_term(TermMap::function("nope", {}), row({}), builtins()), FunctionNotFoundError);
}

TEST(Execute, ZeroRows) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::templ(ex + "{ID}"), {pom("p", TermMap::reference("ID"))}, {ex + "C"})};
  Sources s;
  s.emplace("d", table("d", {"ID"}, {}));
  EXPECT_TRUE(execute(g, s, builtins()).empty());
}

TEST(Execute, TwoRowsTwoPoms) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::templ(ex + "{ID}"),
                        {pom("name", TermMap::reference("Name")), pom("age", TermMap::reference("Age"))})};
  Sources s;
  s.emplace("d", table("d", {"ID", "Name", "Age"}, {{"1", "Ada", "36"}, {"2", "Grace", "85"}}));
  auto out = execute(g, s, builtins());
  std::set<rdf::Triple> got(out.begin(), out.end());
  std::set<rdf::Triple> want{triple(ex + "1", ex + "name", rdf::make_literal("Ada")),
                             triple(ex + "1", ex + "age", rdf::make_literal("36")),
                             triple(ex + "2", ex + "name", rdf::make_literal("Grace")),
                             triple(ex + "2", ex + "age", rdf::make_literal("85"))};
  EXPECT_EQ(out.size(), 4u);
  EXPECT_EQ(got, want);

  g.triples_maps[0].subject.classes = {ex + "Person"};
  EXPECT_EQ(execute(g, s, builtins()).size(), 6u);
}

TEST(Execute, AbsentSubjectSkipsRow) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::templ(ex + "{ID}"), {pom("name", TermMap::reference("Name"))}, {ex + "C"})};
  Sources s;
  s.emplace("d", table("d", {"ID", "Name"}, {{std::nullopt, "Ada"}, {"2", std::nullopt}}));
  auto out = execute(g, s, builtins());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], triple(ex + "2", type_iri, rdf::Iri{ex + "C"}));
}

TEST(Execute, JoinDuplicatesCollapseAtSerialization) {
  rml::RmlGraph g;
  g.triples_maps = {
      map("child", "c", TermMap::templ(ex + "c/{ID}"), {pom("parent", rml::ReferencingObjectMap{"parent", {{"ID", "ID"}}})}),
      map("parent", "p", TermMap::templ(ex + "p/{ID}"), {})};
  Sources s;
  s.emplace("c", table("c", {"ID"}, {{"1"}}));
  s.emplace("p", table("p", {"ID"}, {{"1"}, {"1"}, {"2"}}));
  auto out = execute(g, s, builtins());
  EXPECT_EQ(out.size(), 2u);
  for (const auto& t : out) EXPECT_EQ(t, triple(ex + "c/1", ex + "parent", rdf::Iri{ex + "p/1"}));
  EXPECT_EQ(serialize_ntriples(out), "<http://ex.org/c/1> <http://ex.org/parent> <http://ex.org/p/1> .\n");
}

TEST(Execute, JoinIgnoresAbsentKeys) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::templ(ex + "{ID}"), {pom("link", rml::ReferencingObjectMap{"m", {{"Link", "ID"}}})})};
  Sources s;
  s.emplace("d", table("d", {"ID", "Link"}, {{"1", "2"}, {"2", std::nullopt}, {"3", "9"}, {"4", "1"}}));
  auto out = execute(g, s, builtins());
  std::set<rdf::Triple> got(out.begin(), out.end());
  EXPECT_EQ(got, (std::set<rdf::Triple>{triple(ex + "1", ex + "link", rdf::Iri{ex + "2"}),
                                        triple(ex + "4", ex + "link", rdf::Iri{ex + "1"})}));
}

TEST(Execute, JoinWithoutConditionOnSameSource) {
  rml::RmlGraph g;
  g.triples_maps = {map("a", "d", TermMap::templ(ex + "a/{ID}"), {pom("b", rml::ReferencingObjectMap{"b", {}})}),
                    map("b", "d", TermMap::templ(ex + "b/{ID}"), {})};
  Sources s;
  s.emplace("d", table("d", {"ID"}, {{"1"}, {"2"}}));
  auto out = execute(g, s, builtins());
  std::set<rdf::Triple> got(out.begin(), out.end());
  EXPECT_EQ(got, (std::set<rdf::Triple>{triple(ex + "a/1", ex + "b", rdf::Iri{ex + "b/1"}),
                                        triple(ex + "a/2", ex + "b", rdf::Iri{ex + "b/2"})}));
  g.triples_maps[1].logical_source.source_id = "e";
  s.emplace("e", table("e", {"ID"}, {{"1"}}));
  EXPECT_THROW(execute(g, s, builtins()), ExecutionError);
}

TEST(Execute, PreflightErrors) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::templ(ex + "{ID}"), {pom("p", TermMap::function("nope", {TermMap::reference("ID")}))})};
  Sources s;
  s.emplace("d", table("d", {"ID"}, {{"1"}}));
  try {
    execute(g, s, builtins());
    FAIL();
  } catch (const FunctionNotFoundError& e) {
    EXPECT_EQ(e.name(), "nope");
    EXPECT_EQ(e.map_id(), "m");
  }
  int emitted = 0;
  EXPECT_THROW(execute(g, s, builtins(), [&](const rdf::Triple&) { ++emitted; }), FunctionNotFoundError);
  EXPECT_EQ(emitted, 0);

  g.triples_maps[0].predicate_object_maps = {pom("p", TermMap::reference("Missing"))};
  EXPECT_THROW(execute(g, s, builtins()), ExecutionError);

  g.triples_maps[0].logical_source.source_id = "elsewhere";
  try {
    execute(g, s, builtins());
    FAIL();
  } catch (const MissingSourceError& e) {
    EXPECT_EQ(e.map_id(), "m");
  }

  g.triples_maps[0].logical_source.source_id = "d";
  g.triples_maps[0].predicate_object_maps = {
      pom("p", TermMap::function("concat", {TermMap::reference("ID")}))};
  EXPECT_THROW(execute(g, s, builtins()), ExecutionError);
}

TEST(Execute, RowErrorsCarryPosition) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::reference("ID", TermType::iri), {})};
  Sources s;
  s.emplace("d", table("d", {"ID"}, {{ex + "ok"}, {"bad value"}}));
  try {
    execute(g, s, builtins());
    FAIL();
  } catch (const IriInvalidError& e) {
    EXPECT_EQ(e.map_id(), "m");
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(Execute, BlankSubjectsPerRow) {
  rml::RmlGraph g;
  g.triples_maps = {map("m", "d", TermMap::reference("ID", TermType::blank), {pom("p", TermMap::reference("ID"))})};
  Sources s;
  s.emplace("d", table("d", {"ID"}, {{"same"}, {"same"}}));
  auto out = execute(g, s, builtins());
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NE(out[0].subject, out[1].subject);
  EXPECT_TRUE(std::holds_alternative<rdf::BlankNode>(out[0].subject));
}

TEST(Builtins, Examples) {
  auto r = builtins();
  EXPECT_EQ(r.call("aat_lookup", {"drawing technique"}), (std::vector<std::string>{"http://vocab.getty.edu/aat/300054196"}));
  EXPECT_EQ(r.call("aat_lookup", {"  Drawing   TECHNIQUE "}), (std::vector<std::string>{"http://vocab.getty.edu/aat/300054196"}));
  EXPECT_TRUE(r.call("aat_lookup", {"unknown technique xyz"}).empty());
  EXPECT_EQ(r.call("concat", {"-", "a", "b"}), (std::vector<std::string>{"a-b"}));
  EXPECT_TRUE(r.call("concat", {"-", "a", std::nullopt}).empty());
  EXPECT_EQ(r.call("trim", {"  x y \t"}), (std::vector<std::string>{"x y"}));
  EXPECT_EQ(r.call("lowercase", {"AbC"}), (std::vector<std::string>{"abc"}));
  EXPECT_EQ(r.call("fixed_prefix", {"urn:x:", "1"}), (std::vector<std::string>{"urn:x:1"}));
  EXPECT_TRUE(r.call("trim", {std::nullopt}).empty());
  EXPECT_THROW(r.call("trim", {"a", "b"}), ExecutionError);
  EXPECT_THROW(r.call("missing", {}), FunctionNotFoundError);
  for (const char* name : {"aat_lookup", "trim", "lowercase", "concat", "fixed_prefix", "split"})
    EXPECT_TRUE(r.contains(name)) << name;
}

TEST(LookupTable, Parse) {
  auto t = parse_lookup_table(R"({"drawing technique": "300054196", "Engraving": ["aat:300053225", "http://ex.org/e"]})");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.lookup("Drawing Technique"), (std::vector<std::string>{"http://vocab.getty.edu/aat/300054196"}));
  EXPECT_EQ(t.lookup("engraving"),
            (std::vector<std::string>{"http://vocab.getty.edu/aat/300053225", "http://ex.org/e"}));
  EXPECT_TRUE(t.lookup("etching").empty());
  EXPECT_THROW(parse_lookup_table("[]"), FormatError);
  EXPECT_THROW(parse_lookup_table(R"({"x": "not an iri"})"), FormatError);
  EXPECT_THROW(parse_lookup_table(R"({"x": 1})"), FormatError);
}

TEST(LookupTable, BundledFileContainsSeed) {
  auto t = parse_lookup_table(read_file(testpaths::data("vocab/aat.json")));
  EXPECT_EQ(t.lookup("drawing technique"), (std::vector<std::string>{"http://vocab.getty.edu/aat/300054196"}));
  EXPECT_EQ(default_aat_table().lookup("drawing technique"), t.lookup("drawing technique"));
}
