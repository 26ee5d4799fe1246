#include <gtest/gtest.h>

#include "crosswalk/engine.hpp"
#include "ntriples_check.hpp"

using namespace crosswalk;
using namespace crosswalk::engine;

namespace {

rdf::Triple t(std::string s, std::string p, rdf::Term o) { return {rdf::Iri{std::move(s)}, rdf::Iri{std::move(p)}, std::move(o)}; }

const std::string s = "http://ex.org/s";
const std::string p = "http://ex.org/p";

}  // namespace

TEST(NTriples, EscapesQuotes) {
  auto line = format_ntriple(t(s, p, rdf::make_literal("say \"hi\"")));
  EXPECT_EQ(line, "<http://ex.org/s> <http://ex.org/p> \"say \\\"hi\\\"\" .");
}

TEST(NTriples, EscapesControlCharacters) {
  EXPECT_EQ(format_term(rdf::make_literal("a\\b\nc\rd\te")), "\"a\\\\b\\nc\\rd\\te\"");
  EXPECT_EQ(format_term(rdf::make_literal(std::string("x\x01y", 3))), "\"x\\u0001y\"");
  EXPECT_EQ(format_term(rdf::make_literal("caf\xC3\xA9")), "\"caf\xC3\xA9\"");
}

TEST(NTriples, TermForms) {
  EXPECT_EQ(format_term(rdf::Iri{s}), "<http://ex.org/s>");
  EXPECT_EQ(format_term(rdf::BlankNode{"b0"}), "_:b0");
  EXPECT_EQ(format_term(rdf::make_literal("1", "http://www.w3.org/2001/XMLSchema#integer")),
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>");
  EXPECT_EQ(format_term(rdf::make_literal("ciao", std::nullopt, "it")), "\"ciao\"@it");
}

TEST(NTriples, EmptyStream) { EXPECT_EQ(serialize_ntriples({}), ""); }

TEST(NTriples, DeduplicatesAndSorts) {
  std::vector<rdf::Triple> in{t(s, p, rdf::make_literal("b")), t(s, p, rdf::make_literal("a")),
                              t(s, p, rdf::make_literal("b"))};
  EXPECT_EQ(serialize_ntriples(in, true),
            "<http://ex.org/s> <http://ex.org/p> \"a\" .\n<http://ex.org/s> <http://ex.org/p> \"b\" .\n");
  EXPECT_EQ(serialize_ntriples(in, false),
            "<http://ex.org/s> <http://ex.org/p> \"b\" .\n<http://ex.org/s> <http://ex.org/p> \"a\" .\n");
}

TEST(NTriples, StableOrderIsByteOrder) {
  std::vector<rdf::Triple> in{t("http://ex.org/\xC3\xA9", p, rdf::Iri{s}), t("http://ex.org/Z", p, rdf::Iri{s}),
                              t("http://ex.org/a", p, rdf::Iri{s})};
  auto text = serialize_ntriples(in);
  auto z = text.find("/Z>"), a = text.find("/a>"), e = text.find("/\xC3\xA9>");
  EXPECT_LT(z, a);
  EXPECT_LT(a, e);
  std::reverse(in.begin(), in.end());
  EXPECT_EQ(serialize_ntriples(in), text);
}

TEST(NTriples, OutputPassesIndependentCheck) {
  std::vector<rdf::Triple> in{t(s, p, rdf::make_literal("tab\tquote\" back\\ nl\n cr\r \xF0\x9F\x98\x80")),
                              t(s, p, rdf::make_literal("x", std::nullopt, "en-GB")),
                              {rdf::BlankNode{"m6ar0"}, rdf::Iri{p}, rdf::BlankNode{"m6ar1p2"}}};
  auto report = nt::check(serialize_ntriples(in));
  EXPECT_TRUE(report.ok()) << (report.errors.empty() ? "" : report.errors[0]);
  ASSERT_EQ(report.triples.size(), 3u);
  bool found = false;
  for (const auto& tr : report.triples)
    if (tr.o.value == "tab\tquote\" back\\ nl\n cr\r \xF0\x9F\x98\x80") found = true;
  EXPECT_TRUE(found);
}

TEST(NTriplesChecker, RejectsMalformedLines) {
  EXPECT_FALSE(nt::check("<http://ex.org/s> <http://ex.org/p> \"x\" .").ok());
  EXPECT_FALSE(nt::check("<s> <http://ex.org/p> \"x\" .\n").ok());
  EXPECT_FALSE(nt::check("<http://ex.org/s> <http://ex.org/p> \"a\nb\" .\n").ok());
  EXPECT_FALSE(nt::check("<http://ex.org/a b> <http://ex.org/p> \"x\" .\n").ok());
  EXPECT_FALSE(nt::check("\"x\" <http://ex.org/p> \"x\" .\n").ok());
  EXPECT_FALSE(nt::check("<http://ex.org/s> <http://ex.org/p> \"x\"@ .\n").ok());
  EXPECT_FALSE(nt::check("<http://ex.org/s> <http://ex.org/p> \"\xC3\" .\n").ok());
  EXPECT_TRUE(nt::check("<http://ex.org/s> <http://ex.org/p> \"x\" .\n").ok());
  EXPECT_TRUE(nt::check("").ok());
}
