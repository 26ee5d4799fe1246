#include <gtest/gtest.h>

#include "crosswalk/engine.hpp"
#include "crosswalk/provenance.hpp"
#include "ntriples_check.hpp"

using namespace crosswalk;
using namespace crosswalk::provenance;

namespace {

const std::string prov = "http://www.w3.org/ns/prov#";

Clock::time_point at(long long ms) { return Clock::time_point(std::chrono::milliseconds(ms)); }

RunRecord record(std::size_t inputs, bool agent) {
  RunRecord r;
  r.started = at(1714557600000);
  r.ended = at(1714557600250);
  r.tool_version = "0.3.0";
  r.output_label = "out.nt";
  r.output_digest = sha256_hex("output");
  r.run_iri = make_run_iri(r.output_digest, r.started);
  for (std::size_t i = 0; i < inputs; ++i)
    r.inputs.push_back({i == 0 ? InputRole::mapping : InputRole::source, "in" + std::to_string(i) + ".csv",
                        sha256_hex(std::to_string(i))});
  if (agent) r.agent = "curator";
  return r;
}

std::size_t count_predicate(const std::vector<rdf::Triple>& ts, const std::string& predicate) {
  return std::count_if(ts.begin(), ts.end(), [&](const rdf::Triple& t) { return t.predicate.value == predicate; });
}

}  // namespace

TEST(Provenance, UsedPerInput) {
  auto ts = emit_provenance(record(2, false));
  EXPECT_EQ(count_predicate(ts, prov + "used"), 2u);
  EXPECT_EQ(count_predicate(ts, prov + "wasGeneratedBy"), 1u);
  EXPECT_EQ(count_predicate(ts, prov + "startedAtTime"), 1u);
  EXPECT_EQ(count_predicate(ts, prov + "endedAtTime"), 1u);
}

TEST(Provenance, Deterministic) { EXPECT_EQ(emit_provenance(record(3, true)), emit_provenance(record(3, true))); }

TEST(Provenance, AgentOnlyWhenNamed) {
  auto without = emit_provenance(record(1, false));
  for (const auto& t : without) {
    if (auto* o = std::get_if<rdf::Iri>(&t.object)) EXPECT_NE(o->value, prov + "Agent");
    if (auto* o = std::get_if<rdf::Literal>(&t.object)) EXPECT_NE(o->lexical, "curator");
  }
  auto with = emit_provenance(record(1, true));
  bool found = false;
  for (const auto& t : with)
    if (auto* o = std::get_if<rdf::Literal>(&t.object); o && o->lexical == "curator") found = true;
  EXPECT_TRUE(found);
}

TEST(Provenance, AffineCount) {
  for (std::size_t n = 0; n < 6; ++n) {
    EXPECT_EQ(emit_provenance(record(n, false)).size(), 11 + 5 * n);
    EXPECT_EQ(emit_provenance(record(n, true)).size(), 14 + 5 * n);
  }
}

TEST(Provenance, SerializesCleanly) {
  auto text = engine::serialize_ntriples(emit_provenance(record(3, true)));
  auto report = nt::check(text);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.triples.size(), 14u + 15u);
  EXPECT_NE(text.find("\"2024-05-01T10:00:00.250Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime>"), std::string::npos);
}

TEST(Provenance, Validation) {
  auto bad = record(1, false);
  bad.inputs[0].sha256 = "ABC";
  EXPECT_THROW(emit_provenance(bad), FormatError);
  bad = record(1, false);
  bad.inputs[0].sha256 = std::string(64, 'A');
  EXPECT_THROW(validate(bad), FormatError);
  bad = record(1, false);
  bad.ended = at(0);
  EXPECT_THROW(validate(bad), FormatError);
  bad = record(1, false);
  bad.run_iri = "run/1";
  EXPECT_THROW(validate(bad), FormatError);
  bad = record(1, false);
  bad.output_digest.clear();
  EXPECT_THROW(validate(bad), FormatError);
  EXPECT_NO_THROW(validate(record(2, true)));
}

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Timestamp, Format) {
  EXPECT_EQ(format_timestamp(at(0)), "1970-01-01T00:00:00.000Z");
  EXPECT_EQ(format_timestamp(at(1714557600007)), "2024-05-01T10:00:00.007Z");
  EXPECT_EQ(format_timestamp(at(-1)), "1969-12-31T23:59:59.999Z");
}

TEST(RunIri, DerivedFromDigestAndStart) {
  auto a = make_run_iri(sha256_hex("x"), at(0));
  EXPECT_EQ(a.rfind("urn:crosswalk:run:", 0), 0u);
  EXPECT_EQ(a.size(), std::string("urn:crosswalk:run:").size() + 32);
  EXPECT_EQ(a, make_run_iri(sha256_hex("x"), at(0)));
  EXPECT_NE(a, make_run_iri(sha256_hex("x"), at(1)));
  EXPECT_NE(a, make_run_iri(sha256_hex("y"), at(0)));
}
