#include "crosswalk/provenance.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>

#include "crosswalk/iri.hpp"

namespace crosswalk::provenance {

std::string_view to_string(InputRole role) {
  switch (role) {
    case InputRole::source: return "source";
    case InputRole::mapping: return "mapping";
    case InputRole::decisions: return "decisions";
  }
  return "source";
}

namespace {

bool is_digest(std::string_view d) {
  if (d.size() != 64) return false;
  for (char c : d)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

std::string prov(std::string_view local) { return std::string(ns::prov) + std::string(local); }
std::string dct(std::string_view local) { return std::string(ns::dcterms) + std::string(local); }

}  // namespace

void validate(const RunRecord& r) {
  if (!is_absolute_iri(r.run_iri)) throw FormatError("run IRI is not absolute: \"" + r.run_iri + "\"");
  if (r.ended < r.started) throw FormatError("run ended before it started");
  if (r.tool_version.empty()) throw FormatError("run record without tool version");
  for (const auto& in : r.inputs)
    if (!is_digest(in.sha256)) throw FormatError("malformed digest for input \"" + in.label + "\"");
  if (!is_digest(r.output_digest)) throw FormatError("malformed output digest");
  if (r.output_label.empty()) throw FormatError("run record without output label");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string format_timestamp(Clock::time_point t) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  auto secs = static_cast<std::time_t>(ms >= 0 ? ms / 1000 : (ms - 999) / 1000);
  auto frac = static_cast<int>(ms - static_cast<long long>(secs) * 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, frac);
  return buf;
}

std::string make_run_iri(std::string_view output_digest, Clock::time_point started) {
  return "urn:crosswalk:run:" + sha256_hex(std::string(output_digest) + "@" + format_timestamp(started)).substr(0, 32);
}

std::vector<rdf::Triple> emit_provenance(const RunRecord& r) {
  validate(r);
  std::vector<rdf::Triple> out;
  const rdf::Iri type{std::string(rdf_type)};
  const rdf::Iri label{std::string(ns::rdfs) + "label"};
  const rdf::Iri identifier{dct("identifier")};
  const std::string date_time = std::string(ns::xsd) + "dateTime";
  rdf::Iri run{r.run_iri};
  rdf::Iri software{r.run_iri + "/software"};

  out.push_back({run, type, rdf::Iri{prov("Activity")}});
  out.push_back({run, rdf::Iri{prov("startedAtTime")}, rdf::make_literal(format_timestamp(r.started), date_time)});
  out.push_back({run, rdf::Iri{prov("endedAtTime")}, rdf::make_literal(format_timestamp(r.ended), date_time)});
  out.push_back({run, rdf::Iri{prov("wasAssociatedWith")}, software});
  out.push_back({software, type, rdf::Iri{prov("SoftwareAgent")}});
  out.push_back({software, label, rdf::make_literal("crosswalk")});
  out.push_back({software, rdf::Iri{dct("hasVersion")}, rdf::make_literal(r.tool_version)});

  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    const auto& in = r.inputs[i];
    rdf::Iri entity{r.run_iri + "/input/" + std::to_string(i + 1)};
    out.push_back({run, rdf::Iri{prov("used")}, entity});
    out.push_back({entity, type, rdf::Iri{prov("Entity")}});
    out.push_back({entity, label, rdf::make_literal(in.label)});
    out.push_back({entity, identifier, rdf::make_literal("sha256:" + in.sha256)});
    out.push_back({entity, rdf::Iri{dct("type")}, rdf::make_literal(std::string(to_string(in.role)))});
  }

  rdf::Iri output{r.run_iri + "/output"};
  out.push_back({output, type, rdf::Iri{prov("Entity")}});
  out.push_back({output, rdf::Iri{prov("wasGeneratedBy")}, run});
  out.push_back({output, label, rdf::make_literal(r.output_label)});
  out.push_back({output, identifier, rdf::make_literal("sha256:" + r.output_digest)});

  if (r.agent) {
    rdf::Iri agent{r.run_iri + "/agent"};
    out.push_back({run, rdf::Iri{prov("wasAssociatedWith")}, agent});
    out.push_back({agent, type, rdf::Iri{prov("Agent")}});
    out.push_back({agent, label, rdf::make_literal(*r.agent)});
  }
  return out;
}

}  // namespace crosswalk::provenance
