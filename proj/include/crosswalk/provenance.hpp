#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/error.hpp"
#include "crosswalk/rdf.hpp"

namespace crosswalk::provenance {

enum class InputRole { source, mapping, decisions };

std::string_view to_string(InputRole role);

struct InputDigest {
  InputRole role = InputRole::source;
  std::string label;   // path as given on the command line
  std::string sha256;  // 64 lowercase hex characters
};

using Clock = std::chrono::system_clock;

struct RunRecord {
  std::string run_iri;
  Clock::time_point started;
  Clock::time_point ended;
  std::string tool_version;
  std::vector<InputDigest> inputs;
  std::string output_label;
  std::string output_digest;
  std::optional<std::string> agent;
};

// Throws FormatError on a malformed digest, a relative IRI or ended < started.
void validate(const RunRecord& record);

std::string sha256_hex(std::string_view bytes);

// xsd:dateTime in UTC with millisecond precision, e.g. 2024-05-01T10:00:00.000Z.
std::string format_timestamp(Clock::time_point t);

// urn:crosswalk:run:<first 32 hex digits of sha256(output digest, start)>.
std::string make_run_iri(std::string_view output_digest, Clock::time_point started);

// 11 + 5 * inputs triples, plus 3 when an agent is named.
std::vector<rdf::Triple> emit_provenance(const RunRecord& record);

}  // namespace crosswalk::provenance
