#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace crosswalk::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_execution = 3;

std::string_view version();

struct PipelineConfig {
  std::filesystem::path schema;
  std::filesystem::path questionnaire;
  std::filesystem::path responses;
  std::filesystem::path defaults;
  std::filesystem::path pack;
  std::map<std::string, std::filesystem::path> sources;  // logical source id -> CSV file
  std::filesystem::path output;                          // final N-Triples file
  std::filesystem::path workdir;                         // intermediates; defaults to the output directory
  std::optional<std::filesystem::path> lookup;           // AAT lookup table
  std::optional<std::string> agent;
  bool stable = true;
  bool emit_provenance = true;
  bool from_limesurvey = false;
};

// Paths are resolved against base_dir. Throws FormatError when a referenced
// file does not exist.
PipelineConfig parse_pipeline_config(std::string_view json_text, const std::filesystem::path& base_dir);

// "out.nt" -> "out.prov.nt"
std::filesystem::path provenance_path(const std::filesystem::path& output);

// args excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crosswalk::cli
