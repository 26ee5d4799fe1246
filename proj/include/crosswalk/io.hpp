#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "crosswalk/error.hpp"

namespace crosswalk {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::filesystem::path& path);

// Creates missing parent directories. Writes bytes verbatim (no newline translation).
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace crosswalk
