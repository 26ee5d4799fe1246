#include "crosswalk/io.hpp"

#include <fstream>
#include <sstream>

namespace crosswalk {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open \"" + path.string() + "\" for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open \"" + path.string() + "\" for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing \"" + path.string() + "\"");
}

}  // namespace crosswalk
