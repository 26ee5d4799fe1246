#pragma once

#include <filesystem>
#include <random>
#include <string>

namespace testpaths {

inline std::filesystem::path data_dir() {
#ifdef CROSSWALK_DATA_DIR
  return CROSSWALK_DATA_DIR;
#else
  return "data";
#endif
}

inline std::filesystem::path data(const std::string& relative) { return data_dir() / relative; }

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("crosswalk-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testpaths
