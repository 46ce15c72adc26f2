#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>

#include "model_io.hpp"

namespace filter_ergodics {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Checksum of the joint kernel rows and labels.
inline std::string model_hash(const JointKernel& kernel) {
  Json j{{"hidden_labels", kernel.space().hidden_labels()},
         {"observed_labels", kernel.space().observed_labels()},
         {"kernel", kernel_json(kernel, std::nullopt)}};
  return hex64(fnv1a64(j.dump()));
}

/// Records the resolved configuration and checksums of every file an
/// invocation writes; serialized as manifest.json in the output directory.
class RunManifest {
 public:
  RunManifest(std::string command, Json config, std::string model_hash)
      : command_(std::move(command)), config_(std::move(config)), model_hash_(std::move(model_hash)) {}

  /// Writes `contents` to dir/name and records its checksum.
  void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& contents) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write '" + (dir / name).string() + "'");
    out << contents;
    checksums_[name] = hex64(fnv1a64(contents));
  }

  Json json() const {
    Json files = Json::object();
    for (const auto& [k, v] : checksums_) files[k] = v;
    return Json{{"tool", "filter-ergodics"},
                {"version", kToolVersion},
                {"command", command_},
                {"config", config_},
                {"model_hash", model_hash_},
                {"checksum", "fnv1a64"},
                {"files", files}};
  }

  void save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw Error("cannot write manifest in '" + dir.string() + "'");
    out << json().dump(2) << '\n';
  }

 private:
  std::string command_;
  Json config_;
  std::string model_hash_;
  std::map<std::string, std::string> checksums_;
};

}  // namespace filter_ergodics
