#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gkpqpc {

// Record written next to every command's outputs: the resolved parameters
// are sufficient to re-run the command bit-identically (wall time and the
// digests are informational).
struct RunManifest {
  std::string command;
  nlohmann::json parameters;
  std::uint64_t seed = 0;
  std::string tool_version;
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;  // (filename, fnv1a64 digest)
};

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string file_digest_hex(const std::string& path);

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest load_manifest(const std::string& path);

}  // namespace gkpqpc
