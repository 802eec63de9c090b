#include "gkpqpc/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gkpqpc {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string file_digest_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open for digest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  char out[19];
  std::snprintf(out, sizeof out, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
  return out;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["parameters"] = manifest.parameters;
  j["seed"] = manifest.seed;
  j["tool_version"] = manifest.tool_version;
  j["wall_seconds"] = manifest.wall_seconds;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& [name, digest] : manifest.outputs) {
    outs.push_back({{"file", name}, {"fnv1a64", digest}});
  }
  j["outputs"] = outs;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open manifest: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.parameters = j.at("parameters");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.tool_version = j.value("tool_version", "");
  m.wall_seconds = j.value("wall_seconds", 0.0);
  for (const auto& o : j.value("outputs", nlohmann::json::array())) {
    m.outputs.emplace_back(o.at("file").get<std::string>(), o.value("fnv1a64", ""));
  }
  return m;
}

}  // namespace gkpqpc
