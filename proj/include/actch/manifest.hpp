#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace actch {

inline constexpr const char* kToolVersion = "actch 0.1.0";

/// Provenance record written next to every CLI output.
struct RunManifest {
    std::string subcommand;
    std::string config_digest;  // stable under key reordering of the config
    std::uint64_t seed = 0;
    std::string version = kToolVersion;
    double wall_ms = 0.0;
    std::vector<std::string> outputs;
};

/// FNV-1a 64 over a canonical (key-sorted) serialization.
std::string digest_hex(const std::string& canonical);

/// Writes `<out_path>.manifest.json`.
void write_manifest(const RunManifest& m, const std::string& out_path);

}  // namespace actch
