#include "actch/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "actch/errors.hpp"

namespace actch {

std::string digest_hex(const std::string& canonical) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const RunManifest& m, const std::string& out_path) {
    nlohmann::json j;
    j["subcommand"] = m.subcommand;
    j["config_digest"] = m.config_digest;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["wall_ms"] = m.wall_ms;
    j["outputs"] = m.outputs;
    const std::string path = out_path + ".manifest.json";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open manifest file '" + path + "'");
    f << j.dump(2) << "\n";
}

}  // namespace actch
