#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace tvgc {

/// Provenance record written alongside every CLI output. Rerunning the
/// command recorded here reproduces the outputs bit-exactly; only the
/// timestamp differs between reruns.
struct RunManifest {
    std::string command;
    std::string artifact_version;
    std::string timestamp; // ISO-8601 UTC
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;  // resolved option values
    std::map<std::string, std::string> inputs;  // path -> sha256
    std::map<std::string, std::string> outputs; // path -> sha256
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& json_text);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp_now();

} // namespace tvgc
