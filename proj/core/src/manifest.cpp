#include "tvgc/manifest.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvgc/errors.hpp"

namespace tvgc {

std::string manifest_to_json(const RunManifest& manifest) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["artifact_version"] = manifest.artifact_version;
    j["timestamp"] = manifest.timestamp;
    j["seed"] = manifest.seed;
    j["config"] = manifest.config;
    j["inputs"] = manifest.inputs;
    j["outputs"] = manifest.outputs;
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("manifest: invalid JSON: ") + e.what());
    }
    RunManifest manifest;
    manifest.command = j.value("command", "");
    manifest.artifact_version = j.value("artifact_version", "");
    manifest.timestamp = j.value("timestamp", "");
    manifest.seed = j.value("seed", std::uint64_t{0});
    // .items() must not run on a temporary; bind the sections first.
    const nlohmann::json config = j.value("config", nlohmann::json::object());
    for (const auto& [key, value] : config.items()) {
        manifest.config[key] = value.get<std::string>();
    }
    const nlohmann::json inputs = j.value("inputs", nlohmann::json::object());
    for (const auto& [key, value] : inputs.items()) {
        manifest.inputs[key] = value.get<std::string>();
    }
    const nlohmann::json outputs = j.value("outputs", nlohmann::json::object());
    for (const auto& [key, value] : outputs.items()) {
        manifest.outputs[key] = value.get<std::string>();
    }
    return manifest;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write manifest '" + path.string() + "'");
    out << manifest_to_json(manifest);
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open manifest '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return manifest_from_json(buffer.str());
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace tvgc
