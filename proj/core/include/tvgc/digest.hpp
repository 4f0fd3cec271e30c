#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace tvgc {

/// SHA-256, hex-encoded. Used for manifest input/output digests and the
/// golden-file regression tests.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::filesystem::path& path);

} // namespace tvgc
