#pragma once

#include <string>
#include <string_view>

namespace alphaleak::cli {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
// Throws std::runtime_error when the file cannot be read.
std::string sha256_file(const std::string& path);

}  // namespace alphaleak::cli
