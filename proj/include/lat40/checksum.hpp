#pragma once

#include <string>
#include <string_view>

namespace lat40 {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
/// Throws FormatError when the file cannot be read.
std::string sha256_file(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace lat40
