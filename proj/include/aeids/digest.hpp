#pragma once

#include <string>

namespace aeids {

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);  // throws FileError

}  // namespace aeids
