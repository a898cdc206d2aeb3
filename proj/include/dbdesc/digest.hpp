#pragma once

#include <string>

namespace dbdesc {

// Lowercase hex SHA-256 of the input bytes.
std::string sha256_hex(const std::string& data);

} // namespace dbdesc
