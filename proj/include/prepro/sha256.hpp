#pragma once

#include <string>

namespace prepro {

// SHA-256 of a byte string, lowercase hex. Used only for cache keys.
std::string sha256_hex(const std::string& data);

}  // namespace prepro
