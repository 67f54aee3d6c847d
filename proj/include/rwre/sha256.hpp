#ifndef RWRE_SHA256_HPP
#define RWRE_SHA256_HPP

#include <string>

namespace rwre {

// Hex digest of a byte string (FIPS 180-4).
std::string sha256_hex(const std::string& data);

// Hex digest of a file's contents. Throws std::runtime_error if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace rwre

#endif  // RWRE_SHA256_HPP
