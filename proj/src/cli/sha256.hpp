#ifndef OCY_CLI_SHA256_HPP
#define OCY_CLI_SHA256_HPP

#include <cstdint>
#include <span>
#include <string>

namespace ocy::cli {

/// Lowercase hex digest.
std::string sha256_hex(std::span<const std::uint8_t> bytes);

} // namespace ocy::cli

#endif
