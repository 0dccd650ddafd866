#pragma once

#include <cstdint>
#include <vector>

namespace qkdlink::crypto {

/// One-time pad: bytewise XOR. Key must be exactly as long as the message;
/// the transform is its own inverse.
std::vector<std::uint8_t> otp_encrypt(const std::vector<std::uint8_t>& plaintext,
                                      const std::vector<std::uint8_t>& key);

std::vector<std::uint8_t> otp_decrypt(const std::vector<std::uint8_t>& ciphertext,
                                      const std::vector<std::uint8_t>& key);

} // namespace qkdlink::crypto
