#pragma once

#include <cstdint>
#include <vector>

namespace qkdlink::crypto {

/// AES-256-CBC with PKCS#7 padding. Key is 32 bytes, IV 16 bytes; ciphertext
/// length is the plaintext length rounded up to the next block boundary
/// (always at least one block longer than a full-block plaintext).
std::vector<std::uint8_t> aes256_encrypt(
    const std::vector<std::uint8_t>& plaintext,
    const std::vector<std::uint8_t>& key, const std::vector<std::uint8_t>& iv);

/// Inverse. Throws IntegrityError when the padding check fails.
std::vector<std::uint8_t> aes256_decrypt(
    const std::vector<std::uint8_t>& ciphertext,
    const std::vector<std::uint8_t>& key, const std::vector<std::uint8_t>& iv);

} // namespace qkdlink::crypto
