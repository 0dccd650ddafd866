#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qkdlink/crypto/cipher_spec.hpp"

namespace qkdlink::crypto {

struct AsconSealed {
    std::vector<std::uint8_t> ciphertext; ///< same length as the plaintext
    std::array<std::uint8_t, 16> tag;
};

/// ASCON AEAD (v1.2 parameterization): variant must be ASCON128, ASCON128A
/// or ASCON80PQ. Key is 16 bytes (20 for 80pq), nonce 16 bytes. The
/// associated data is authenticated but not encrypted.
AsconSealed ascon_encrypt(Algorithm variant,
                          const std::vector<std::uint8_t>& plaintext,
                          const std::vector<std::uint8_t>& key,
                          const std::vector<std::uint8_t>& nonce,
                          const std::vector<std::uint8_t>& associated_data);

/// Inverse. Throws IntegrityError when the tag does not verify (any bit flip
/// in ciphertext, tag, nonce, or associated data); std::invalid_argument for
/// size or variant misuse.
std::vector<std::uint8_t> ascon_decrypt(
    Algorithm variant, const std::vector<std::uint8_t>& ciphertext,
    const std::array<std::uint8_t, 16>& tag,
    const std::vector<std::uint8_t>& key,
    const std::vector<std::uint8_t>& nonce,
    const std::vector<std::uint8_t>& associated_data);

} // namespace qkdlink::crypto
