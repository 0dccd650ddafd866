#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qkdlink/crypto/cipher_spec.hpp"

namespace qkdlink::crypto {

using KeyId = std::array<std::uint8_t, 16>;

/// Ciphertext container transmitted on the classical channel. Carries the
/// key ID, never key material.
struct CipherEnvelope {
    Algorithm algorithm = Algorithm::OTP;
    KeyId key_id{};
    std::vector<std::uint8_t> iv_or_nonce;
    std::vector<std::uint8_t> ciphertext;
    std::vector<std::uint8_t> auth_tag; ///< 16 bytes for AEAD, else empty
};

/// Wire format: 1-byte algorithm tag, 16-byte key ID, 1-byte IV length,
/// IV/nonce, 4-byte big-endian ciphertext length, ciphertext, and a 16-byte
/// tag for AEAD algorithms.
std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& env);

/// Inverse; throws std::invalid_argument on truncation or malformed fields.
CipherEnvelope parse_envelope(const std::vector<std::uint8_t>& wire);

/// Encrypt plaintext under key_material (layout: key bytes then IV/nonce
/// bytes per the algorithm's CipherSpec; for OTP the material is the pad
/// itself). For AEAD algorithms the first 17 wire bytes (algorithm tag +
/// key ID) are authenticated as associated data.
CipherEnvelope seal_envelope(Algorithm algorithm, const KeyId& key_id,
                             const std::vector<std::uint8_t>& plaintext,
                             const std::vector<std::uint8_t>& key_material);

/// Inverse of seal_envelope. Throws IntegrityError when the ciphertext fails
/// its integrity check.
std::vector<std::uint8_t> open_envelope(
    const CipherEnvelope& env, const std::vector<std::uint8_t>& key_material);

/// Key material size in bits that seal_envelope consumes for one operation.
std::size_t key_material_bits(Algorithm algorithm, std::size_t plaintext_bytes);

} // namespace qkdlink::crypto
