#include "qkdlink/crypto/envelope.hpp"

#include <stdexcept>

#include "qkdlink/crypto/aes256_cbc.hpp"
#include "qkdlink/crypto/ascon.hpp"
#include "qkdlink/crypto/otp.hpp"

namespace qkdlink::crypto {

namespace {

/// Associated data authenticated by AEAD seals: the envelope's algorithm tag
/// and key ID, exactly as they appear on the wire.
std::vector<std::uint8_t> header_bytes(Algorithm alg, const KeyId& key_id) {
    std::vector<std::uint8_t> h;
    h.reserve(17);
    h.push_back(static_cast<std::uint8_t>(alg));
    h.insert(h.end(), key_id.begin(), key_id.end());
    return h;
}

void split_material(Algorithm alg, const std::vector<std::uint8_t>& material,
                    std::vector<std::uint8_t>& key,
                    std::vector<std::uint8_t>& iv) {
    const auto spec = spec_for(alg);
    const std::size_t key_bytes = spec.key_bits / 8;
    const std::size_t iv_bytes = spec.iv_or_nonce_bits / 8;
    if (material.size() != key_bytes + iv_bytes)
        throw std::invalid_argument("envelope: wrong key material size");
    key.assign(material.begin(), material.begin() + static_cast<long>(key_bytes));
    iv.assign(material.begin() + static_cast<long>(key_bytes), material.end());
}

} // namespace

std::size_t key_material_bits(Algorithm algorithm,
                              std::size_t plaintext_bytes) {
    if (algorithm == Algorithm::OTP) return plaintext_bytes * 8;
    const auto spec = spec_for(algorithm);
    return spec.key_bits + spec.iv_or_nonce_bits;
}

std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& env) {
    if (env.iv_or_nonce.size() > 255)
        throw std::invalid_argument("envelope: IV too long");
    const bool aead = spec_for(env.algorithm).aead;
    if (aead && env.auth_tag.size() != 16)
        throw std::invalid_argument("envelope: AEAD requires a 16-byte tag");
    if (!aead && !env.auth_tag.empty())
        throw std::invalid_argument("envelope: tag on a non-AEAD envelope");

    std::vector<std::uint8_t> wire = header_bytes(env.algorithm, env.key_id);
    wire.push_back(static_cast<std::uint8_t>(env.iv_or_nonce.size()));
    wire.insert(wire.end(), env.iv_or_nonce.begin(), env.iv_or_nonce.end());
    const auto n = static_cast<std::uint32_t>(env.ciphertext.size());
    for (int i = 3; i >= 0; --i)
        wire.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
    wire.insert(wire.end(), env.ciphertext.begin(), env.ciphertext.end());
    wire.insert(wire.end(), env.auth_tag.begin(), env.auth_tag.end());
    return wire;
}

CipherEnvelope parse_envelope(const std::vector<std::uint8_t>& wire) {
    std::size_t pos = 0;
    auto need = [&](std::size_t n) {
        if (wire.size() - pos < n)
            throw std::invalid_argument("envelope: truncated wire data");
    };
    CipherEnvelope env;
    need(1);
    const std::uint8_t tag = wire[pos++];
    if (tag > static_cast<std::uint8_t>(Algorithm::ASCON80PQ))
        throw std::invalid_argument("envelope: unknown algorithm tag");
    env.algorithm = static_cast<Algorithm>(tag);
    need(16);
    std::copy(wire.begin() + static_cast<long>(pos),
              wire.begin() + static_cast<long>(pos) + 16, env.key_id.begin());
    pos += 16;
    need(1);
    const std::size_t iv_len = wire[pos++];
    need(iv_len);
    env.iv_or_nonce.assign(wire.begin() + static_cast<long>(pos),
                           wire.begin() + static_cast<long>(pos + iv_len));
    pos += iv_len;
    need(4);
    std::uint32_t ct_len = 0;
    for (int i = 0; i < 4; ++i) ct_len = (ct_len << 8) | wire[pos++];
    need(ct_len);
    env.ciphertext.assign(wire.begin() + static_cast<long>(pos),
                          wire.begin() + static_cast<long>(pos + ct_len));
    pos += ct_len;
    if (spec_for(env.algorithm).aead) {
        need(16);
        env.auth_tag.assign(wire.begin() + static_cast<long>(pos),
                            wire.begin() + static_cast<long>(pos) + 16);
        pos += 16;
    }
    if (pos != wire.size())
        throw std::invalid_argument("envelope: trailing bytes");
    return env;
}

CipherEnvelope seal_envelope(Algorithm algorithm, const KeyId& key_id,
                             const std::vector<std::uint8_t>& plaintext,
                             const std::vector<std::uint8_t>& key_material) {
    CipherEnvelope env;
    env.algorithm = algorithm;
    env.key_id = key_id;
    switch (algorithm) {
        case Algorithm::OTP:
            env.ciphertext = otp_encrypt(plaintext, key_material);
            break;
        case Algorithm::AES256: {
            std::vector<std::uint8_t> key, iv;
            split_material(algorithm, key_material, key, iv);
            env.iv_or_nonce = iv;
            env.ciphertext = aes256_encrypt(plaintext, key, iv);
            break;
        }
        case Algorithm::ASCON128:
        case Algorithm::ASCON128A:
        case Algorithm::ASCON80PQ: {
            std::vector<std::uint8_t> key, nonce;
            split_material(algorithm, key_material, key, nonce);
            env.iv_or_nonce = nonce;
            const auto sealed = ascon_encrypt(algorithm, plaintext, key, nonce,
                                              header_bytes(algorithm, key_id));
            env.ciphertext = sealed.ciphertext;
            env.auth_tag.assign(sealed.tag.begin(), sealed.tag.end());
            break;
        }
    }
    return env;
}

std::vector<std::uint8_t> open_envelope(
    const CipherEnvelope& env, const std::vector<std::uint8_t>& key_material) {
    switch (env.algorithm) {
        case Algorithm::OTP:
            return otp_decrypt(env.ciphertext, key_material);
        case Algorithm::AES256: {
            std::vector<std::uint8_t> key, iv;
            split_material(env.algorithm, key_material, key, iv);
            if (iv != env.iv_or_nonce)
                throw std::invalid_argument(
                    "envelope: IV does not match the key material");
            return aes256_decrypt(env.ciphertext, key, iv);
        }
        case Algorithm::ASCON128:
        case Algorithm::ASCON128A:
        case Algorithm::ASCON80PQ: {
            std::vector<std::uint8_t> key, nonce;
            split_material(env.algorithm, key_material, key, nonce);
            if (nonce != env.iv_or_nonce)
                throw IntegrityError(
                    "envelope: nonce does not match the key material");
            if (env.auth_tag.size() != 16)
                throw std::invalid_argument("envelope: missing AEAD tag");
            std::array<std::uint8_t, 16> tag;
            std::copy(env.auth_tag.begin(), env.auth_tag.end(), tag.begin());
            return ascon_decrypt(env.algorithm, env.ciphertext, tag, key, nonce,
                                 header_bytes(env.algorithm, env.key_id));
        }
    }
    throw std::invalid_argument("envelope: unknown algorithm");
}

} // namespace qkdlink::crypto
