#include "qkdlink/crypto/aes256_cbc.hpp"

#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

#include "qkdlink/crypto/cipher_spec.hpp"

namespace qkdlink::crypto {

namespace {

struct CtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

void check_sizes(const std::vector<std::uint8_t>& key,
                 const std::vector<std::uint8_t>& iv) {
    if (key.size() != 32)
        throw std::invalid_argument("aes256: key must be 32 bytes");
    if (iv.size() != 16)
        throw std::invalid_argument("aes256: IV must be 16 bytes");
}

} // namespace

std::vector<std::uint8_t> aes256_encrypt(
    const std::vector<std::uint8_t>& plaintext,
    const std::vector<std::uint8_t>& key, const std::vector<std::uint8_t>& iv) {
    check_sizes(key, iv);
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr,
                                   key.data(), iv.data()) != 1)
        throw std::runtime_error("aes256: encrypt init failed");
    std::vector<std::uint8_t> out(plaintext.size() + 16);
    int len1 = 0, len2 = 0;
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len1, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1 ||
        EVP_EncryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1)
        throw std::runtime_error("aes256: encrypt failed");
    out.resize(static_cast<std::size_t>(len1 + len2));
    return out;
}

std::vector<std::uint8_t> aes256_decrypt(
    const std::vector<std::uint8_t>& ciphertext,
    const std::vector<std::uint8_t>& key, const std::vector<std::uint8_t>& iv) {
    check_sizes(key, iv);
    if (ciphertext.empty() || ciphertext.size() % 16 != 0)
        throw std::invalid_argument(
            "aes256: ciphertext must be a positive multiple of 16 bytes");
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr,
                                   key.data(), iv.data()) != 1)
        throw std::runtime_error("aes256: decrypt init failed");
    std::vector<std::uint8_t> out(ciphertext.size());
    int len1 = 0, len2 = 0;
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &len1, ciphertext.data(),
                          static_cast<int>(ciphertext.size())) != 1)
        throw IntegrityError("aes256: decrypt failed");
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1)
        throw IntegrityError("aes256: padding check failed");
    out.resize(static_cast<std::size_t>(len1 + len2));
    return out;
}

} // namespace qkdlink::crypto
