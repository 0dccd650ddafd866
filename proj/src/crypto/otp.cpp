#include "qkdlink/crypto/otp.hpp"

#include <stdexcept>

namespace qkdlink::crypto {

std::vector<std::uint8_t> otp_encrypt(const std::vector<std::uint8_t>& plaintext,
                                      const std::vector<std::uint8_t>& key) {
    if (key.size() != plaintext.size())
        throw std::invalid_argument("otp: key length must equal message length");
    std::vector<std::uint8_t> out(plaintext.size());
    for (std::size_t i = 0; i < plaintext.size(); ++i)
        out[i] = plaintext[i] ^ key[i];
    return out;
}

std::vector<std::uint8_t> otp_decrypt(const std::vector<std::uint8_t>& ciphertext,
                                      const std::vector<std::uint8_t>& key) {
    return otp_encrypt(ciphertext, key);
}

} // namespace qkdlink::crypto
