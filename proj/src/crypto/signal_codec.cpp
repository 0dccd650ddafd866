#include "qkdlink/crypto/signal_codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace qkdlink::crypto {

namespace {

void check_precision(int precision_bits) {
    if (precision_bits != 32 && precision_bits != 64)
        throw std::invalid_argument("signal codec: precision must be 32 or 64");
}

} // namespace

std::vector<std::uint8_t> encode_signals(const std::vector<double>& values,
                                         int precision_bits,
                                         bool permit_non_finite) {
    check_precision(precision_bits);
    const std::size_t word = static_cast<std::size_t>(precision_bits) / 8;
    std::vector<std::uint8_t> out;
    out.reserve(values.size() * word);
    for (double v : values) {
        if (!permit_non_finite && !std::isfinite(v))
            throw std::invalid_argument("signal codec: non-finite value");
        if (precision_bits == 32) {
            const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
            for (int i = 3; i >= 0; --i)
                out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
        } else {
            const auto bits = std::bit_cast<std::uint64_t>(v);
            for (int i = 7; i >= 0; --i)
                out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
        }
    }
    return out;
}

std::vector<double> decode_signals(const std::vector<std::uint8_t>& bytes,
                                   int precision_bits) {
    check_precision(precision_bits);
    const std::size_t word = static_cast<std::size_t>(precision_bits) / 8;
    if (bytes.size() % word != 0)
        throw std::invalid_argument(
            "signal codec: byte count not a multiple of the word size");
    std::vector<double> out;
    out.reserve(bytes.size() / word);
    for (std::size_t off = 0; off < bytes.size(); off += word) {
        if (precision_bits == 32) {
            std::uint32_t bits = 0;
            for (std::size_t i = 0; i < 4; ++i)
                bits = (bits << 8) | bytes[off + i];
            out.push_back(static_cast<double>(std::bit_cast<float>(bits)));
        } else {
            std::uint64_t bits = 0;
            for (std::size_t i = 0; i < 8; ++i)
                bits = (bits << 8) | bytes[off + i];
            out.push_back(std::bit_cast<double>(bits));
        }
    }
    return out;
}

} // namespace qkdlink::crypto
