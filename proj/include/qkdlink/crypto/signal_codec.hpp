#pragma once

#include <cstdint>
#include <vector>

namespace qkdlink::crypto {

/// Pack real-valued signals as big-endian IEEE-754 words (p = 32 or 64 bits
/// per value). Non-finite values are rejected unless permit_non_finite.
std::vector<std::uint8_t> encode_signals(const std::vector<double>& values,
                                         int precision_bits,
                                         bool permit_non_finite = false);

/// Inverse of encode_signals. Throws if the byte count is not a multiple of
/// the word size.
std::vector<double> decode_signals(const std::vector<std::uint8_t>& bytes,
                                   int precision_bits);

} // namespace qkdlink::crypto
