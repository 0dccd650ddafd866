#include "qkdlink/crypto/ascon.hpp"

#include <bit>
#include <stdexcept>

namespace qkdlink::crypto {

namespace {

struct Params {
    std::size_t key_bytes;
    std::size_t rate; ///< bytes absorbed per permutation call
    int rounds_b;
};

Params params_for(Algorithm variant) {
    switch (variant) {
        case Algorithm::ASCON128:  return {16, 8, 6};
        case Algorithm::ASCON128A: return {16, 16, 8};
        case Algorithm::ASCON80PQ: return {20, 8, 6};
        default:
            throw std::invalid_argument("ascon: not an ASCON variant");
    }
}

constexpr int kRoundsA = 12;

inline std::uint64_t ror(std::uint64_t x, int n) { return std::rotr(x, n); }

struct State {
    std::uint64_t x[5];

    void permute(int rounds) {
        for (int r = kRoundsA - rounds; r < kRoundsA; ++r) {
            x[2] ^= static_cast<std::uint64_t>(0xf0 - r * 0x10 + r * 0x1);
            // substitution layer
            x[0] ^= x[4];
            x[4] ^= x[3];
            x[2] ^= x[1];
            std::uint64_t t[5];
            for (int i = 0; i < 5; ++i) t[i] = (~x[i]) & x[(i + 1) % 5];
            for (int i = 0; i < 5; ++i) x[i] ^= t[(i + 1) % 5];
            x[1] ^= x[0];
            x[0] ^= x[4];
            x[3] ^= x[2];
            x[2] = ~x[2];
            // linear diffusion layer
            x[0] ^= ror(x[0], 19) ^ ror(x[0], 28);
            x[1] ^= ror(x[1], 61) ^ ror(x[1], 39);
            x[2] ^= ror(x[2], 1) ^ ror(x[2], 6);
            x[3] ^= ror(x[3], 10) ^ ror(x[3], 17);
            x[4] ^= ror(x[4], 7) ^ ror(x[4], 41);
        }
    }
};

/// Big-endian load of up to 8 bytes, left-aligned in the word.
std::uint64_t load_be(const std::uint8_t* p, std::size_t n) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < n; ++i)
        w |= static_cast<std::uint64_t>(p[i]) << (56 - 8 * i);
    return w;
}

void store_be(std::uint8_t* p, std::uint64_t w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        p[i] = static_cast<std::uint8_t>(w >> (56 - 8 * i));
}

State initialize(const Params& prm, const std::vector<std::uint8_t>& key,
                 const std::vector<std::uint8_t>& nonce) {
    // IV word: key bits, rate bits, a, b; 80pq folds the first 4 key bytes
    // into the low half of the first word.
    std::uint8_t block[40] = {};
    block[0] = static_cast<std::uint8_t>(prm.key_bytes * 8);
    block[1] = static_cast<std::uint8_t>(prm.rate * 8);
    block[2] = kRoundsA;
    block[3] = static_cast<std::uint8_t>(prm.rounds_b);
    std::size_t off = 4 + (20 - prm.key_bytes);
    for (std::size_t i = 0; i < prm.key_bytes; ++i) block[off + i] = key[i];
    for (std::size_t i = 0; i < 16; ++i) block[24 + i] = nonce[i];

    State s;
    for (int i = 0; i < 5; ++i) s.x[i] = load_be(block + 8 * i, 8);
    s.permute(kRoundsA);

    // XOR the zero-padded key into the capacity
    std::uint8_t kb[40] = {};
    for (std::size_t i = 0; i < prm.key_bytes; ++i)
        kb[40 - prm.key_bytes + i] = key[i];
    for (int i = 0; i < 5; ++i) s.x[i] ^= load_be(kb + 8 * i, 8);
    return s;
}

void absorb_associated(State& s, const Params& prm,
                       const std::vector<std::uint8_t>& ad) {
    if (!ad.empty()) {
        std::vector<std::uint8_t> padded = ad;
        padded.push_back(0x80);
        while (padded.size() % prm.rate != 0) padded.push_back(0x00);
        for (std::size_t off = 0; off < padded.size(); off += prm.rate) {
            s.x[0] ^= load_be(padded.data() + off, 8);
            if (prm.rate == 16) s.x[1] ^= load_be(padded.data() + off + 8, 8);
            s.permute(prm.rounds_b);
        }
    }
    s.x[4] ^= 1; // domain separation
}

void finalize_key(State& s, const Params& prm,
                  const std::vector<std::uint8_t>& key) {
    // key XORed immediately after the rate portion
    std::uint8_t kb[40] = {};
    for (std::size_t i = 0; i < prm.key_bytes; ++i)
        kb[prm.rate + i] = key[i];
    for (int i = 0; i < 5; ++i) s.x[i] ^= load_be(kb + 8 * i, 8);
    s.permute(kRoundsA);
    s.x[3] ^= load_be(key.data() + key.size() - 16, 8);
    s.x[4] ^= load_be(key.data() + key.size() - 8, 8);
}

void check_inputs(const Params& prm, const std::vector<std::uint8_t>& key,
                  const std::vector<std::uint8_t>& nonce) {
    if (key.size() != prm.key_bytes)
        throw std::invalid_argument("ascon: wrong key size for variant");
    if (nonce.size() != 16)
        throw std::invalid_argument("ascon: nonce must be 16 bytes");
}

} // namespace

AsconSealed ascon_encrypt(Algorithm variant,
                          const std::vector<std::uint8_t>& plaintext,
                          const std::vector<std::uint8_t>& key,
                          const std::vector<std::uint8_t>& nonce,
                          const std::vector<std::uint8_t>& associated_data) {
    const Params prm = params_for(variant);
    check_inputs(prm, key, nonce);

    State s = initialize(prm, key, nonce);
    absorb_associated(s, prm, associated_data);

    AsconSealed out;
    out.ciphertext.resize(plaintext.size());
    const std::size_t last = plaintext.size() % prm.rate;
    const std::size_t full_end = plaintext.size() - last;
    for (std::size_t off = 0; off < full_end; off += prm.rate) {
        s.x[0] ^= load_be(plaintext.data() + off, 8);
        store_be(out.ciphertext.data() + off, s.x[0], 8);
        if (prm.rate == 16) {
            s.x[1] ^= load_be(plaintext.data() + off + 8, 8);
            store_be(out.ciphertext.data() + off + 8, s.x[1], 8);
        }
        s.permute(prm.rounds_b);
    }
    std::uint8_t block[16] = {};
    for (std::size_t i = 0; i < last; ++i) block[i] = plaintext[full_end + i];
    block[last] = 0x80;
    s.x[0] ^= load_be(block, 8);
    if (prm.rate == 16) s.x[1] ^= load_be(block + 8, 8);
    std::uint8_t rate_bytes[16];
    store_be(rate_bytes, s.x[0], 8);
    if (prm.rate == 16) store_be(rate_bytes + 8, s.x[1], 8);
    for (std::size_t i = 0; i < last; ++i)
        out.ciphertext[full_end + i] = rate_bytes[i];

    finalize_key(s, prm, key);
    store_be(out.tag.data(), s.x[3], 8);
    store_be(out.tag.data() + 8, s.x[4], 8);
    return out;
}

std::vector<std::uint8_t> ascon_decrypt(
    Algorithm variant, const std::vector<std::uint8_t>& ciphertext,
    const std::array<std::uint8_t, 16>& tag,
    const std::vector<std::uint8_t>& key,
    const std::vector<std::uint8_t>& nonce,
    const std::vector<std::uint8_t>& associated_data) {
    const Params prm = params_for(variant);
    check_inputs(prm, key, nonce);

    State s = initialize(prm, key, nonce);
    absorb_associated(s, prm, associated_data);

    std::vector<std::uint8_t> plaintext(ciphertext.size());
    const std::size_t last = ciphertext.size() % prm.rate;
    const std::size_t full_end = ciphertext.size() - last;
    for (std::size_t off = 0; off < full_end; off += prm.rate) {
        const std::uint64_t c0 = load_be(ciphertext.data() + off, 8);
        store_be(plaintext.data() + off, s.x[0] ^ c0, 8);
        s.x[0] = c0;
        if (prm.rate == 16) {
            const std::uint64_t c1 = load_be(ciphertext.data() + off + 8, 8);
            store_be(plaintext.data() + off + 8, s.x[1] ^ c1, 8);
            s.x[1] = c1;
        }
        s.permute(prm.rounds_b);
    }
    // last (possibly empty) block: recover the partial plaintext, then fold
    // it back with the 0x80 padding marker
    std::uint8_t rate_bytes[16];
    store_be(rate_bytes, s.x[0], 8);
    if (prm.rate == 16) store_be(rate_bytes + 8, s.x[1], 8);
    std::uint8_t pad[16] = {};
    for (std::size_t i = 0; i < last; ++i) {
        plaintext[full_end + i] = rate_bytes[i] ^ ciphertext[full_end + i];
        pad[i] = plaintext[full_end + i];
    }
    pad[last] = 0x80;
    s.x[0] ^= load_be(pad, 8);
    if (prm.rate == 16) s.x[1] ^= load_be(pad + 8, 8);

    finalize_key(s, prm, key);
    std::uint8_t computed[16];
    store_be(computed, s.x[3], 8);
    store_be(computed + 8, s.x[4], 8);
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < 16; ++i) diff |= computed[i] ^ tag[i];
    if (diff != 0) throw IntegrityError("ascon: authentication failed");
    return plaintext;
}

} // namespace qkdlink::crypto
