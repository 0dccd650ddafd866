#pragma once

#include <memory>
#include <mutex>

#include "qkdlink/kms/key_store.hpp"

namespace qkdlink::kms {

enum class KmsStatus {
    OK,
    MALFORMED,
    UNKNOWN_ID,
    ALREADY_CONSUMED,
    EXHAUSTED,
};

const char* status_name(KmsStatus s);

struct ServedKey {
    KeyId key_id{};
    std::vector<std::uint8_t> key_bytes;
};

/// Channel to the paired server. A serve is confirmed to the client only
/// after the peer acknowledges it (synchronous forward-on-serve).
class PeerLink {
public:
    virtual ~PeerLink() = default;
    virtual bool sync_serve(const KeyBlock& block) = 0;
    virtual bool sync_credit(std::int64_t bits) = 0;
    virtual bool sync_consumed(const KeyId& id) = 0;
    virtual bool sync_failure(bool failed) = 0;
};

/// One side of the key-delivery pair. All ledger mutations are serialized
/// behind a single mutex; peer forwarding happens outside the lock, so the
/// two servers never hold each other's locks.
class KmsServer {
public:
    explicit KmsServer(std::uint64_t seed, KeyStore store = KeyStore());

    void connect_peer(PeerLink* peer) { peer_ = peer; }

    /// Role-A key delivery: carve size_bits from the pool, mint an ID, and
    /// propagate the material to the peer. EXHAUSTED leaves the pool
    /// unchanged; a peer nack rolls the serve back.
    KmsStatus get_key(std::int64_t size_bits, ServedKey& out);

    /// Role-B fetch by ID; returns the bytes served to A.
    KmsStatus get_key_by_id(const KeyId& id, std::vector<std::uint8_t>& out);

    /// Credit freshly generated key bits to both pools.
    void credit_pool(std::int64_t bits);

    void inject_failure();
    void restore();

    std::int64_t available_bits() const;
    const KeyStore& store() const { return store_; }
    KeyStore& store() { return store_; }

    // peer-called entry points (remote side of PeerLink)
    bool peer_serve(const KeyBlock& block);
    bool peer_credit(std::int64_t bits);
    bool peer_consumed(const KeyId& id);
    bool peer_failure(bool failed);

private:
    mutable std::mutex mu_;
    KeyStore store_;
    util::Rng rng_;
    PeerLink* peer_ = nullptr;
};

/// In-process PeerLink calling the other server directly.
class LocalPeerLink : public PeerLink {
public:
    explicit LocalPeerLink(KmsServer& peer) : peer_(peer) {}
    bool sync_serve(const KeyBlock& block) override {
        return peer_.peer_serve(block);
    }
    bool sync_credit(std::int64_t bits) override {
        return peer_.peer_credit(bits);
    }
    bool sync_consumed(const KeyId& id) override {
        return peer_.peer_consumed(id);
    }
    bool sync_failure(bool failed) override {
        return peer_.peer_failure(failed);
    }

private:
    KmsServer& peer_;
};

/// Two servers joined by local links; the canonical loopback deployment.
struct KmsPair {
    KmsPair(std::uint64_t seed_a, std::uint64_t seed_b,
            KeyStore store_a = KeyStore(), KeyStore store_b = KeyStore());
    KmsServer a;
    KmsServer b;

private:
    std::unique_ptr<LocalPeerLink> link_ab_;
    std::unique_ptr<LocalPeerLink> link_ba_;
};

} // namespace qkdlink::kms
