#include "qkdlink/kms/server.hpp"

#include <chrono>
#include <stdexcept>

namespace qkdlink::kms {

const char* status_name(KmsStatus s) {
    switch (s) {
        case KmsStatus::OK: return "OK";
        case KmsStatus::MALFORMED: return "MALFORMED";
        case KmsStatus::UNKNOWN_ID: return "UNKNOWN_ID";
        case KmsStatus::ALREADY_CONSUMED: return "ALREADY_CONSUMED";
        case KmsStatus::EXHAUSTED: return "EXHAUSTED";
    }
    return "?";
}

KmsServer::KmsServer(std::uint64_t seed, KeyStore store)
    : store_(std::move(store)), rng_(seed) {}

KmsStatus KmsServer::get_key(std::int64_t size_bits, ServedKey& out) {
    if (size_bits <= 0) return KmsStatus::MALFORMED;

    KeyBlock block;
    {
        std::lock_guard lock(mu_);
        block.id = random_key_id(rng_);
        block.size_bits = size_bits;
        block.created_at_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
        block.bytes.resize(static_cast<std::size_t>((size_bits + 7) / 8));
        for (auto& b : block.bytes)
            b = static_cast<std::uint8_t>(rng_.next_u64());
        if (!store_.serve_block(block)) return KmsStatus::EXHAUSTED;
    }

    // confirm to the client only once the peer holds the same material
    if (peer_ && !peer_->sync_serve(block)) {
        std::lock_guard lock(mu_);
        store_.release_block(block.id);
        return KmsStatus::EXHAUSTED;
    }

    out.key_id = block.id;
    out.key_bytes = std::move(block.bytes);
    return KmsStatus::OK;
}

KmsStatus KmsServer::get_key_by_id(const KeyId& id,
                                   std::vector<std::uint8_t>& out) {
    {
        std::lock_guard lock(mu_);
        switch (store_.fetch_for_b(id, out)) {
            case KeyStore::FetchStatus::UNKNOWN_ID:
                return KmsStatus::UNKNOWN_ID;
            case KeyStore::FetchStatus::ALREADY_CONSUMED:
                return KmsStatus::ALREADY_CONSUMED;
            case KeyStore::FetchStatus::OK:
                break;
        }
    }
    if (peer_) peer_->sync_consumed(id);
    return KmsStatus::OK;
}

void KmsServer::credit_pool(std::int64_t bits) {
    bool accepted;
    {
        std::lock_guard lock(mu_);
        accepted = !store_.failed();
        store_.credit(bits);
    }
    if (accepted && peer_) peer_->sync_credit(bits);
}

void KmsServer::inject_failure() {
    {
        std::lock_guard lock(mu_);
        store_.record_failure();
    }
    if (peer_) peer_->sync_failure(true);
}

void KmsServer::restore() {
    {
        std::lock_guard lock(mu_);
        store_.record_restore();
    }
    if (peer_) peer_->sync_failure(false);
}

std::int64_t KmsServer::available_bits() const {
    std::lock_guard lock(mu_);
    return store_.available_bits();
}

bool KmsServer::peer_serve(const KeyBlock& block) {
    std::lock_guard lock(mu_);
    return store_.serve_block(block);
}

bool KmsServer::peer_credit(std::int64_t bits) {
    std::lock_guard lock(mu_);
    store_.credit(bits);
    return true;
}

bool KmsServer::peer_consumed(const KeyId& id) {
    std::lock_guard lock(mu_);
    return store_.mark_consumed(id) == KeyStore::FetchStatus::OK;
}

bool KmsServer::peer_failure(bool failed) {
    std::lock_guard lock(mu_);
    if (failed)
        store_.record_failure();
    else
        store_.record_restore();
    return true;
}

KmsPair::KmsPair(std::uint64_t seed_a, std::uint64_t seed_b, KeyStore store_a,
                 KeyStore store_b)
    : a(seed_a, std::move(store_a)), b(seed_b, std::move(store_b)) {
    link_ab_ = std::make_unique<LocalPeerLink>(b);
    link_ba_ = std::make_unique<LocalPeerLink>(a);
    a.connect_peer(link_ab_.get());
    b.connect_peer(link_ba_.get());
}

} // namespace qkdlink::kms
