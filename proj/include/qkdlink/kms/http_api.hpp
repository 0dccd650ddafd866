#pragma once

#include <memory>
#include <string>
#include <thread>

#include "qkdlink/kms/server.hpp"

namespace qkdlink::kms {

/// Key-delivery client surface shared by in-process and networked callers,
/// so the harness runs unchanged against either deployment.
class KeyServiceClient {
public:
    virtual ~KeyServiceClient() = default;
    virtual KmsStatus get_key(std::int64_t size_bits, ServedKey& out) = 0;
    virtual KmsStatus get_key_by_id(const KeyId& id,
                                    std::vector<std::uint8_t>& out) = 0;
};

class LocalKeyService : public KeyServiceClient {
public:
    explicit LocalKeyService(KmsServer& server) : server_(server) {}
    KmsStatus get_key(std::int64_t size_bits, ServedKey& out) override {
        return server_.get_key(size_bits, out);
    }
    KmsStatus get_key_by_id(const KeyId& id,
                            std::vector<std::uint8_t>& out) override {
        return server_.get_key_by_id(id, out);
    }

private:
    KmsServer& server_;
};

/// JSON-over-HTTP key delivery:
///   POST /api/v1/keys/enc_keys   {"size": bits}            role A
///   POST /api/v1/keys/dec_keys   {"key_IDs":[{"key_ID":s}]} role B
///   GET  /api/v1/status
/// plus /internal/* peer-synchronization endpoints. Status codes:
/// 200 success, 400 malformed, 404 unknown ID, 409 already consumed,
/// 503 exhausted.
class KmsHttpServer {
public:
    explicit KmsHttpServer(KmsServer& server);
    ~KmsHttpServer();

    /// Bind and serve on a background thread; returns the bound port
    /// (pass port 0 to pick a free one).
    int start(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// PeerLink that forwards over HTTP to the peer's /internal endpoints.
class HttpPeerLink : public PeerLink {
public:
    HttpPeerLink(std::string host, int port);
    ~HttpPeerLink() override;
    bool sync_serve(const KeyBlock& block) override;
    bool sync_credit(std::int64_t bits) override;
    bool sync_consumed(const KeyId& id) override;
    bool sync_failure(bool failed) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// KeyServiceClient over HTTP.
class HttpKeyService : public KeyServiceClient {
public:
    HttpKeyService(std::string host, int port);
    ~HttpKeyService() override;
    KmsStatus get_key(std::int64_t size_bits, ServedKey& out) override;
    KmsStatus get_key_by_id(const KeyId& id,
                            std::vector<std::uint8_t>& out) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace qkdlink::kms
