#include "qkdlink/kms/http_api.hpp"

#include <httplib.h>
#include <json.hpp>

#include "qkdlink/util/hex.hpp"

namespace qkdlink::kms {

using nlohmann::json;
using util::from_hex;
using util::to_hex;

namespace {

int status_code(KmsStatus s) {
    switch (s) {
        case KmsStatus::OK: return 200;
        case KmsStatus::MALFORMED: return 400;
        case KmsStatus::UNKNOWN_ID: return 404;
        case KmsStatus::ALREADY_CONSUMED: return 409;
        case KmsStatus::EXHAUSTED: return 503;
    }
    return 500;
}

void reply_error(httplib::Response& res, KmsStatus s) {
    res.status = status_code(s);
    res.set_content(json{{"error", status_name(s)}}.dump(), "application/json");
}

json key_json(const KeyId& id, const std::vector<std::uint8_t>& bytes) {
    return json{{"key_ID", key_id_to_string(id)}, {"key", to_hex(bytes)}};
}

} // namespace

struct KmsHttpServer::Impl {
    KmsServer& server;
    httplib::Server http;
    std::thread thread;

    explicit Impl(KmsServer& s) : server(s) { install_routes(); }

    void install_routes() {
        http.Post("/api/v1/keys/enc_keys", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.contains("size") ||
                !body["size"].is_number_integer())
                return reply_error(res, KmsStatus::MALFORMED);
            const auto size = body["size"].get<std::int64_t>();
            const auto number =
                body.value("number", static_cast<std::int64_t>(1));
            if (size <= 0 || number <= 0)
                return reply_error(res, KmsStatus::MALFORMED);
            json keys = json::array();
            for (std::int64_t i = 0; i < number; ++i) {
                ServedKey sk;
                const auto st = server.get_key(size, sk);
                if (st != KmsStatus::OK) return reply_error(res, st);
                keys.push_back(key_json(sk.key_id, sk.key_bytes));
            }
            res.set_content(json{{"keys", keys}}.dump(), "application/json");
        });

        http.Post("/api/v1/keys/dec_keys", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.contains("key_IDs") ||
                !body["key_IDs"].is_array())
                return reply_error(res, KmsStatus::MALFORMED);
            json keys = json::array();
            for (const auto& entry : body["key_IDs"]) {
                if (!entry.is_object() || !entry.contains("key_ID") ||
                    !entry["key_ID"].is_string())
                    return reply_error(res, KmsStatus::MALFORMED);
                const auto id =
                    key_id_from_string(entry["key_ID"].get<std::string>());
                if (!id) return reply_error(res, KmsStatus::MALFORMED);
                std::vector<std::uint8_t> bytes;
                const auto st = server.get_key_by_id(*id, bytes);
                if (st != KmsStatus::OK) return reply_error(res, st);
                keys.push_back(key_json(*id, bytes));
            }
            res.set_content(json{{"keys", keys}}.dump(), "application/json");
        });

        http.Get("/api/v1/status",
                 [this](const httplib::Request&, httplib::Response& res) {
                     res.set_content(
                         json{{"available_bits", server.available_bits()}}
                             .dump(),
                         "application/json");
                 });

        http.Post("/internal/serve", [this](const httplib::Request& req,
                                            httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded())
                return reply_error(res, KmsStatus::MALFORMED);
            const auto id =
                key_id_from_string(body.value("key_ID", std::string()));
            const auto bytes = from_hex(body.value("key", std::string()));
            if (!id || !bytes || !body.contains("bits"))
                return reply_error(res, KmsStatus::MALFORMED);
            KeyBlock block;
            block.id = *id;
            block.bytes = *bytes;
            block.size_bits = body["bits"].get<std::int64_t>();
            block.created_at_ns = body.value("created_at_ns",
                                             static_cast<std::int64_t>(0));
            if (!server.peer_serve(block))
                return reply_error(res, KmsStatus::EXHAUSTED);
            res.set_content("{}", "application/json");
        });

        http.Post("/internal/credit", [this](const httplib::Request& req,
                                             httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.contains("bits"))
                return reply_error(res, KmsStatus::MALFORMED);
            server.peer_credit(body["bits"].get<std::int64_t>());
            res.set_content("{}", "application/json");
        });

        http.Post("/internal/consumed", [this](const httplib::Request& req,
                                               httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded())
                return reply_error(res, KmsStatus::MALFORMED);
            const auto id =
                key_id_from_string(body.value("key_ID", std::string()));
            if (!id) return reply_error(res, KmsStatus::MALFORMED);
            if (!server.peer_consumed(*id))
                return reply_error(res, KmsStatus::UNKNOWN_ID);
            res.set_content("{}", "application/json");
        });

        http.Post("/internal/failure", [this](const httplib::Request& req,
                                              httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.contains("failed"))
                return reply_error(res, KmsStatus::MALFORMED);
            server.peer_failure(body["failed"].get<bool>());
            res.set_content("{}", "application/json");
        });
    }
};

KmsHttpServer::KmsHttpServer(KmsServer& server)
    : impl_(std::make_unique<Impl>(server)) {}

KmsHttpServer::~KmsHttpServer() { stop(); }

int KmsHttpServer::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->http.bind_to_any_port(host);
        if (bound < 0) return -1;
    } else if (!impl_->http.bind_to_port(host, port)) {
        return -1;
    }
    impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
    return bound;
}

void KmsHttpServer::stop() {
    if (impl_->thread.joinable()) {
        impl_->http.stop();
        impl_->thread.join();
    }
}

struct HttpPeerLink::Impl {
    httplib::Client client;
    Impl(const std::string& host, int port) : client(host, port) {
        client.set_connection_timeout(5);
    }
    bool post(const std::string& path, const json& body) {
        auto res = client.Post(path, body.dump(), "application/json");
        return res && res->status == 200;
    }
};

HttpPeerLink::HttpPeerLink(std::string host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}
HttpPeerLink::~HttpPeerLink() = default;

bool HttpPeerLink::sync_serve(const KeyBlock& block) {
    return impl_->post("/internal/serve",
                       json{{"key_ID", key_id_to_string(block.id)},
                            {"key", to_hex(block.bytes)},
                            {"bits", block.size_bits},
                            {"created_at_ns", block.created_at_ns}});
}

bool HttpPeerLink::sync_credit(std::int64_t bits) {
    return impl_->post("/internal/credit", json{{"bits", bits}});
}

bool HttpPeerLink::sync_consumed(const KeyId& id) {
    return impl_->post("/internal/consumed",
                       json{{"key_ID", key_id_to_string(id)}});
}

bool HttpPeerLink::sync_failure(bool failed) {
    return impl_->post("/internal/failure", json{{"failed", failed}});
}

struct HttpKeyService::Impl {
    httplib::Client client;
    Impl(const std::string& host, int port) : client(host, port) {
        client.set_connection_timeout(5);
    }
};

HttpKeyService::HttpKeyService(std::string host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}
HttpKeyService::~HttpKeyService() = default;

namespace {

KmsStatus status_from_code(int code) {
    switch (code) {
        case 200: return KmsStatus::OK;
        case 400: return KmsStatus::MALFORMED;
        case 404: return KmsStatus::UNKNOWN_ID;
        case 409: return KmsStatus::ALREADY_CONSUMED;
        case 503: return KmsStatus::EXHAUSTED;
        default: return KmsStatus::MALFORMED;
    }
}

} // namespace

KmsStatus HttpKeyService::get_key(std::int64_t size_bits, ServedKey& out) {
    auto res = impl_->client.Post("/api/v1/keys/enc_keys",
                                  json{{"size", size_bits}}.dump(),
                                  "application/json");
    if (!res) return KmsStatus::EXHAUSTED; // unreachable peer: no key served
    if (res->status != 200) return status_from_code(res->status);
    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || body["keys"].empty())
        return KmsStatus::MALFORMED;
    const auto id =
        key_id_from_string(body["keys"][0].value("key_ID", std::string()));
    const auto bytes = from_hex(body["keys"][0].value("key", std::string()));
    if (!id || !bytes) return KmsStatus::MALFORMED;
    out.key_id = *id;
    out.key_bytes = *bytes;
    return KmsStatus::OK;
}

KmsStatus HttpKeyService::get_key_by_id(const KeyId& id,
                                        std::vector<std::uint8_t>& out) {
    const json req{
        {"key_IDs", json::array({json{{"key_ID", key_id_to_string(id)}}})}};
    auto res = impl_->client.Post("/api/v1/keys/dec_keys", req.dump(),
                                  "application/json");
    if (!res) return KmsStatus::UNKNOWN_ID;
    if (res->status != 200) return status_from_code(res->status);
    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || body["keys"].empty())
        return KmsStatus::MALFORMED;
    const auto bytes = from_hex(body["keys"][0].value("key", std::string()));
    if (!bytes) return KmsStatus::MALFORMED;
    out = *bytes;
    return KmsStatus::OK;
}

} // namespace qkdlink::kms
