#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qkdlink::harness {

/// Reliable message channel between the two terminals. Implementations
/// frame each message and authenticate it with HMAC-SHA256 under a
/// pre-shared key provisioned outside the QKD pool.
class FramedChannel {
public:
    virtual ~FramedChannel() = default;
    virtual void send(const std::vector<std::uint8_t>& payload) = 0;
    /// Blocks for the next message. Throws IntegrityError on a bad
    /// authentication tag, std::runtime_error on a closed connection.
    virtual std::vector<std::uint8_t> recv() = 0;
};

/// TCP stream carrying frames of
/// `4-byte big-endian payload length | payload | 32-byte HMAC-SHA256(payload)`.
class TcpChannel : public FramedChannel {
public:
    static std::unique_ptr<TcpChannel> connect(
        const std::string& host, int port,
        const std::vector<std::uint8_t>& auth_key);
    ~TcpChannel() override;

    void send(const std::vector<std::uint8_t>& payload) override;
    std::vector<std::uint8_t> recv() override;

private:
    friend class TcpListener;
    TcpChannel(int fd, std::vector<std::uint8_t> auth_key);
    int fd_;
    std::vector<std::uint8_t> auth_key_;
};

class TcpListener {
public:
    /// Binds and listens; pass port 0 for an ephemeral port.
    TcpListener(const std::string& host, int port);
    ~TcpListener();

    int port() const { return port_; }
    std::unique_ptr<TcpChannel> accept(
        const std::vector<std::uint8_t>& auth_key);

private:
    int fd_;
    int port_;
};

} // namespace qkdlink::harness
