#include "qkdlink/harness/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

#include <openssl/hmac.h>

#include "qkdlink/crypto/cipher_spec.hpp"

namespace qkdlink::harness {

namespace {

constexpr std::size_t kMacBytes = 32;
constexpr std::size_t kMaxPayload = 1u << 28;

std::vector<std::uint8_t> hmac_sha256(const std::vector<std::uint8_t>& key,
                                      const std::uint8_t* data,
                                      std::size_t len) {
    std::vector<std::uint8_t> mac(kMacBytes);
    unsigned int out_len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data, len,
              mac.data(), &out_len) ||
        out_len != kMacBytes)
        throw std::runtime_error("transport: HMAC computation failed");
    return mac;
}

void write_all(int fd, const std::uint8_t* p, std::size_t n) {
    while (n > 0) {
        const ssize_t w = ::write(fd, p, n);
        if (w <= 0) throw std::runtime_error("transport: connection closed");
        p += w;
        n -= static_cast<std::size_t>(w);
    }
}

void read_all(int fd, std::uint8_t* p, std::size_t n) {
    while (n > 0) {
        const ssize_t r = ::read(fd, p, n);
        if (r <= 0) throw std::runtime_error("transport: connection closed");
        p += r;
        n -= static_cast<std::size_t>(r);
    }
}

sockaddr_in make_addr(const std::string& host, int port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw std::invalid_argument("transport: bad IPv4 address " + host);
    return addr;
}

} // namespace

TcpChannel::TcpChannel(int fd, std::vector<std::uint8_t> auth_key)
    : fd_(fd), auth_key_(std::move(auth_key)) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpChannel::~TcpChannel() {
    if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpChannel> TcpChannel::connect(
    const std::string& host, int port,
    const std::vector<std::uint8_t>& auth_key) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw std::runtime_error("transport: socket() failed");
    const auto addr = make_addr(host, port);
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) !=
        0) {
        ::close(fd);
        throw std::runtime_error("transport: connect() failed");
    }
    return std::unique_ptr<TcpChannel>(new TcpChannel(fd, auth_key));
}

void TcpChannel::send(const std::vector<std::uint8_t>& payload) {
    if (payload.size() > kMaxPayload)
        throw std::invalid_argument("transport: payload too large");
    std::uint8_t header[4];
    const auto n = static_cast<std::uint32_t>(payload.size());
    for (int i = 0; i < 4; ++i)
        header[i] = static_cast<std::uint8_t>(n >> (8 * (3 - i)));
    const auto mac = hmac_sha256(auth_key_, payload.data(), payload.size());
    write_all(fd_, header, 4);
    write_all(fd_, payload.data(), payload.size());
    write_all(fd_, mac.data(), mac.size());
}

std::vector<std::uint8_t> TcpChannel::recv() {
    std::uint8_t header[4];
    read_all(fd_, header, 4);
    std::uint32_t n = 0;
    for (int i = 0; i < 4; ++i) n = (n << 8) | header[i];
    if (n > kMaxPayload)
        throw std::runtime_error("transport: oversized frame");
    std::vector<std::uint8_t> payload(n);
    read_all(fd_, payload.data(), n);
    std::vector<std::uint8_t> mac(kMacBytes);
    read_all(fd_, mac.data(), kMacBytes);
    const auto expected = hmac_sha256(auth_key_, payload.data(), payload.size());
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < kMacBytes; ++i) diff |= mac[i] ^ expected[i];
    if (diff != 0)
        throw crypto::IntegrityError("transport: frame authentication failed");
    return payload;
}

TcpListener::TcpListener(const std::string& host, int port) : fd_(-1) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::runtime_error("transport: socket() failed");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    auto addr = make_addr(host, port);
    if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) !=
            0 ||
        ::listen(fd_, 4) != 0) {
        ::close(fd_);
        throw std::runtime_error("transport: bind/listen failed");
    }
    socklen_t len = sizeof addr;
    if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
        ::close(fd_);
        throw std::runtime_error("transport: getsockname failed");
    }
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpChannel> TcpListener::accept(
    const std::vector<std::uint8_t>& auth_key) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) throw std::runtime_error("transport: accept() failed");
    return std::unique_ptr<TcpChannel>(new TcpChannel(fd, auth_key));
}

} // namespace qkdlink::harness
