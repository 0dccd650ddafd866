#include "qkdlink/harness/loop.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include <openssl/sha.h>

#include "qkdlink/crypto/envelope.hpp"
#include "qkdlink/crypto/signal_codec.hpp"
#include "qkdlink/harness/telemetry.hpp"

namespace qkdlink::harness {

double measure_stage(const std::function<void()>& thunk) {
    const auto t0 = std::chrono::steady_clock::now();
    thunk();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

namespace {

constexpr std::uint8_t kMsgEnvelope = 0x01;
constexpr std::uint8_t kMsgEnd = 0x00;
constexpr std::uint8_t kStatusOk = 0;
constexpr std::uint8_t kStatusKeyError = 1;
constexpr std::uint8_t kStatusIntegrity = 2;

std::array<std::uint8_t, 32> sha256(const std::vector<std::uint8_t>& data) {
    std::array<std::uint8_t, 32> digest;
    SHA256(data.data(), data.size(), digest.data());
    return digest;
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

double get_f64(const std::uint8_t* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits = (bits << 8) | p[i];
    return std::bit_cast<double>(bits);
}

struct Reply {
    std::uint8_t status = kStatusKeyError;
    double key_b_s = 0.0;
    double dec_b_s = 0.0;
    double action_b_s = 0.0;
    std::array<std::uint8_t, 32> hash{};
};

std::vector<std::uint8_t> encode_reply(const Reply& r) {
    std::vector<std::uint8_t> out;
    out.reserve(1 + 24 + 32);
    out.push_back(r.status);
    put_f64(out, r.key_b_s);
    put_f64(out, r.dec_b_s);
    put_f64(out, r.action_b_s);
    out.insert(out.end(), r.hash.begin(), r.hash.end());
    return out;
}

Reply decode_reply(const std::vector<std::uint8_t>& payload) {
    if (payload.size() != 1 + 24 + 32)
        throw std::runtime_error("loop: malformed reply frame");
    Reply r;
    r.status = payload[0];
    r.key_b_s = get_f64(payload.data() + 1);
    r.dec_b_s = get_f64(payload.data() + 9);
    r.action_b_s = get_f64(payload.data() + 17);
    std::copy(payload.begin() + 25, payload.end(), r.hash.begin());
    return r;
}

/// Terminal B: serve envelopes until the end marker arrives.
void run_terminal_b(FramedChannel& channel, kms::KeyServiceClient& keys) {
    while (true) {
        const auto msg = channel.recv();
        if (msg.empty() || msg[0] == kMsgEnd) break;
        Reply reply;
        std::vector<std::uint8_t> wire(msg.begin() + 1, msg.end());
        crypto::CipherEnvelope env;
        std::vector<std::uint8_t> key_material;
        bool have_key = false;
        reply.key_b_s = measure_stage([&] {
            env = crypto::parse_envelope(wire);
            have_key =
                keys.get_key_by_id(env.key_id, key_material) ==
                kms::KmsStatus::OK;
        });
        if (!have_key) {
            reply.status = kStatusKeyError;
            channel.send(encode_reply(reply));
            continue;
        }
        std::vector<std::uint8_t> plaintext;
        bool intact = true;
        reply.dec_b_s = measure_stage([&] {
            try {
                plaintext = crypto::open_envelope(env, key_material);
            } catch (const crypto::IntegrityError&) {
                intact = false;
            }
        });
        reply.action_b_s = measure_stage([] {}); // operator action stub
        if (!intact) {
            reply.status = kStatusIntegrity;
        } else {
            reply.status = kStatusOk;
            reply.hash = sha256(plaintext);
        }
        channel.send(encode_reply(reply));
    }
}

} // namespace

StageStats RunReport::stats(
    double (comm::LatencyRecord::*component)() const) const {
    StageStats s;
    std::int64_t n = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& rec : cycles) {
        if (!rec.ok) continue;
        const double ms = (rec.latency.*component)() * 1e3;
        sum += ms;
        sum_sq += ms * ms;
        ++n;
    }
    if (n == 0) return s;
    s.mean_ms = sum / static_cast<double>(n);
    const double var = sum_sq / static_cast<double>(n) - s.mean_ms * s.mean_ms;
    s.std_ms = std::sqrt(std::max(var, 0.0));
    return s;
}

void RunReport::write_csv(std::ostream& out) const {
    out << "cycle,fetch_ms,key_a_ms,enc_ms,tx_ms,key_b_ms,dec_ms,total_ms\n";
    char buf[256];
    for (const auto& rec : cycles) {
        const auto& l = rec.latency;
        std::snprintf(buf, sizeof buf,
                      "%lld,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                      static_cast<long long>(rec.cycle), l.fetch_a_s * 1e3,
                      l.key_a_s * 1e3, l.enc_a_s * 1e3, l.transmit_s * 1e3,
                      l.key_b_s * 1e3, l.dec_b_s * 1e3, l.total_s() * 1e3);
        out << buf;
    }
}

void RunReport::write_summary(std::ostream& out) const {
    const auto total = stats(&comm::LatencyRecord::total_s);
    const auto qkd = stats(&comm::LatencyRecord::qkd_s);
    const auto crypto = stats(&comm::LatencyRecord::crypto_s);
    char buf[128];
    out << "stage,mean_ms,std_ms\n";
    std::snprintf(buf, sizeof buf, "Total,%.4f,%.4f\n", total.mean_ms,
                  total.std_ms);
    out << buf;
    std::snprintf(buf, sizeof buf, "QKD,%.4f,%.4f\n", qkd.mean_ms, qkd.std_ms);
    out << buf;
    std::snprintf(buf, sizeof buf, "Crypto,%.4f,%.4f\n", crypto.mean_ms,
                  crypto.std_ms);
    out << buf;
}

RunReport run_loop(const comm::UseCaseConfig& cfg, std::int64_t cycles,
                   FramedChannel& channel_a, FramedChannel& channel_b,
                   kms::KeyServiceClient& keys_a, kms::KeyServiceClient& keys_b,
                   std::uint64_t seed, ExhaustedPolicy policy) {
    cfg.validate();
    const auto kappa = cfg.kappa();

    std::exception_ptr b_error;
    std::thread terminal_b([&] {
        try {
            run_terminal_b(channel_b, keys_b);
        } catch (...) {
            b_error = std::current_exception();
        }
    });

    RunReport report;
    TelemetrySource source(cfg.n_signals, cfg.sampling_rate_hz, seed);
    bool mismatch = false;

    for (std::int64_t cycle = 0; cycle < cycles; ++cycle) {
        CycleRecord rec;
        rec.cycle = cycle;

        std::vector<std::uint8_t> plaintext;
        rec.latency.fetch_a_s = measure_stage([&] {
            std::vector<double> batch;
            batch.reserve(static_cast<std::size_t>(kappa * cfg.n_signals));
            for (std::int64_t i = 0; i < kappa; ++i) {
                const auto frame = source.next();
                batch.insert(batch.end(), frame.values.begin(),
                             frame.values.end());
            }
            plaintext = crypto::encode_signals(batch, cfg.precision_bits);
        });

        kms::ServedKey key;
        auto key_status = kms::KmsStatus::OK;
        rec.latency.key_a_s = measure_stage([&] {
            key_status = keys_a.get_key(
                static_cast<std::int64_t>(
                    crypto::key_material_bits(cfg.algorithm, plaintext.size())),
                key);
        });
        if (key_status == kms::KmsStatus::EXHAUSTED) {
            rec.exhausted = true;
            report.cycles.push_back(rec);
            ++report.exhausted;
            if (policy == ExhaustedPolicy::HALT) {
                report.halted = true;
                break;
            }
            continue;
        }
        if (key_status != kms::KmsStatus::OK)
            throw std::runtime_error("loop: key delivery failed: " +
                                     std::string(kms::status_name(key_status)));

        std::vector<std::uint8_t> wire;
        rec.latency.enc_a_s = measure_stage([&] {
            const auto env = crypto::seal_envelope(cfg.algorithm, key.key_id,
                                                   plaintext, key.key_bytes);
            wire = crypto::serialize_envelope(env);
        });

        Reply reply;
        const double round_trip = measure_stage([&] {
            std::vector<std::uint8_t> msg;
            msg.reserve(wire.size() + 1);
            msg.push_back(kMsgEnvelope);
            msg.insert(msg.end(), wire.begin(), wire.end());
            channel_a.send(msg);
            reply = decode_reply(channel_a.recv());
        });
        rec.latency.key_b_s = reply.key_b_s;
        rec.latency.dec_b_s = reply.dec_b_s;
        rec.latency.action_b_s = reply.action_b_s;
        rec.latency.transmit_s = std::max(
            0.0, round_trip - reply.key_b_s - reply.dec_b_s - reply.action_b_s);

        rec.ok = reply.status == kStatusOk && reply.hash == sha256(plaintext);
        if (rec.ok) {
            ++report.completed;
        } else {
            ++report.integrity_failures;
            mismatch = true;
        }
        report.cycles.push_back(rec);
        if (mismatch) break; // fatal: never continue past a bad round trip
    }

    channel_a.send({kMsgEnd});
    terminal_b.join();
    if (b_error) std::rethrow_exception(b_error);
    if (mismatch)
        throw crypto::IntegrityError(
            "loop: decrypted frame does not match the source");
    return report;
}

} // namespace qkdlink::harness
