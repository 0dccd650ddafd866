#include "qkdlink/kms/key_store.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qkdlink/util/hex.hpp"

namespace qkdlink::kms {

using util::from_hex;
using util::to_hex;

namespace {

const char* kLedgerFile = "ledger.log";
const char* kSnapshotFile = "snapshot";
const char* kBytesFile = "keys.insecure";

} // namespace

KeyId random_key_id(util::Rng& rng) {
    KeyId id;
    for (std::size_t i = 0; i < 16; i += 8) {
        const std::uint64_t w = rng.next_u64();
        for (std::size_t j = 0; j < 8; ++j)
            id[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
    }
    id[6] = static_cast<std::uint8_t>((id[6] & 0x0f) | 0x40); // version 4
    id[8] = static_cast<std::uint8_t>((id[8] & 0x3f) | 0x80); // variant 1
    return id;
}

std::string key_id_to_string(const KeyId& id) {
    const std::string hex = to_hex(id.data(), id.size());
    return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) +
           "-" + hex.substr(16, 4) + "-" + hex.substr(20, 12);
}

std::optional<KeyId> key_id_from_string(const std::string& s) {
    std::string hex;
    hex.reserve(32);
    for (char c : s) {
        if (c == '-') continue;
        hex.push_back(c);
    }
    const auto bytes = from_hex(hex);
    if (!bytes || bytes->size() != 16) return std::nullopt;
    KeyId id;
    std::copy(bytes->begin(), bytes->end(), id.begin());
    return id;
}

KeyStore::KeyStore(std::filesystem::path dir, std::size_t snapshot_interval)
    : dir_(std::move(dir)), snapshot_interval_(snapshot_interval) {
    std::filesystem::create_directories(dir_);
    load_from_disk();
}

KeyStore::~KeyStore() = default;
KeyStore::KeyStore(KeyStore&&) noexcept = default;
KeyStore& KeyStore::operator=(KeyStore&&) noexcept = default;

std::int64_t KeyStore::now_ns() {
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::system_clock::now().time_since_epoch())
                        .count();
    last_ts_ns_ = std::max<std::int64_t>(ns, last_ts_ns_ + 1);
    return last_ts_ns_;
}

void KeyStore::apply(const LedgerRecord& rec) {
    if (rec.event == "CREDIT") {
        available_bits_ += rec.bits;
        credited_bits_ += rec.bits;
    } else if (rec.event == "SERVE_A") {
        available_bits_ -= rec.bits;
        debited_bits_ += rec.bits;
        auto it = blocks_.find(rec.key_id);
        if (it != blocks_.end()) {
            it->second.state = KeyState::SERVED_A;
            it->second.size_bits = rec.bits;
            it->second.created_at_ns = rec.timestamp_ns;
        }
    } else if (rec.event == "SERVE_B") {
        auto it = blocks_.find(rec.key_id);
        if (it != blocks_.end()) it->second.state = KeyState::SERVED_BOTH;
    } else if (rec.event == "RELEASE") {
        available_bits_ += rec.bits;
        debited_bits_ -= rec.bits;
        auto it = blocks_.find(rec.key_id);
        if (it != blocks_.end()) it->second.state = KeyState::RETIRED;
    } else if (rec.event == "FAIL") {
        failed_ = true;
    } else if (rec.event == "RESTORE") {
        failed_ = false;
    } else {
        throw std::runtime_error("key store: unknown ledger event " + rec.event);
    }
}

void KeyStore::append(const std::string& event, const KeyId& id,
                      std::int64_t bits) {
    LedgerRecord rec{now_ns(), event, id, bits};
    apply(rec);
    log_.push_back(rec);
    if (!dir_.empty() && !replaying_) {
        std::ofstream out(dir_ / kLedgerFile, std::ios::app);
        out << rec.timestamp_ns << '|' << rec.event << '|'
            << to_hex(rec.key_id.data(), rec.key_id.size()) << '|' << rec.bits
            << '\n';
        if (++records_since_snapshot_ >= snapshot_interval_) snapshot();
    }
}

void KeyStore::persist_bytes(const KeyBlock& block) {
    if (dir_.empty() || replaying_) return;
    const auto path = dir_ / kBytesFile;
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream out(path, std::ios::app);
    if (fresh)
        out << "# INSECURE: simulator key material at rest; never deploy\n";
    out << to_hex(block.id.data(), block.id.size()) << '|'
        << to_hex(block.bytes.data(), block.bytes.size()) << '\n';
}

void KeyStore::credit(std::int64_t bits) {
    if (bits < 0) throw std::invalid_argument("key store: negative credit");
    if (failed_ || bits == 0) return;
    append("CREDIT", KeyId{}, bits);
}

bool KeyStore::serve_block(const KeyBlock& block) {
    if (block.size_bits <= 0) return false;
    if (available_bits_ < block.size_bits) return false;
    if (blocks_.count(block.id)) return false;
    auto stored = block;
    stored.state = KeyState::AVAILABLE; // SERVE_A advances it
    blocks_.emplace(block.id, std::move(stored));
    persist_bytes(block);
    append("SERVE_A", block.id, block.size_bits);
    return true;
}

KeyStore::FetchStatus KeyStore::fetch_for_b(const KeyId& id,
                                            std::vector<std::uint8_t>& out) {
    auto it = blocks_.find(id);
    if (it == blocks_.end()) return FetchStatus::UNKNOWN_ID;
    if (it->second.state != KeyState::SERVED_A)
        return FetchStatus::ALREADY_CONSUMED;
    out = it->second.bytes;
    append("SERVE_B", id, it->second.size_bits);
    return FetchStatus::OK;
}

KeyStore::FetchStatus KeyStore::mark_consumed(const KeyId& id) {
    auto it = blocks_.find(id);
    if (it == blocks_.end()) return FetchStatus::UNKNOWN_ID;
    if (it->second.state != KeyState::SERVED_A)
        return FetchStatus::ALREADY_CONSUMED;
    append("SERVE_B", id, it->second.size_bits);
    return FetchStatus::OK;
}

void KeyStore::release_block(const KeyId& id) {
    auto it = blocks_.find(id);
    if (it == blocks_.end() || it->second.state != KeyState::SERVED_A)
        throw std::logic_error("key store: release of a non-served block");
    append("RELEASE", id, it->second.size_bits);
}

void KeyStore::record_failure() {
    if (!failed_) append("FAIL", KeyId{}, 0);
}

void KeyStore::record_restore() {
    if (failed_) append("RESTORE", KeyId{}, 0);
}

void KeyStore::snapshot() {
    if (dir_.empty()) return;
    std::ofstream out(dir_ / kSnapshotFile, std::ios::trunc);
    out << log_.size() << ' ' << available_bits_ << ' ' << credited_bits_ << ' '
        << debited_bits_ << ' ' << (failed_ ? 1 : 0) << ' ' << last_ts_ns_
        << '\n';
    for (const auto& [id, block] : blocks_)
        out << to_hex(id.data(), id.size()) << '|'
            << static_cast<int>(block.state) << '|' << block.size_bits << '|'
            << block.created_at_ns << '\n';
    snapshot_record_count_ = log_.size();
    records_since_snapshot_ = 0;
}

void KeyStore::load_from_disk() {
    replaying_ = true;
    // key bytes first, so replayed serves find their material
    std::map<KeyId, std::vector<std::uint8_t>> bytes_by_id;
    if (std::ifstream in(dir_ / kBytesFile); in) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto sep = line.find('|');
            if (sep == std::string::npos)
                throw std::runtime_error("key store: malformed bytes file");
            const auto id = key_id_from_string(line.substr(0, sep));
            const auto bytes = from_hex(line.substr(sep + 1));
            if (!id || !bytes)
                throw std::runtime_error("key store: malformed bytes file");
            bytes_by_id[*id] = *bytes;
        }
    }

    std::size_t skip = 0;
    if (std::ifstream in(dir_ / kSnapshotFile); in) {
        int failed_flag = 0;
        in >> skip >> available_bits_ >> credited_bits_ >> debited_bits_ >>
            failed_flag >> last_ts_ns_;
        if (!in) throw std::runtime_error("key store: malformed snapshot");
        failed_ = failed_flag != 0;
        std::string line;
        std::getline(in, line); // finish header line
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string f0, f1, f2, f3;
            if (!std::getline(ss, f0, '|') || !std::getline(ss, f1, '|') ||
                !std::getline(ss, f2, '|') || !std::getline(ss, f3))
                throw std::runtime_error("key store: malformed snapshot row");
            const auto id = key_id_from_string(f0);
            if (!id) throw std::runtime_error("key store: bad snapshot ID");
            KeyBlock block;
            block.id = *id;
            block.state = static_cast<KeyState>(std::stoi(f1));
            block.size_bits = std::stoll(f2);
            block.created_at_ns = std::stoll(f3);
            if (auto it = bytes_by_id.find(*id); it != bytes_by_id.end())
                block.bytes = it->second;
            blocks_.emplace(*id, std::move(block));
        }
        snapshot_record_count_ = skip;
    }

    if (std::ifstream in(dir_ / kLedgerFile); in) {
        std::string line;
        std::size_t row = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ++row;
            std::istringstream ss(line);
            std::string f0, f1, f2, f3;
            if (!std::getline(ss, f0, '|') || !std::getline(ss, f1, '|') ||
                !std::getline(ss, f2, '|') || !std::getline(ss, f3))
                throw std::runtime_error("key store: malformed ledger line");
            LedgerRecord rec;
            rec.timestamp_ns = std::stoll(f0);
            rec.event = f1;
            const auto id = key_id_from_string(f2);
            if (!id) throw std::runtime_error("key store: bad ledger ID");
            rec.key_id = *id;
            rec.bits = std::stoll(f3);
            log_.push_back(rec);
            if (row <= skip) continue; // covered by the snapshot
            if (rec.event == "SERVE_A" && !blocks_.count(rec.key_id)) {
                KeyBlock block;
                block.id = rec.key_id;
                if (auto it = bytes_by_id.find(rec.key_id);
                    it != bytes_by_id.end())
                    block.bytes = it->second;
                blocks_.emplace(rec.key_id, std::move(block));
            }
            apply(rec);
            last_ts_ns_ = std::max(last_ts_ns_, rec.timestamp_ns);
        }
    }
    replaying_ = false;
}

} // namespace qkdlink::kms
