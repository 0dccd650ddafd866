#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkdlink/crypto/envelope.hpp" // KeyId
#include "qkdlink/util/rng.hpp"

namespace qkdlink::kms {

using crypto::KeyId;

enum class KeyState : int {
    AVAILABLE = 0,
    SERVED_A = 1,
    SERVED_B = 2,
    SERVED_BOTH = 3,
    RETIRED = 4,
};

struct KeyBlock {
    KeyId id{};
    std::vector<std::uint8_t> bytes;
    std::int64_t size_bits = 0;
    std::int64_t created_at_ns = 0;
    KeyState state = KeyState::AVAILABLE;
};

struct LedgerRecord {
    std::int64_t timestamp_ns;
    std::string event; ///< CREDIT | SERVE_A | SERVE_B | RELEASE | FAIL | RESTORE
    KeyId key_id;      ///< all-zero for pool-level events
    std::int64_t bits;
};

KeyId random_key_id(util::Rng& rng); ///< random 128-bit ID, version-4 layout
std::string key_id_to_string(const KeyId& id);
std::optional<KeyId> key_id_from_string(const std::string& s);

/// Single-server key ledger: available-bit accounting, per-key state machine,
/// and append-only persistence (event log + periodic snapshot + a clearly
/// marked plaintext key-bytes file — simulator convenience, not production
/// security). Not thread-safe; the owning server serializes access.
class KeyStore {
public:
    KeyStore() = default; ///< in-memory only

    /// Persistent store rooted at dir; replays any existing snapshot + log.
    explicit KeyStore(std::filesystem::path dir,
                      std::size_t snapshot_interval = 1024);
    ~KeyStore();

    KeyStore(KeyStore&&) noexcept;
    KeyStore& operator=(KeyStore&&) noexcept;

    void credit(std::int64_t bits); ///< no-op while failed (credits ceased)

    /// Debit the pool and record the block as served to role A.
    /// Returns false (changing nothing) when available bits are insufficient
    /// or the ID already exists.
    bool serve_block(const KeyBlock& block);

    enum class FetchStatus { OK, UNKNOWN_ID, ALREADY_CONSUMED };

    /// Role-B fetch: returns the bytes and advances the state to SERVED_BOTH.
    FetchStatus fetch_for_b(const KeyId& id, std::vector<std::uint8_t>& out);

    /// Mirror of a role-B fetch that happened on the peer.
    FetchStatus mark_consumed(const KeyId& id);

    /// Undo a serve whose peer acknowledgment failed: credits the bits back
    /// and retires the block.
    void release_block(const KeyId& id);

    void record_failure(); ///< credits cease
    void record_restore();

    std::int64_t available_bits() const { return available_bits_; }
    std::int64_t credited_bits() const { return credited_bits_; }
    std::int64_t debited_bits() const { return debited_bits_; }
    bool failed() const { return failed_; }
    const std::map<KeyId, KeyBlock>& blocks() const { return blocks_; }
    const std::vector<LedgerRecord>& log() const { return log_; }

    /// Write a snapshot now (also happens automatically every
    /// snapshot_interval records).
    void snapshot();

private:
    void append(const std::string& event, const KeyId& id, std::int64_t bits);
    void apply(const LedgerRecord& rec);
    void persist_bytes(const KeyBlock& block);
    void load_from_disk();
    std::int64_t now_ns();

    std::filesystem::path dir_; ///< empty for in-memory stores
    std::size_t snapshot_interval_ = 0;
    std::size_t records_since_snapshot_ = 0;
    std::size_t snapshot_record_count_ = 0;

    std::int64_t available_bits_ = 0;
    std::int64_t credited_bits_ = 0;
    std::int64_t debited_bits_ = 0;
    bool failed_ = false;
    std::int64_t last_ts_ns_ = 0;
    bool replaying_ = false;

    std::map<KeyId, KeyBlock> blocks_;
    std::vector<LedgerRecord> log_;
};

} // namespace qkdlink::kms
