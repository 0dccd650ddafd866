#pragma once

#include <cstdint>

#include "qkdlink/crypto/cipher_spec.hpp"

namespace qkdlink::comm {

using crypto::Algorithm;

/// The eight communication parameters of a secure use case.
struct UseCaseConfig {
    std::int64_t n_signals = 68;
    double sampling_rate_hz = 1.0;
    double reporting_rate_hz = 1.0;
    int precision_bits = 32;
    double key_reuse_factor = 1.0; ///< f_enc; must be 1 for OTP
    double autonomy_target_s = 0.0;
    Algorithm algorithm = Algorithm::OTP;

    /// kappa = f_s / f_rep; must be a positive integer.
    std::int64_t kappa() const;

    void validate() const;
};

/// Per-stage wall-clock record for one communication cycle. All fields in
/// seconds; aggregates are derived, never stored, so the summation identity
/// holds by construction.
struct LatencyRecord {
    double fetch_a_s = 0.0;
    double key_a_s = 0.0;
    double enc_a_s = 0.0;
    double transmit_s = 0.0;
    double key_b_s = 0.0;
    double dec_b_s = 0.0;
    double action_b_s = 0.0;

    double qkd_s() const { return key_a_s + key_b_s; }
    double crypto_s() const { return enc_a_s + dec_b_s; }
    double com_s() const { return fetch_a_s + transmit_s; }
    double total_s() const {
        return fetch_a_s + key_a_s + enc_a_s + transmit_s + key_b_s + dec_b_s +
               action_b_s;
    }
};

/// Effective period: max(1/f_s, 1/f_rep).
double effective_period(const UseCaseConfig& cfg);

/// Disposable key bits consumed per reporting period. OTP charges
/// N*p*kappa*f_enc; fixed-key ciphers charge one key+IV/nonce refresh per
/// reporting period regardless of N.
double key_demand_per_period(const UseCaseConfig& cfg);

/// Key bits consumed per encrypted data bit (Table-1 f_enc, computed from
/// first principles).
double reusability_factor(const UseCaseConfig& cfg);

/// Tight key-availability bound: demand per period <= avg_skr * period
/// (boundary inclusive).
bool tight_availability(const UseCaseConfig& cfg, double avg_skr_bps);

/// Latency condition: the full stage sum must fit in the effective period.
/// The action term is carried in the record but excluded from the
/// comparison, matching the model's "neglecting analysis time" convention.
bool latency_ok(const LatencyRecord& rec, const UseCaseConfig& cfg);

} // namespace qkdlink::comm
