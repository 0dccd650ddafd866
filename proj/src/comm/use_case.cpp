#include "qkdlink/comm/use_case.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlink::comm {

std::int64_t UseCaseConfig::kappa() const {
    const double k = sampling_rate_hz / reporting_rate_hz;
    const auto ki = static_cast<std::int64_t>(std::llround(k));
    if (ki < 1 || std::abs(k - static_cast<double>(ki)) > 1e-9)
        throw std::invalid_argument(
            "UseCaseConfig: f_s/f_rep must be a positive integer");
    return ki;
}

void UseCaseConfig::validate() const {
    if (n_signals < 0)
        throw std::invalid_argument("UseCaseConfig: negative signal count");
    if (sampling_rate_hz <= 0.0 || reporting_rate_hz <= 0.0)
        throw std::invalid_argument("UseCaseConfig: rates must be > 0");
    if (precision_bits != 32 && precision_bits != 64)
        throw std::invalid_argument("UseCaseConfig: precision must be 32 or 64");
    if (key_reuse_factor <= 0.0 || key_reuse_factor > 1.0)
        throw std::invalid_argument("UseCaseConfig: f_enc outside (0,1]");
    if (algorithm == Algorithm::OTP && key_reuse_factor != 1.0)
        throw std::invalid_argument("UseCaseConfig: OTP requires f_enc = 1");
    if (autonomy_target_s < 0.0)
        throw std::invalid_argument("UseCaseConfig: negative autonomy target");
    (void)kappa();
}

double effective_period(const UseCaseConfig& cfg) {
    return std::max(1.0 / cfg.sampling_rate_hz, 1.0 / cfg.reporting_rate_hz);
}

double key_demand_per_period(const UseCaseConfig& cfg) {
    if (cfg.algorithm == Algorithm::OTP) {
        return static_cast<double>(cfg.n_signals) * cfg.precision_bits *
               static_cast<double>(cfg.kappa()) * cfg.key_reuse_factor;
    }
    // fixed-key ciphers: one key + IV/nonce refresh per reporting batch
    const auto spec = crypto::spec_for(cfg.algorithm);
    return static_cast<double>(spec.key_bits + spec.iv_or_nonce_bits);
}

double reusability_factor(const UseCaseConfig& cfg) {
    const double data_bits = static_cast<double>(cfg.n_signals) *
                             cfg.precision_bits *
                             static_cast<double>(cfg.kappa());
    if (data_bits == 0.0) return 0.0;
    return key_demand_per_period(cfg) / data_bits;
}

bool tight_availability(const UseCaseConfig& cfg, double avg_skr_bps) {
    if (avg_skr_bps < 0.0)
        throw std::invalid_argument("tight_availability: negative rate");
    return key_demand_per_period(cfg) <= avg_skr_bps * effective_period(cfg);
}

bool latency_ok(const LatencyRecord& rec, const UseCaseConfig& cfg) {
    // action time is recorded but not budgeted
    const double budgeted = rec.qkd_s() + rec.crypto_s() + rec.com_s();
    return budgeted <= effective_period(cfg);
}

} // namespace qkdlink::comm
