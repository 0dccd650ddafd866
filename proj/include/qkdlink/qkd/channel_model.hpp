#pragma once

#include <utility>
#include <vector>

namespace qkdlink::qkd {

/// Closed-form decoy-state BB84 performance model.
///
/// SKR(l) = f_source * eta_d * t_chan(l) * eta_sift
///          * max(0, p1_lower * (1 - h(e1_upper)) - ec_efficiency * h(E(l)))
///
/// The QBER profile E(l) is a piecewise-linear map from fiber length to
/// error-rate fraction, clamped at both ends of the anchor range.
struct ChannelModel {
    double length_km = 0.0;
    double atten_coeff_db_per_km = 0.2;
    std::vector<std::pair<double, double>> qber_profile; ///< (length_km, qber)
    double source_rate_hz = 1.0e9;
    double detector_efficiency = 0.05;
    double sift_ratio = 0.45;
    double ec_efficiency = 1.16;
    double p1_lower = 0.62;
    double e1_upper = 0.05;

    /// QBER at a given fiber length (defaults to this->length_km).
    double qber_at(double length_km) const;
    double qber() const { return qber_at(length_km); }

    ChannelModel at_length(double l) const {
        ChannelModel m = *this;
        m.length_km = l;
        return m;
    }

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Binary entropy h(e) = -e*log2(e) - (1-e)*log2(1-e), h(0)=h(1)=0.
/// Throws std::domain_error outside [0,1].
double binary_entropy(double e);

/// Channel transmissivity 10^(-a*l/10).
double transmissivity(const ChannelModel& model);

/// Secret key rate in bits/s, clamped at zero.
double secret_key_rate(const ChannelModel& model);

/// Default model calibrated against the published anchors:
/// 320 kbps / 3.8% QBER at 54 km, ~4% QBER at 50 km, zero rate at 145 km,
/// and the feasibility brackets implied by the lead-time and uptime tables.
ChannelModel default_calibrated_model(double length_km = 54.0);

/// Distillation cadence used when synthesizing traces for a model.
/// Cycle completion intervals shrink toward the reference period at short
/// distances and stretch as the rate drops; the first cycle takes the
/// longest since the block accumulates at the settled rate from scratch.
struct DistillationCadence {
    double first_cycle_s;
    double cycle_period_s;
    double jitter = 0.2;
};

DistillationCadence calibrated_cadence(const ChannelModel& model);

} // namespace qkdlink::qkd
