#include "qkdlink/qkd/keygen_trace.hpp"

#include <algorithm>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qkdlink/util/rng.hpp"

namespace qkdlink::qkd {

std::int64_t KeyGenEvent::key_bits() const {
    return static_cast<std::int64_t>(std::floor(skr_bps * delta_t_s));
}

std::int64_t KeyGenTrace::accumulated_bits(double t_s) const {
    std::int64_t total = 0;
    for (const auto& ev : events) {
        if (ev.completion_s() > t_s) break;
        total += ev.key_bits();
    }
    return total;
}

void KeyGenTrace::validate() const {
    const double tol = 1e-9;
    for (std::size_t g = 0; g < events.size(); ++g) {
        const auto& ev = events[g];
        if (ev.skr_bps < 0.0)
            throw std::runtime_error("KeyGenTrace: negative SKR at event " +
                                     std::to_string(g));
        if (ev.qber < 0.0 || ev.qber > 1.0)
            throw std::runtime_error("KeyGenTrace: QBER outside [0,1] at event " +
                                     std::to_string(g));
        if (g + 1 < events.size() &&
            std::abs(events[g + 1].t_s - (ev.t_s + ev.delta_t_s)) > tol)
            throw std::runtime_error(
                "KeyGenTrace: events not contiguous at event " +
                std::to_string(g));
    }
}

KeyGenTrace synthesize_trace(const ChannelModel& model, double duration_s,
                             double cycle_period_s, double jitter,
                             std::uint64_t seed, double first_cycle_s,
                             const TraceNoise& noise) {
    if (duration_s <= 0.0)
        throw std::invalid_argument("synthesize_trace: duration must be > 0");
    if (cycle_period_s < 0.0 || (cycle_period_s == 0.0 && first_cycle_s <= 0.0)) {
        // a dead channel produces no events
        if (cycle_period_s == 0.0) return {{}, duration_s};
        throw std::invalid_argument("synthesize_trace: bad cycle period");
    }
    if (jitter < 0.0 || jitter >= 1.0)
        throw std::invalid_argument("synthesize_trace: jitter outside [0,1)");

    const double mean_skr = secret_key_rate(model);
    const double mean_qber = model.qber();

    Rng rng(seed);
    KeyGenTrace trace;
    trace.duration_s = duration_s;
    double t = 0.0;
    bool first = true;
    while (true) {
        double base = (first && first_cycle_s > 0.0) ? first_cycle_s
                                                     : cycle_period_s;
        first = false;
        double dt = base * (1.0 + rng.uniform(-jitter, jitter));
        if (t + dt > duration_s) break;
        KeyGenEvent ev;
        ev.t_s = t;
        ev.delta_t_s = dt;
        ev.skr_bps = mean_skr;
        ev.qber = mean_qber;
        if (noise.enabled) {
            ev.skr_bps =
                std::max(0.0, mean_skr * (1.0 + noise.skr_rel_sigma *
                                                    rng.gaussian()));
            ev.qber = std::clamp(mean_qber + noise.qber_sigma * rng.gaussian(),
                                 0.0, 1.0);
        }
        trace.events.push_back(ev);
        t += dt;
    }
    return trace;
}

KeyGenTrace synthesize_calibrated_trace(const ChannelModel& model,
                                        double duration_s,
                                        std::uint64_t seed) {
    const auto cadence = calibrated_cadence(model);
    return synthesize_trace(model, duration_s, cadence.cycle_period_s,
                            cadence.jitter, seed, cadence.first_cycle_s);
}

KeyGenTrace load_trace(std::istream& in) {
    KeyGenTrace trace;
    std::string line;
    std::size_t row = 0;
    double prev_t = 0.0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("trace CSV row " + std::to_string(row) + ": " +
                                 what);
    };
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (row == 1) {
            if (line != "t_s,skr_bps,qber")
                fail("expected header t_s,skr_bps,qber");
            continue;
        }
        std::istringstream ss(line);
        std::string f0, f1, f2;
        if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
            !std::getline(ss, f2))
            fail("expected three comma-separated fields");
        double t, skr, qber;
        try {
            std::size_t p0, p1, p2;
            t = std::stod(f0, &p0);
            skr = std::stod(f1, &p1);
            qber = std::stod(f2, &p2);
            if (p0 != f0.size() || p1 != f1.size() || p2 != f2.size())
                fail("trailing characters in numeric field");
        } catch (const std::logic_error&) {
            fail("malformed numeric field");
            return trace; // unreachable
        }
        if (t <= prev_t) fail("timestamps must be strictly increasing");
        if (skr < 0.0) fail("negative SKR");
        if (qber < 0.0 || qber > 1.0) fail("QBER outside [0,1]");
        KeyGenEvent ev;
        ev.t_s = prev_t;
        ev.delta_t_s = t - prev_t;
        ev.skr_bps = skr;
        ev.qber = qber;
        trace.events.push_back(ev);
        prev_t = t;
    }
    trace.duration_s = prev_t;
    return trace;
}

void save_trace(const KeyGenTrace& trace, std::ostream& out) {
    out << "t_s,skr_bps,qber\n";
    char buf[128];
    for (const auto& ev : trace.events) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.8f\n", ev.completion_s(),
                      ev.skr_bps, ev.qber);
        out << buf;
    }
}

} // namespace qkdlink::qkd
