#include "qkdlink/scenario/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qkdlink::scenario {

using nlohmann::json;

ScenarioConfig ScenarioConfig::defaults() {
    ScenarioConfig cfg;
    cfg.sweep.distances_km = {50,  51,  52,  54,  58,  66,  70,  75,  82,  90, 95,
                              100, 105, 110, 115, 120, 125, 130, 135, 140, 145};
    cfg.sweep.n_signals = {68, 2000};
    cfg.sweep.sampling_rates_hz = {1.0, 10.0, 20.0};
    cfg.sweep.algorithms = {crypto::Algorithm::OTP};
    return cfg;
}

namespace {

template <typename T>
std::vector<T> read_array(const json& j) {
    std::vector<T> out;
    for (const auto& v : j) out.push_back(v.get<T>());
    return out;
}

void parse_channel(const json& j, ScenarioConfig& cfg) {
    if (j.contains("length_km"))
        cfg.channel = cfg.channel.at_length(j["length_km"].get<double>());
    if (j.contains("attenuation_db_per_km"))
        cfg.channel.atten_coeff_db_per_km =
            j["attenuation_db_per_km"].get<double>();
    if (j.contains("source_rate_hz"))
        cfg.channel.source_rate_hz = j["source_rate_hz"].get<double>();
    if (j.contains("detector_efficiency"))
        cfg.channel.detector_efficiency =
            j["detector_efficiency"].get<double>();
    if (j.contains("sift_ratio"))
        cfg.channel.sift_ratio = j["sift_ratio"].get<double>();
    if (j.contains("ec_efficiency"))
        cfg.channel.ec_efficiency = j["ec_efficiency"].get<double>();
    if (j.contains("qber_profile")) {
        cfg.channel.qber_profile.clear();
        for (const auto& pt : j["qber_profile"])
            cfg.channel.qber_profile.emplace_back(pt.at(0).get<double>(),
                                                  pt.at(1).get<double>());
    }
    if (j.contains("trace_file"))
        cfg.trace_file = j["trace_file"].get<std::string>();
}

void parse_use_case(const json& j, comm::UseCaseConfig& uc) {
    if (j.contains("n_signals"))
        uc.n_signals = j["n_signals"].get<std::int64_t>();
    if (j.contains("sampling_rate_hz"))
        uc.sampling_rate_hz = j["sampling_rate_hz"].get<double>();
    if (j.contains("reporting_rate_hz"))
        uc.reporting_rate_hz = j["reporting_rate_hz"].get<double>();
    if (j.contains("precision_bits"))
        uc.precision_bits = j["precision_bits"].get<int>();
    if (j.contains("key_reuse_factor"))
        uc.key_reuse_factor = j["key_reuse_factor"].get<double>();
    if (j.contains("autonomy_target_s"))
        uc.autonomy_target_s = j["autonomy_target_s"].get<double>();
    if (j.contains("algorithm"))
        uc.algorithm =
            crypto::algorithm_from_name(j["algorithm"].get<std::string>());
}

void parse_sweep(const json& j, SweepSection& s) {
    if (j.contains("distances_km"))
        s.distances_km = read_array<double>(j["distances_km"]);
    if (j.contains("n_signals"))
        s.n_signals = read_array<std::int64_t>(j["n_signals"]);
    if (j.contains("sampling_rates_hz"))
        s.sampling_rates_hz = read_array<double>(j["sampling_rates_hz"]);
    if (j.contains("algorithms")) {
        s.algorithms.clear();
        for (const auto& name : j["algorithms"])
            s.algorithms.push_back(
                crypto::algorithm_from_name(name.get<std::string>()));
    }
}

void parse_failure(const json& j, FailureSection& f) {
    if (j.contains("fail_offsets_s"))
        f.fail_offsets_s = read_array<double>(j["fail_offsets_s"]);
    if (j.contains("switch_to"))
        f.switch_to =
            crypto::algorithm_from_name(j["switch_to"].get<std::string>());
    if (j.contains("autonomy_target_s"))
        f.autonomy_target_s = j["autonomy_target_s"].get<double>();
}

void parse_run(const json& j, RunSection& r) {
    if (j.contains("cycles")) r.cycles = j["cycles"].get<std::int64_t>();
    if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out_dir")) r.out_dir = j["out_dir"].get<std::string>();
}

} // namespace

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("scenario: cannot open config " +
                                 path.string());
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    ScenarioConfig cfg = defaults();
    if (j.contains("channel")) parse_channel(j["channel"], cfg);
    if (j.contains("use_case")) parse_use_case(j["use_case"], cfg.use_case);
    if (j.contains("sweep")) parse_sweep(j["sweep"], cfg.sweep);
    if (j.contains("failure")) parse_failure(j["failure"], cfg.failure);
    if (j.contains("run")) parse_run(j["run"], cfg.run);
    cfg.validate();
    return cfg;
}

void ScenarioConfig::validate() const {
    channel.validate();
    use_case.validate();
    auto check_grid = [](const auto& grid, const char* name) {
        if (grid.empty())
            throw std::runtime_error(std::string("scenario: empty grid ") +
                                     name);
        if (!std::is_sorted(grid.begin(), grid.end()))
            throw std::runtime_error(std::string("scenario: unsorted grid ") +
                                     name);
    };
    check_grid(sweep.distances_km, "sweep.distances_km");
    check_grid(sweep.n_signals, "sweep.n_signals");
    check_grid(sweep.sampling_rates_hz, "sweep.sampling_rates_hz");
    if (sweep.algorithms.empty())
        throw std::runtime_error("scenario: empty algorithm set");
    if (failure.fail_offsets_s.empty())
        throw std::runtime_error("scenario: empty failure offset set");
    if (trace_file && !std::filesystem::exists(*trace_file))
        throw std::runtime_error("scenario: trace file not found: " +
                                 *trace_file);
    if (run.cycles <= 0)
        throw std::runtime_error("scenario: run.cycles must be positive");
}

} // namespace qkdlink::scenario
