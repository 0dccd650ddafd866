#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qkdlink/comm/use_case.hpp"
#include "qkdlink/qkd/channel_model.hpp"

namespace qkdlink::scenario {

struct SweepSection {
    std::vector<double> distances_km;
    std::vector<std::int64_t> n_signals;
    std::vector<double> sampling_rates_hz;
    std::vector<crypto::Algorithm> algorithms;
};

struct FailureSection {
    std::vector<double> fail_offsets_s = {3600.0};
    std::optional<crypto::Algorithm> switch_to;
    double autonomy_target_s = 18000.0;
};

struct RunSection {
    std::int64_t cycles = 100;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
};

/// Full scenario description, loadable from a JSON file with sections
/// channel / use_case / sweep / failure / run. Every omitted field keeps
/// its default; the default sweep grids reproduce the reference studies.
struct ScenarioConfig {
    qkd::ChannelModel channel = qkd::default_calibrated_model();
    std::optional<std::string> trace_file;
    comm::UseCaseConfig use_case;
    SweepSection sweep;
    FailureSection failure;
    RunSection run;

    static ScenarioConfig defaults();
    static ScenarioConfig load(const std::filesystem::path& path);

    /// Grids non-empty and sorted; referenced files exist.
    void validate() const;
};

} // namespace qkdlink::scenario
