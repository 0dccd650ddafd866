#pragma once

#include <filesystem>
#include <ostream>

#include "qkdlink/scenario/sweep.hpp"

namespace qkdlink::scenario {

void write_lead_csv(const LeadSweepResult& result, std::ostream& out);
void write_fail_csv(const FailSweepResult& result, std::ostream& out);

/// SKR / QBER curve over the sweep's distance grid.
void write_model_csv(const ScenarioConfig& cfg, std::ostream& out);

/// Emit every file for one verb into out_dir (created if absent):
/// CSV per table and one static SVG per figure analogue, under
/// deterministic filenames. Empty results produce headers-only CSV and no
/// plot.
void render_model_outputs(const ScenarioConfig& cfg,
                          const std::filesystem::path& out_dir);
void render_lead_outputs(const ScenarioConfig& cfg,
                         const LeadSweepResult& result,
                         const std::filesystem::path& out_dir);
void render_fail_outputs(const ScenarioConfig& cfg,
                         const FailSweepResult& result,
                         const std::filesystem::path& out_dir);
void render_pool_outputs(const pool::PoolTimeline& timeline,
                         const std::filesystem::path& out_dir);

} // namespace qkdlink::scenario
