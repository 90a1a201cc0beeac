#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dmmsat/analysis.hpp"
#include "dmmsat/dynamics.hpp"
#include "dmmsat/generators.hpp"

namespace dmmsat {

struct SweepPoint {
    double v_thr = 0.0;
    double v_jump = 0.0;

    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// Campaign description. Execution resources (worker count) are passed to
/// run_campaign separately so results and exports are a pure function of the
/// spec.
struct CampaignSpec {
    GeneratorSpec generator; // template; per-instance seeds from master_seed
    std::uint32_t instance_count = 100;
    std::vector<SweepPoint> sweep;
    bool baseline = true; // include the unmodified (v_jump = 0) run
    std::vector<std::uint32_t> sizes; // empty: just generator.n
    std::uint64_t master_seed = 0;
    std::uint64_t max_steps = 5'000'000;
    std::uint32_t repeats = 1; // >1 reuses instances with varied solver seeds
    DmmParams base_params;    // alpha..zeta, dt; v_thr/v_jump come per point

    void validate() const;

    friend bool operator==(const CampaignSpec&, const CampaignSpec&) = default;
};

struct CellStats {
    TtsSampleSet samples;
    std::optional<double> median; // undefined when censoring >= 50%
    std::optional<double> nmtts;  // vs the paired baseline
    std::uint64_t censored = 0;
    double mean_jumps = 0.0;
};

struct CampaignResult {
    CampaignSpec spec;
    std::vector<std::uint32_t> sizes;
    std::vector<std::vector<CellStats>> cells; // [size_idx][point_idx]
    std::vector<CellStats> baselines;          // [size_idx]
    double wall_clock_seconds = 0.0; // informational; never exported
};

/// Runs the campaign on `workers` threads. Sample (size s, instance i,
/// repeat r) uses generator seed run_seed(master, g, 0) and solver seed
/// run_seed(master, g, 1 + r) with g = s*instance_count + i; baseline and
/// modified runs of one sample share both, so the design is paired. Output
/// is deterministic for a fixed spec regardless of worker count.
CampaignResult run_campaign(const CampaignSpec& spec, unsigned workers);

/// Writes sweep.csv, per-cell tts CSVs and manifest.json into out_dir.
void export_campaign(const CampaignResult& result,
                     const std::filesystem::path& out_dir);

std::string campaign_spec_json(const CampaignSpec& spec);
CampaignSpec campaign_spec_from_json(const std::string& text);
std::string campaign_manifest_json(const CampaignSpec& spec);

/// True when every cell (and baseline) has a defined median.
bool campaign_complete(const CampaignResult& result);

std::string tts_file_name(std::uint32_t size, std::optional<std::size_t> point_idx);

} // namespace dmmsat
