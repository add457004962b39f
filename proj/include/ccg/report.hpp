#ifndef CCG_REPORT_HPP_
#define CCG_REPORT_HPP_

#include "ccg/reduce.hpp"
#include "ccg/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>

namespace ccg
{
    struct RunOverrides
    {
        std::optional<std::uint64_t> seed;
        std::optional<int> gamma;
        std::optional<FilterMode> mode;
        std::optional<ReductionMode> reduction;
        std::optional<int> snapshot_every;
        std::optional<int> steps;
        std::optional<int> directions_K;
        bool svg = false;
    };

    ScenarioConfig apply_overrides(ScenarioConfig cfg, const RunOverrides& o);

    struct RunReport
    {
        ScenarioConfig config;
        ScenarioResult result;
        nlohmann::json summary;
    };

    /// Summary statistics; every field is recomputable from the step table.
    nlohmann::json summarize(const ScenarioConfig& cfg, const ScenarioResult& res);

    /// Runs the scenario and writes steps.csv, snapshots.json, report.json
    /// (and volume.svg / trajectory.svg with o.svg) into out_dir.
    RunReport cmd_run(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, const RunOverrides& o);
    RunReport cmd_run(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                      const RunOverrides& o);

    struct CompareReport
    {
        RunReport ccg;
        RunReport cz;
        /// volume_ccg ≤ volume_cz + 1e-6 at every logged step
        bool dominated = true;
    };

    /// Same seed in both filter modes; writes ccg/ and cz/ run outputs,
    /// compare.csv, compare.json and (with o.svg) compare.svg.
    CompareReport cmd_compare(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                              const RunOverrides& o);
    CompareReport cmd_compare(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                              const RunOverrides& o);

    /// Hull of two set files, its ℓ∞-relaxed counterpart, outer polygons and
    /// support residuals over 360 directions. Writes hull.json and
    /// hull_report.json (and hull.svg).
    nlohmann::json cmd_hull_demo(const std::filesystem::path& a, const std::filesystem::path& b,
                                 const std::filesystem::path& out_dir, int K = 64, bool svg = false);

    /// Reduces a set file; writes reduced.json and reduce_report.json (and
    /// reduce.svg for planar sets).
    nlohmann::json cmd_reduce_demo(const std::filesystem::path& set, const std::filesystem::path& out_dir,
                                   const ReductionSpec& spec, int K = 64, bool svg = false);
}

#endif
