#ifndef CCG_SCENARIO_HPP_
#define CCG_SCENARIO_HPP_

#include "ccg/conic.hpp"
#include "ccg/estimator.hpp"
#include "ccg/queries.hpp"
#include "ccg/reduce.hpp"
#include "ccg/unicycle.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccg
{
    /// Malformed configuration; `field()` is the offending JSON path.
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(std::string field, const std::string& msg)
            : std::invalid_argument(field + ": " + msg), field_(std::move(field))
        {
        }
        const std::string& field() const { return field_; }

    private:
        std::string field_;
    };

    struct ScenarioConfig
    {
        double Ts = 0.1;
        int steps = 150;
        double l = 0.1;
        TrajectorySpec trajectory = TrajectorySpec::figure8();
        std::vector<Beacon> beacons;
        double compass_deg = 5.0;
        /// per-axis telemetry error bound
        double telemetry_bound = 0.05;
        double init_halfwidth = 0.5;
        int gamma = 10;
        ReductionMode reduction_mode = ReductionMode::Guaranteed;
        /// directions for volume and snapshots; 0 disables the volume column
        int directions_K = 64;
        std::uint64_t seed = 1;
        FilterMode filter_mode = FilterMode::CCG;
        /// also intersect with the telemetry box each step
        bool telemetry_updates = false;
        /// 0 disables snapshots
        int snapshot_every = 40;
        SolverSettings solver;

        static ScenarioConfig figure8();
        static ScenarioConfig spiral();

        /// Throws ConfigError.
        void check() const;
    };

    std::vector<Beacon> default_beacons(TrajectoryKind kind);

    /// Missing fields take the defaults of the trajectory kind; unknown fields
    /// are rejected. Throws ConfigError.
    ScenarioConfig config_from_json(const nlohmann::json& j);
    nlohmann::json to_json(const ScenarioConfig& cfg);
    ScenarioConfig load_config(const std::filesystem::path& path);

    struct Snapshot
    {
        int k = 0;
        Polygon polygon;
        Eigen::Vector2d truth;
    };

    struct ScenarioResult
    {
        std::vector<StepLog> logs;  // k = 1..steps
        std::vector<Snapshot> snapshots;
        std::vector<Eigen::Vector2d> truth;  // k = 0..steps
        std::vector<Eigen::Vector2d> reference;
        /// set when the filter aborted (empty estimate)
        std::optional<std::string> error;
        int error_step = -1;
        /// the abort was an empty estimate rather than a solver failure
        bool empty_estimate = false;
    };

    /// Observer called with X(k) after every step (and k = 0).
    using StepObserver = std::function<void(int k, const ConvexSetCCG& X, const Eigen::Vector2d& truth)>;

    ScenarioResult run_scenario(const ScenarioConfig& cfg, const StepObserver& observer = {});
}

#endif
