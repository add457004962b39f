#include "ccg/scenario.hpp"

#include "ccg/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>

namespace ccg
{
    using nlohmann::json;

    std::vector<Beacon> default_beacons(TrajectoryKind kind)
    {
        const double r1 = kind == TrajectoryKind::Figure8 ? 5.0 : 10.0;
        const double r2 = kind == TrajectoryKind::Figure8 ? 2.0 : 7.0;
        return {Beacon{{5.0, 25.0}, r1, 0.1}, Beacon{{23.0, 10.0}, r2, 0.1}};
    }

    ScenarioConfig ScenarioConfig::figure8()
    {
        ScenarioConfig cfg;
        cfg.trajectory = TrajectorySpec::figure8();
        cfg.beacons = default_beacons(TrajectoryKind::Figure8);
        return cfg;
    }

    ScenarioConfig ScenarioConfig::spiral()
    {
        ScenarioConfig cfg;
        cfg.trajectory = TrajectorySpec::spiral();
        cfg.beacons = default_beacons(TrajectoryKind::Spiral);
        return cfg;
    }

    void ScenarioConfig::check() const
    {
        const auto require = [](bool ok, const char* field, const char* msg) {
            if (!ok)
                throw ConfigError(field, msg);
        };
        require(Ts > 0.0 && std::isfinite(Ts), "Ts", "must be positive");
        require(steps >= 0, "steps", "must be >= 0");
        require(l > 0.0, "l", "must be positive");
        require(trajectory.omega > 0.0, "trajectory.omega", "must be positive");
        if (trajectory.kind == TrajectoryKind::Figure8)
            require(trajectory.amplitudes.minCoeff() > 0.0, "trajectory.amplitudes", "must be positive");
        else
            require(trajectory.r0 >= 0.0 && trajectory.growth > 0.0, "trajectory.growth",
                    "r0 must be >= 0 and growth positive");
        for (const auto& b : beacons)
            require(b.noise >= 0.0 && b.detect_radius > b.noise, "beacons", "need radius > noise >= 0");
        require(compass_deg >= 0.0 && compass_deg < 90.0, "compass_deg", "must lie in [0, 90)");
        require(telemetry_bound >= 0.0, "telemetry_bound", "must be >= 0");
        require(init_halfwidth > 0.0, "init_halfwidth", "must be positive");
        require(gamma >= 1, "gamma", "must be >= 1");
        require(directions_K == 0 || directions_K >= 3, "directions_K", "must be 0 or >= 3");
        require(snapshot_every >= 0, "snapshot_every", "must be >= 0");
        require(solver.feasibility_tol > 0.0, "solver.feasibility_tol", "must be positive");
        require(solver.max_iterations > 0, "solver.max_iterations", "must be positive");
    }

    namespace
    {
        template <typename T>
        T get(const json& j, const char* key, const std::string& path, T fallback)
        {
            const auto it = j.find(key);
            if (it == j.end())
                return fallback;
            try
            {
                return it->get<T>();
            }
            catch (const json::exception&)
            {
                throw ConfigError(path + key, "wrong type");
            }
        }

        Eigen::Vector2d get_vec2(const json& j, const char* key, const std::string& path, Eigen::Vector2d fallback)
        {
            const auto it = j.find(key);
            if (it == j.end())
                return fallback;
            if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
                throw ConfigError(path + key, "expected [x, y]");
            return {(*it)[0].get<double>(), (*it)[1].get<double>()};
        }

        void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& path)
        {
            if (!j.is_object())
                throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
            for (const auto& [key, _] : j.items())
                if (!known.contains(key))
                    throw ConfigError(path + key, "unknown field");
        }
    }

    ScenarioConfig config_from_json(const json& j)
    {
        reject_unknown(j,
                       {"Ts", "steps", "l", "trajectory", "beacons", "compass_deg", "telemetry_bound", "init_halfwidth",
                        "gamma", "reduction_mode", "directions_K", "seed", "filter_mode", "telemetry_updates",
                        "snapshot_every", "solver"},
                       "");

        TrajectoryKind kind = TrajectoryKind::Figure8;
        json traj = j.value("trajectory", json::object());
        reject_unknown(traj, {"kind", "center", "amplitudes", "omega", "r0", "growth"}, "trajectory.");
        if (traj.contains("kind"))
        {
            const auto parsed = parse_trajectory_kind(get<std::string>(traj, "kind", "trajectory.", ""));
            if (!parsed)
                throw ConfigError("trajectory.kind", "expected \"figure8\" or \"spiral\"");
            kind = *parsed;
        }
        ScenarioConfig cfg = kind == TrajectoryKind::Figure8 ? ScenarioConfig::figure8() : ScenarioConfig::spiral();

        auto& t = cfg.trajectory;
        t.center = get_vec2(traj, "center", "trajectory.", t.center);
        t.amplitudes = get_vec2(traj, "amplitudes", "trajectory.", t.amplitudes);
        t.omega = get(traj, "omega", "trajectory.", t.omega);
        t.r0 = get(traj, "r0", "trajectory.", t.r0);
        t.growth = get(traj, "growth", "trajectory.", t.growth);

        cfg.Ts = get(j, "Ts", "", cfg.Ts);
        cfg.steps = get(j, "steps", "", cfg.steps);
        cfg.l = get(j, "l", "", cfg.l);
        cfg.compass_deg = get(j, "compass_deg", "", cfg.compass_deg);
        cfg.telemetry_bound = get(j, "telemetry_bound", "", cfg.telemetry_bound);
        cfg.init_halfwidth = get(j, "init_halfwidth", "", cfg.init_halfwidth);
        cfg.gamma = get(j, "gamma", "", cfg.gamma);
        cfg.directions_K = get(j, "directions_K", "", cfg.directions_K);
        cfg.seed = get(j, "seed", "", cfg.seed);
        cfg.telemetry_updates = get(j, "telemetry_updates", "", cfg.telemetry_updates);
        cfg.snapshot_every = get(j, "snapshot_every", "", cfg.snapshot_every);

        if (j.contains("reduction_mode"))
        {
            const auto m = parse_reduction_mode(get<std::string>(j, "reduction_mode", "", ""));
            if (!m)
                throw ConfigError("reduction_mode", "expected \"guaranteed\" or \"paper\"");
            cfg.reduction_mode = *m;
        }
        if (j.contains("filter_mode"))
        {
            const auto m = parse_filter_mode(get<std::string>(j, "filter_mode", "", ""));
            if (!m)
                throw ConfigError("filter_mode", "expected \"ccg\" or \"cz\"");
            cfg.filter_mode = *m;
        }

        if (j.contains("beacons"))
        {
            const json& bs = j["beacons"];
            if (!bs.is_array())
                throw ConfigError("beacons", "expected an array");
            cfg.beacons.clear();
            for (std::size_t i = 0; i < bs.size(); ++i)
            {
                const std::string path = "beacons[" + std::to_string(i) + "].";
                reject_unknown(bs[i], {"pos", "radius", "noise"}, path);
                if (!bs[i].contains("pos") || !bs[i].contains("radius"))
                    throw ConfigError(path + "pos", "beacon needs pos and radius");
                Beacon b;
                b.position = get_vec2(bs[i], "pos", path, {});
                b.detect_radius = get(bs[i], "radius", path, 0.0);
                b.noise = get(bs[i], "noise", path, 0.1);
                cfg.beacons.push_back(b);
            }
        }

        if (j.contains("solver"))
        {
            const json& s = j["solver"];
            reject_unknown(s, {"feasibility_tol", "gap_tol", "residual_tol", "max_iterations"}, "solver.");
            cfg.solver.feasibility_tol = get(s, "feasibility_tol", "solver.", cfg.solver.feasibility_tol);
            cfg.solver.gap_tol = get(s, "gap_tol", "solver.", cfg.solver.gap_tol);
            cfg.solver.residual_tol = get(s, "residual_tol", "solver.", cfg.solver.residual_tol);
            cfg.solver.max_iterations = get(s, "max_iterations", "solver.", cfg.solver.max_iterations);
        }

        cfg.check();
        return cfg;
    }

    json to_json(const ScenarioConfig& cfg)
    {
        json beacons = json::array();
        for (const auto& b : cfg.beacons)
            beacons.push_back({{"pos", {b.position.x(), b.position.y()}}, {"radius", b.detect_radius}, {"noise", b.noise}});
        const auto& t = cfg.trajectory;
        return {{"Ts", cfg.Ts},
                {"steps", cfg.steps},
                {"l", cfg.l},
                {"trajectory",
                 {{"kind", std::string(to_string(t.kind))},
                  {"center", {t.center.x(), t.center.y()}},
                  {"amplitudes", {t.amplitudes.x(), t.amplitudes.y()}},
                  {"omega", t.omega},
                  {"r0", t.r0},
                  {"growth", t.growth}}},
                {"beacons", beacons},
                {"compass_deg", cfg.compass_deg},
                {"telemetry_bound", cfg.telemetry_bound},
                {"init_halfwidth", cfg.init_halfwidth},
                {"gamma", cfg.gamma},
                {"reduction_mode", std::string(to_string(cfg.reduction_mode))},
                {"directions_K", cfg.directions_K},
                {"seed", cfg.seed},
                {"filter_mode", std::string(to_string(cfg.filter_mode))},
                {"telemetry_updates", cfg.telemetry_updates},
                {"snapshot_every", cfg.snapshot_every},
                {"solver",
                 {{"feasibility_tol", cfg.solver.feasibility_tol},
                  {"gap_tol", cfg.solver.gap_tol},
                  {"residual_tol", cfg.solver.residual_tol},
                  {"max_iterations", cfg.solver.max_iterations}}}};
    }

    ScenarioConfig load_config(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("<file>", "cannot open " + path.string());
        json j;
        try
        {
            in >> j;
        }
        catch (const json::parse_error& e)
        {
            throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
        }
        return config_from_json(j);
    }

    ScenarioResult run_scenario(const ScenarioConfig& cfg, const StepObserver& observer)
    {
        cfg.check();
        SolverSettings settings = cfg.solver;
        if (std::getenv("CCG_FEAS_TOL"))
            settings.feasibility_tol = SolverSettings::from_env().feasibility_tol;
        const InteriorPointSolver solver(settings);

        const Rng root(cfg.seed);
        Rng sensor_rng = root.split(1);
        Rng beacon_rng = root.split(2);
        const double delta = cfg.compass_deg * std::numbers::pi / 180.0;
        const int snapshot_K = cfg.directions_K >= 3 ? cfg.directions_K : 64;

        const auto telemetry = [&](const Eigen::Vector2d& p) -> Eigen::Vector2d {
            if (cfg.telemetry_bound <= 0.0)
                return p;
            return p + Eigen::Vector2d(sensor_rng.uniform(-cfg.telemetry_bound, cfg.telemetry_bound),
                                       sensor_rng.uniform(-cfg.telemetry_bound, cfg.telemetry_bound));
        };

        ScenarioResult res;
        UnicycleState state;
        {
            const Eigen::Vector2d start = reference(cfg.trajectory, 0, cfg.Ts);
            state = {start.x(), start.y(), 0.0};
        }
        const Eigen::Vector2d half = Eigen::Vector2d::Constant(cfg.init_halfwidth);
        FilterState fs = make_filter(from_interval(state.position() - half, state.position() + half),
                                     ReductionSpec{cfg.gamma, cfg.reduction_mode, mix_seed(cfg.seed, 3)},
                                     cfg.filter_mode);

        res.truth.push_back(state.position());
        res.reference.push_back(reference(cfg.trajectory, 0, cfg.Ts));
        if (cfg.snapshot_every > 0)
            res.snapshots.push_back({0, outer_polygon(fs.X, snapshot_K, solver), state.position()});
        if (observer)
            observer(0, fs.X, state.position());

        Eigen::Vector2d p_hat = telemetry(state.position());
        for (int k = 0; k < cfg.steps; ++k)
        {
            const double theta_hat = compass_measure(state.theta, sensor_rng, delta);
            const Eigen::Vector2d tau_k = reference(cfg.trajectory, k, cfg.Ts);
            const Eigen::Vector2d tau_next = reference(cfg.trajectory, k + 1, cfg.Ts);
            const Eigen::Vector2d u =
                controller(p_hat, theta_hat, tau_k, tau_next, Eigen::Vector2d::Zero(), cfg.Ts, cfg.l);
            VertexModel vm = build_vertex_maps(theta_hat, delta, u, cfg.Ts, cfg.l);

            state = dynamics_step(state, u, cfg.Ts, cfg.l);
            const Eigen::Vector2d pos = state.position();
            res.truth.push_back(pos);
            res.reference.push_back(tau_next);

            StepInput in;
            in.vertices = std::move(vm.vertices);
            in.Bu = Vector::Zero(2);
            in.L = Matrix::Identity(2, 2);
            in.D = std::move(vm.remainder);
            for (const auto& b : cfg.beacons)
                if (auto reading = beacon_measure(pos, b, beacon_rng))
                {
                    in.measurements.push_back({Matrix::Identity(2, 2), std::move(reading->set)});
                    in.beacon_active = true;
                }
            p_hat = telemetry(pos);
            if (cfg.telemetry_updates)
                in.measurements.push_back(
                    {Matrix::Identity(2, 2),
                     from_interval(p_hat - Eigen::Vector2d::Constant(cfg.telemetry_bound),
                                   p_hat + Eigen::Vector2d::Constant(cfg.telemetry_bound))});

            StepOptions opts;
            opts.volume_directions = cfg.directions_K;
            opts.truth = Vector(pos);
            try
            {
                StepResult step = filter_step(fs, in, opts, solver);
                fs = std::move(step.state);
                res.logs.push_back(step.log);
            }
            catch (const EmptyEstimateError& e)
            {
                res.error = e.what();
                res.error_step = e.step();
                res.empty_estimate = true;
                return res;
            }
            catch (const std::runtime_error& e)
            {
                res.error = "step " + std::to_string(k + 1) + ": " + e.what();
                res.error_step = k + 1;
                return res;
            }
            if (observer)
                observer(k + 1, fs.X, pos);
            if (cfg.snapshot_every > 0 && (k + 1) % cfg.snapshot_every == 0)
                res.snapshots.push_back({k + 1, outer_polygon(fs.X, snapshot_K, solver), pos});
        }
        return res;
    }
}
