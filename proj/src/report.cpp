#include "ccg/report.hpp"

#include "ccg/hull.hpp"
#include "ccg/queries.hpp"
#include "ccg/rng.hpp"
#include "ccg/serialize.hpp"
#include "ccg/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace ccg
{
    using nlohmann::json;
    namespace fs = std::filesystem;

    namespace
    {
        void write_file(const fs::path& path, const std::string& text)
        {
            std::ofstream out(path);
            if (!out)
                throw std::runtime_error("cannot write " + path.string());
            out << text;
        }

        void write_json(const fs::path& path, const json& j)
        {
            write_file(path, j.dump(2) + "\n");
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        json point(const Eigen::Vector2d& p)
        {
            return json::array({p.x(), p.y()});
        }

        json polygon_json(const Polygon& poly)
        {
            json out = json::array();
            for (const auto& p : poly)
                out.push_back(point(p));
            return out;
        }

        void prepare_dir(const fs::path& dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (!fs::is_directory(dir))
                throw std::runtime_error("cannot create output directory " + dir.string());
        }

        std::string steps_csv(const ScenarioResult& res)
        {
            std::string out = csv_header() + "\n";
            for (const auto& log : res.logs)
                out += csv_row(log) + "\n";
            return out;
        }

        std::string volume_svg(const std::vector<svg::Series>& series)
        {
            return svg::line_plot(series, "Outer area of the estimate", "k", "area (K-direction outer polygon)");
        }

        svg::Series volume_series(const ScenarioResult& res, std::string name, std::string color)
        {
            svg::Series s;
            s.name = std::move(name);
            s.color = std::move(color);
            for (const auto& log : res.logs)
            {
                s.x.push_back(log.k);
                s.y.push_back(log.volume);
            }
            return s;
        }

        std::string trajectory_svg(const ScenarioConfig& cfg, const ScenarioResult& res)
        {
            std::vector<svg::Shape> shapes;
            svg::Shape ref{res.reference, "#aaaaaa", "none", false, 1.0};
            svg::Shape truth{res.truth, "#000000", "none", false, 1.5};
            shapes.push_back(ref);
            shapes.push_back(truth);
            for (const auto& snap : res.snapshots)
                shapes.push_back({snap.polygon, "#1f77b4", "rgba(31,119,180,0.15)", true, 1.0});
            std::vector<svg::Circle> circles;
            for (const auto& b : cfg.beacons)
                circles.push_back({b.position, b.detect_radius, "#ff7f0e"});
            std::vector<svg::Marker> markers;
            for (const auto& snap : res.snapshots)
                markers.push_back({snap.truth, "#d62728"});
            return svg::scene(shapes, circles, markers, "Trajectory and estimates");
        }

        void write_run(const RunReport& rep, const fs::path& dir, bool with_svg)
        {
            prepare_dir(dir);
            write_file(dir / "steps.csv", steps_csv(rep.result));

            json snaps = json::array();
            for (const auto& s : rep.result.snapshots)
                snaps.push_back({{"k", s.k}, {"polygon", polygon_json(s.polygon)}, {"truth", point(s.truth)}});
            write_json(dir / "snapshots.json", snaps);

            json truth = json::array();
            for (const auto& p : rep.result.truth)
                truth.push_back(point(p));
            json reference = json::array();
            for (const auto& p : rep.result.reference)
                reference.push_back(point(p));
            write_json(dir / "report.json", {{"config", to_json(rep.config)},
                                             {"summary", rep.summary},
                                             {"columns", json::array({"k", "volume", "step_ms", "n_g_pre", "n_g_post",
                                                                      "n_c_post", "contained", "beacon_active"})},
                                             {"truth", truth},
                                             {"reference", reference}});
            if (with_svg)
            {
                write_file(dir / "volume.svg", volume_svg({volume_series(rep.result, "estimate", "#1f77b4")}));
                write_file(dir / "trajectory.svg", trajectory_svg(rep.config, rep.result));
            }
        }
    }

    ScenarioConfig apply_overrides(ScenarioConfig cfg, const RunOverrides& o)
    {
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.gamma)
            cfg.gamma = *o.gamma;
        if (o.mode)
            cfg.filter_mode = *o.mode;
        if (o.reduction)
            cfg.reduction_mode = *o.reduction;
        if (o.snapshot_every)
            cfg.snapshot_every = *o.snapshot_every;
        if (o.steps)
            cfg.steps = *o.steps;
        if (o.directions_K)
            cfg.directions_K = *o.directions_K;
        cfg.check();
        return cfg;
    }

    json summarize(const ScenarioConfig& cfg, const ScenarioResult& res)
    {
        double integral = 0.0;
        double total_ms = 0.0;
        double max_ms = 0.0;
        int contained = 0;
        int beacon_steps = 0;
        for (const auto& log : res.logs)
        {
            if (std::isfinite(log.volume))
                integral += log.volume * cfg.Ts;
            total_ms += log.step_ms;
            max_ms = std::max(max_ms, log.step_ms);
            contained += log.contained.value_or(false) ? 1 : 0;
            beacon_steps += log.beacon_active ? 1 : 0;
        }
        const int rows = static_cast<int>(res.logs.size());
        return {{"rows", rows},
                {"volume_integral", integral},
                {"final_volume", rows ? json(res.logs.back().volume) : json(nullptr)},
                {"mean_step_ms", rows ? total_ms / rows : 0.0},
                {"max_step_ms", max_ms},
                {"contained_steps", contained},
                {"containment_success", !res.error && contained == rows},
                {"beacon_steps", beacon_steps},
                {"aborted", res.error.has_value()},
                {"error", res.error ? json(*res.error) : json(nullptr)},
                {"error_step", res.error_step},
                {"empty_estimate", res.empty_estimate},
                {"seed", cfg.seed}};
    }

    RunReport cmd_run(const ScenarioConfig& base, const fs::path& out_dir, const RunOverrides& o)
    {
        RunReport rep;
        rep.config = apply_overrides(base, o);
        rep.result = run_scenario(rep.config);
        rep.summary = summarize(rep.config, rep.result);
        write_run(rep, out_dir, o.svg);
        return rep;
    }

    RunReport cmd_run(const fs::path& config, const fs::path& out_dir, const RunOverrides& o)
    {
        return cmd_run(load_config(config), out_dir, o);
    }

    CompareReport cmd_compare(const ScenarioConfig& base, const fs::path& out_dir, const RunOverrides& o)
    {
        RunOverrides oc = o;
        oc.mode = FilterMode::CCG;
        RunOverrides oz = o;
        oz.mode = FilterMode::CZRelaxed;

        CompareReport rep;
        rep.ccg = cmd_run(base, out_dir / "ccg", oc);
        rep.cz = cmd_run(base, out_dir / "cz", oz);

        const auto& a = rep.ccg.result;
        const auto& b = rep.cz.result;
        std::string csv =
            "k,truth_p,truth_q,volume_ccg,volume_cz,time_ccg,time_cz,contained_ccg,contained_cz,beacon_active\n";
        const std::size_t rows = std::min(a.logs.size(), b.logs.size());
        for (std::size_t i = 0; i < rows; ++i)
        {
            const auto& la = a.logs[i];
            const auto& lb = b.logs[i];
            const auto& p = a.truth[static_cast<std::size_t>(la.k)];
            if (std::isfinite(la.volume) && std::isfinite(lb.volume) && la.volume > lb.volume + 1e-6)
                rep.dominated = false;
            char buf[512];
            std::snprintf(buf, sizeof buf, "%d,%s,%s,%s,%s,%.6f,%.6f,%d,%d,%d\n", la.k, fmt(p.x()).c_str(),
                          fmt(p.y()).c_str(), fmt(la.volume).c_str(), fmt(lb.volume).c_str(), la.step_ms, lb.step_ms,
                          la.contained.value_or(false) ? 1 : 0, lb.contained.value_or(false) ? 1 : 0,
                          la.beacon_active ? 1 : 0);
            csv += buf;
        }
        write_file(out_dir / "compare.csv", csv);
        write_json(out_dir / "compare.json", {{"ccg", rep.ccg.summary},
                                              {"cz", rep.cz.summary},
                                              {"volume_ccg_le_cz", rep.dominated},
                                              {"truth_identical", a.truth == b.truth}});
        if (o.svg)
            write_file(out_dir / "compare.svg", volume_svg({volume_series(a, "CCG", "#1f77b4"),
                                                            volume_series(b, "CZ (relaxed)", "#d62728")}));
        return rep;
    }

    CompareReport cmd_compare(const fs::path& config, const fs::path& out_dir, const RunOverrides& o)
    {
        return cmd_compare(load_config(config), out_dir, o);
    }

    namespace
    {
        // 360 equally spaced directions in the plane, otherwise seeded random ones.
        std::vector<Vector> probe_directions(Index n, int count)
        {
            std::vector<Vector> dirs;
            if (n == 2)
            {
                for (int i = 0; i < count; ++i)
                {
                    const double a = 2.0 * std::numbers::pi * i / count;
                    dirs.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
                }
                return dirs;
            }
            Rng rng(2024);
            for (int i = 0; i < count; ++i)
                dirs.push_back(random_unit_direction(n, rng));
            return dirs;
        }

        double require_support(const ConvexSetCCG& Z, const Vector& u, const char* what)
        {
            const SupportResult r = support_function(Z, u);
            if (!r.ok())
                throw std::runtime_error(std::string("support of ") + what + " failed (" +
                                         std::string(to_string(r.status)) + ")");
            return r.value;
        }

        json counts(const ConvexSetCCG& Z)
        {
            return {{"n_g", Z.num_generators()}, {"n_c", Z.num_constraints()}};
        }
    }

    json cmd_hull_demo(const fs::path& a, const fs::path& b, const fs::path& out_dir, int K, bool with_svg)
    {
        const ConvexSetCCG A = load_set(a);
        const ConvexSetCCG B = load_set(b);
        const ConvexSetCCG H = convex_hull_pair(A, B);

        std::optional<ConvexSetCCG> R;
        try
        {
            R = convex_hull_pair(relax_to_box_blocks(A), relax_to_box_blocks(B));
        }
        catch (const std::invalid_argument&)
        {
        }

        double residual = 0.0;
        double relaxed_slack = -std::numeric_limits<double>::infinity();
        for (const Vector& u : probe_directions(A.dim(), 360))
        {
            const double target = std::max(require_support(A, u, "A"), require_support(B, u, "B"));
            residual = std::max(residual, std::abs(require_support(H, u, "hull") - target));
            if (R)
                relaxed_slack = std::max(relaxed_slack, require_support(*R, u, "relaxed hull") - target);
        }

        json report = {{"counts",
                        {{"A", counts(A)},
                         {"B", counts(B)},
                         {"hull", counts(H)},
                         {"expected_hull",
                          {{"n_g", A.num_generators() + B.num_generators() + 1},
                           {"n_c", A.num_constraints() + B.num_constraints()}}}}},
                       {"support_residual_max", residual},
                       {"directions", 360}};
        report["size_law_ok"] = H.num_generators() == A.num_generators() + B.num_generators() + 1 &&
                                H.num_constraints() == A.num_constraints() + B.num_constraints();
        if (R)
        {
            report["counts"]["relaxed_hull"] = counts(*R);
            report["relaxed_slack_max"] = relaxed_slack;
            if (A.dim() == 2)
            {
                const Vector d = Eigen::Vector2d(1.0, 1.0).normalized();
                report["relaxed_slack_diagonal"] =
                    require_support(*R, d, "relaxed hull") -
                    std::max(require_support(A, d, "A"), require_support(B, d, "B"));
            }
        }
        else
            report["relaxed_slack_max"] = nullptr;

        prepare_dir(out_dir);
        save_set(H, out_dir / "hull.json");
        if (R)
            save_set(*R, out_dir / "relaxed_hull.json");
        if (A.dim() == 2)
        {
            json polys = {{"A", polygon_json(outer_polygon(A, K))},
                          {"B", polygon_json(outer_polygon(B, K))},
                          {"hull", polygon_json(outer_polygon(H, K))}};
            if (R)
                polys["relaxed_hull"] = polygon_json(outer_polygon(*R, K));
            report["polygons"] = polys;
            if (with_svg)
            {
                std::vector<svg::Shape> shapes;
                const auto add = [&](const char* key, const char* color) {
                    if (!polys.contains(key))
                        return;
                    svg::Shape s;
                    for (const auto& p : polys[key])
                        s.points.emplace_back(p[0].get<double>(), p[1].get<double>());
                    s.stroke = color;
                    shapes.push_back(s);
                };
                add("relaxed_hull", "#d62728");
                add("hull", "#1f77b4");
                add("A", "#2ca02c");
                add("B", "#9467bd");
                write_file(out_dir / "hull.svg", svg::scene(shapes, {}, {}, "Exact hull and relaxed hull"));
            }
        }
        write_json(out_dir / "hull_report.json", report);
        return report;
    }

    json cmd_reduce_demo(const fs::path& set, const fs::path& out_dir, const ReductionSpec& spec, int K,
                         bool with_svg)
    {
        const ConvexSetCCG Z = load_set(set);
        const ConvexSetCCG R = reduce_to_order(Z, spec);

        const auto dirs = probe_directions(Z.dim(), Z.dim() == 2 ? 360 : 1000);
        double min_slack = std::numeric_limits<double>::infinity();
        for (const Vector& u : dirs)
            min_slack = std::min(min_slack, require_support(R, u, "reduced") - require_support(Z, u, "input"));

        json report = {{"input", counts(Z)},
                       {"reduced", counts(R)},
                       {"expected", {{"n_g", spec.gamma + Z.dim()}, {"n_c", spec.gamma}}},
                       {"gamma", spec.gamma},
                       {"mode", std::string(to_string(spec.mode))},
                       {"seed", spec.seed},
                       {"dominance_min_slack", min_slack},
                       {"directions", dirs.size()}};

        prepare_dir(out_dir);
        save_set(R, out_dir / "reduced.json");
        if (Z.dim() == 2)
        {
            const Polygon pz = outer_polygon(Z, K);
            const Polygon pr = outer_polygon(R, K);
            report["input_outer_area"] = polygon_area(pz);
            report["reduced_outer_area"] = polygon_area(pr);
            report["polygons"] = {{"input", polygon_json(pz)}, {"reduced", polygon_json(pr)}};
            if (with_svg)
                write_file(out_dir / "reduce.svg",
                           svg::scene({{pr, "#d62728", "none", true, 1.0}, {pz, "#1f77b4", "none", true, 1.0}}, {}, {},
                                      "Order reduction"));
        }
        write_json(out_dir / "reduce_report.json", report);
        return report;
    }
}
