#include "ccg/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace
{
    enum Exit
    {
        kOk = 0,
        kUsage = 1,
        kEmpty = 2,
        kRuntime = 3,
    };

    int run_exit_code(const ccg::RunReport& rep)
    {
        if (!rep.result.error)
            return kOk;
        std::cerr << "error at step " << rep.result.error_step << ": " << *rep.result.error << "\n";
        return rep.result.empty_estimate ? kEmpty : kRuntime;
    }

    void print_summary(const char* label, const ccg::RunReport& rep)
    {
        const auto& s = rep.summary;
        std::printf("%s: rows=%d volume_integral=%.6g mean_step_ms=%.3f contained=%d/%d\n", label,
                    s["rows"].get<int>(), s["volume_integral"].get<double>(), s["mean_step_ms"].get<double>(),
                    s["contained_steps"].get<int>(), s["rows"].get<int>());
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Set-valued state estimation with constrained convex generators"};
    app.require_subcommand(1);

    std::string config;
    std::string out = "out";
    std::uint64_t seed = 0;
    int gamma = 0;
    std::string mode;
    std::string reduction;
    int snapshot_every = 40;
    int steps = 0;
    int K = 0;
    bool svg = false;

    const auto add_run_flags = [&](CLI::App* cmd, bool with_mode) {
        cmd->add_option("--config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out, "Output directory");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--gamma", gamma, "Reduction order")->check(CLI::PositiveNumber);
        if (with_mode)
            cmd->add_option("--mode", mode, "Filter mode")->check(CLI::IsMember({"ccg", "cz"}));
        cmd->add_option("--reduction", reduction, "Reduction mode")->check(CLI::IsMember({"guaranteed", "paper"}));
        cmd->add_option("--snapshot-every", snapshot_every, "Snapshot period in steps (0 disables)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--steps", steps, "Override number of steps")->check(CLI::NonNegativeNumber);
        cmd->add_option("-K,--directions", K, "Directions for the outer polygon")->check(CLI::NonNegativeNumber);
        cmd->add_flag("--svg", svg, "Write SVG plots");
    };

    CLI::App* run = app.add_subcommand("run", "Run one scenario");
    add_run_flags(run, true);
    CLI::App* compare = app.add_subcommand("compare", "Run CCG and CZ filters on the same seed");
    add_run_flags(compare, false);

    std::string set_a, set_b, set_in;
    int demo_K = 64;
    std::uint64_t demo_seed = 1;
    int demo_gamma = 10;
    std::string demo_reduction = "guaranteed";

    CLI::App* hull = app.add_subcommand("hull-demo", "Exact hull of two set files");
    hull->add_option("--a", set_a, "First set (JSON)")->required()->check(CLI::ExistingFile);
    hull->add_option("--b", set_b, "Second set (JSON)")->required()->check(CLI::ExistingFile);
    hull->add_option("--out", out, "Output directory");
    hull->add_option("-K,--directions", demo_K, "Directions for outer polygons")->check(CLI::PositiveNumber);
    hull->add_flag("--svg", svg, "Write SVG plot");

    CLI::App* reduce = app.add_subcommand("reduce-demo", "Order reduction of a set file");
    reduce->add_option("--set", set_in, "Input set (JSON)")->required()->check(CLI::ExistingFile);
    reduce->add_option("--out", out, "Output directory");
    reduce->add_option("--gamma", demo_gamma, "Reduction order")->check(CLI::PositiveNumber)->capture_default_str();
    reduce->add_option("--seed", demo_seed, "Direction seed")->capture_default_str();
    reduce->add_option("--reduction", demo_reduction, "Reduction mode")
        ->check(CLI::IsMember({"guaranteed", "paper"}))
        ->capture_default_str();
    reduce->add_option("-K,--directions", demo_K, "Directions for outer polygons")->check(CLI::PositiveNumber);
    reduce->add_flag("--svg", svg, "Write SVG plot");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const auto overrides = [&](CLI::App* cmd) {
        ccg::RunOverrides o;
        if (cmd->count("--seed"))
            o.seed = seed;
        if (cmd->count("--gamma"))
            o.gamma = gamma;
        if (!mode.empty())
            o.mode = *ccg::parse_filter_mode(mode);
        if (!reduction.empty())
            o.reduction = *ccg::parse_reduction_mode(reduction);
        if (cmd->count("--snapshot-every"))
            o.snapshot_every = snapshot_every;
        if (cmd->count("--steps"))
            o.steps = steps;
        if (cmd->count("--directions"))
            o.directions_K = K;
        o.svg = svg;
        return o;
    };

    try
    {
        if (*run)
        {
            const auto rep = ccg::cmd_run(std::filesystem::path(config), out, overrides(run));
            print_summary(std::string(ccg::to_string(rep.config.filter_mode)).c_str(), rep);
            return run_exit_code(rep);
        }
        if (*compare)
        {
            const auto rep = ccg::cmd_compare(std::filesystem::path(config), out, overrides(compare));
            print_summary("ccg", rep.ccg);
            print_summary("cz", rep.cz);
            std::printf("volume_ccg <= volume_cz at every step: %s\n", rep.dominated ? "yes" : "no");
            const int a = run_exit_code(rep.ccg);
            return a != kOk ? a : run_exit_code(rep.cz);
        }
        if (*hull)
        {
            const auto rep = ccg::cmd_hull_demo(set_a, set_b, out, demo_K, svg);
            std::printf("hull: n_g=%d n_c=%d support residual max=%.3e\n", rep["counts"]["hull"]["n_g"].get<int>(),
                        rep["counts"]["hull"]["n_c"].get<int>(), rep["support_residual_max"].get<double>());
            return kOk;
        }
        if (*reduce)
        {
            ccg::ReductionSpec spec;
            spec.gamma = demo_gamma;
            spec.seed = demo_seed;
            spec.mode = *ccg::parse_reduction_mode(demo_reduction);
            const auto rep = ccg::cmd_reduce_demo(set_in, out, spec, demo_K, svg);
            std::printf("reduced: n_g=%d n_c=%d dominance min slack=%.3e\n", rep["reduced"]["n_g"].get<int>(),
                        rep["reduced"]["n_c"].get<int>(), rep["dominance_min_slack"].get<double>());
            return kOk;
        }
    }
    catch (const ccg::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}
