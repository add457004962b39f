#include "ccg/estimator.hpp"

#include "ccg/hull.hpp"
#include "ccg/queries.hpp"
#include "ccg/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ccg
{
    std::vector<VertexAffineMap> enumerate_vertices(const UncertainStepModel& model, int cap)
    {
        const int nd = static_cast<int>(model.U.size());
        if (nd > cap)
            throw std::invalid_argument("enumerate_vertices: " + std::to_string(nd) + " uncertainties exceed the cap of " +
                                        std::to_string(cap));
        for (const auto& U : model.U)
            if (U.rows() != model.F.rows() || U.cols() != model.F.cols())
                throw std::invalid_argument("enumerate_vertices: uncertainty direction has wrong shape");

        std::vector<VertexAffineMap> out;
        out.reserve(std::size_t{1} << nd);
        for (unsigned mask = 0; mask < (1u << nd); ++mask)
        {
            Matrix F = model.F;
            for (int l = 0; l < nd; ++l)
                F += ((mask >> l) & 1u ? 1.0 : -1.0) * model.U[static_cast<std::size_t>(l)];
            out.push_back({std::move(F), Vector::Zero(model.F.rows())});
        }
        return out;
    }

    ConvexSetCCG propagate(const ConvexSetCCG& X, const std::vector<VertexAffineMap>& vertices, const Vector& Bu,
                           const Matrix& L, const ConvexSetCCG& D)
    {
        if (vertices.empty())
            throw std::invalid_argument("propagate: no vertices");
        std::vector<ConvexSetCCG> images;
        images.reserve(vertices.size());
        for (const auto& v : vertices)
            images.push_back(linear_map(v.F, v.t, X));
        const ConvexSetCCG hull = translate(convex_hull_many(images), Bu);
        return minkowski_sum(hull, linear_map(L, D));
    }

    ConvexSetCCG build_output_set(const Vector& y, const Matrix& N, const ConvexSetCCG& W)
    {
        if (N.rows() != y.size())
            throw std::invalid_argument("build_output_set: N must have as many rows as y");
        return linear_map(-N, y, W);
    }

    ConvexSetCCG update(const ConvexSetCCG& X_prop, const Matrix& C, const ConvexSetCCG& Y_set)
    {
        return intersection_under_map(X_prop, C, Y_set);
    }

    std::string_view to_string(FilterMode mode)
    {
        return mode == FilterMode::CCG ? "ccg" : "cz";
    }

    std::optional<FilterMode> parse_filter_mode(std::string_view s)
    {
        if (s == "ccg" || s == "CCG")
            return FilterMode::CCG;
        if (s == "cz" || s == "CZ" || s == "CZRelaxed")
            return FilterMode::CZRelaxed;
        return std::nullopt;
    }

    FilterState make_filter(const ConvexSetCCG& X0, std::optional<ReductionSpec> reduction, FilterMode mode)
    {
        return FilterState{mode == FilterMode::CZRelaxed ? relax_to_box_blocks(X0) : X0, 0, reduction, mode};
    }

    std::string csv_header()
    {
        return "k,volume,step_ms,n_g_pre,n_g_post,n_c_post,contained,beacon_active";
    }

    std::string csv_row(const StepLog& log)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.6f,%d,%d,%d,%s,%d", log.k, log.volume, log.step_ms, log.n_g_pre,
                      log.n_g_post, log.n_c_post, log.contained ? (*log.contained ? "1" : "0") : "",
                      log.beacon_active ? 1 : 0);
        return buf;
    }

    StepResult filter_step(const FilterState& fs, const StepInput& in, const StepOptions& opts,
                           const ConicSolver& solver)
    {
        const bool relax = fs.mode == FilterMode::CZRelaxed;
        const auto t0 = std::chrono::steady_clock::now();

        ConvexSetCCG X = propagate(fs.X, in.vertices, in.Bu, in.L, relax ? relax_to_box_blocks(in.D) : in.D);
        for (const auto& m : in.measurements)
            X = update(X, m.C, relax ? relax_to_box_blocks(m.Y) : m.Y);
        if (!in.measurements.empty() && is_empty(X, solver) == Verdict::Yes)
            throw EmptyEstimateError(fs.k + 1, "filter_step: estimate became empty after the measurement update at k=" +
                                                   std::to_string(fs.k + 1) + " (noise bounds violated?)");

        StepLog log;
        log.k = fs.k + 1;
        log.beacon_active = in.beacon_active;
        log.n_g_pre = static_cast<int>(X.num_generators());
        if (fs.reduction)
        {
            ReductionSpec spec = *fs.reduction;
            spec.seed = mix_seed(spec.seed, static_cast<std::uint64_t>(fs.k + 1));
            X = reduce_to_order(X, spec, solver);
        }
        log.step_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        log.n_g_post = static_cast<int>(X.num_generators());
        log.n_c_post = static_cast<int>(X.num_constraints());

        log.volume = opts.volume_directions > 0 && X.dim() == 2 ? volume_2d(X, opts.volume_directions, solver)
                                                                 : std::numeric_limits<double>::quiet_NaN();
        if (opts.truth)
            log.contained = contains_point(X, *opts.truth, solver).member();

        return {FilterState{std::move(X), fs.k + 1, fs.reduction, fs.mode}, log};
    }
}
