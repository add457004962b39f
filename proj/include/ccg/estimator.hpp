#ifndef CCG_ESTIMATOR_HPP_
#define CCG_ESTIMATOR_HPP_

#include "ccg/conic.hpp"
#include "ccg/reduce.hpp"
#include "ccg/set.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccg
{
    /// x⁺ = (F + Σ Δ_ℓ U_ℓ) x + B u + L d,  y = C x + N w,  |Δ_ℓ| ≤ 1.
    struct UncertainStepModel
    {
        Matrix F;
        std::vector<Matrix> U;
        Matrix B;
        Matrix L;
        Matrix C;
        Matrix N;
    };

    struct VertexAffineMap
    {
        Matrix F;
        Vector t;
    };

    inline constexpr int kDefaultVertexCap = 8;

    /// All 2^{n_Δ} maps F + Σ s_ℓ U_ℓ, s ∈ {−1, +1}^{n_Δ}, with zero offset.
    std::vector<VertexAffineMap> enumerate_vertices(const UncertainStepModel& model, int cap = kDefaultVertexCap);

    /// hull{F_v X + t_v} + Bu ⊕ L D
    ConvexSetCCG propagate(const ConvexSetCCG& X, const std::vector<VertexAffineMap>& vertices, const Vector& Bu,
                           const Matrix& L, const ConvexSetCCG& D);

    /// {y} ⊕ (−N) W: outputs consistent with y under noise in W.
    ConvexSetCCG build_output_set(const Vector& y, const Matrix& N, const ConvexSetCCG& W);

    /// X_prop ∩_C Y_set
    ConvexSetCCG update(const ConvexSetCCG& X_prop, const Matrix& C, const ConvexSetCCG& Y_set);

    enum class FilterMode
    {
        CCG,
        /// every set entering the filter has its ℓ1/ℓ2 balls replaced by ℓ∞
        CZRelaxed
    };

    std::string_view to_string(FilterMode mode);
    std::optional<FilterMode> parse_filter_mode(std::string_view s);

    struct FilterState
    {
        ConvexSetCCG X;
        int k = 0;
        /// Applied after the update each step, with seed mixed with k.
        std::optional<ReductionSpec> reduction;
        FilterMode mode = FilterMode::CCG;
    };

    /// Starting state; relaxes X0 in CZRelaxed mode.
    FilterState make_filter(const ConvexSetCCG& X0, std::optional<ReductionSpec> reduction, FilterMode mode);

    struct Measurement
    {
        Matrix C;
        ConvexSetCCG Y;
    };

    struct StepInput
    {
        std::vector<VertexAffineMap> vertices;
        Vector Bu;
        Matrix L;
        ConvexSetCCG D;
        std::vector<Measurement> measurements;
        bool beacon_active = false;
    };

    struct StepOptions
    {
        /// Directions for volume_2d; 0 disables the volume (logged as NaN).
        int volume_directions = 64;
        /// True state at k + 1, for the containment flag.
        std::optional<Vector> truth;
    };

    struct StepLog
    {
        int k = 0;
        double volume = 0.0;
        double step_ms = 0.0;
        int n_g_pre = 0;
        int n_g_post = 0;
        int n_c_post = 0;
        std::optional<bool> contained;
        bool beacon_active = false;
    };

    std::string csv_header();
    std::string csv_row(const StepLog& log);

    class EmptyEstimateError : public std::runtime_error
    {
    public:
        EmptyEstimateError(int k, const std::string& what) : std::runtime_error(what), k_(k) {}
        int step() const { return k_; }

    private:
        int k_;
    };

    struct StepResult
    {
        FilterState state;
        StepLog log;
    };

    /// propagate, fold the measurement updates in order, reduce.
    /// Throws EmptyEstimateError if an update empties the estimate.
    StepResult filter_step(const FilterState& fs, const StepInput& in, const StepOptions& opts = {},
                           const ConicSolver& solver = default_solver());
}

#endif
