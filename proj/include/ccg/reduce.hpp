#ifndef CCG_REDUCE_HPP_
#define CCG_REDUCE_HPP_

#include "ccg/conic.hpp"
#include "ccg/set.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace ccg
{
    enum class ReductionMode
    {
        /// Support bounds in both directions and an outer axis box; the
        /// result always contains the input.
        Guaranteed,
        /// Box of the sampled points and σ from the sampled support values.
        /// Not necessarily a superset.
        PaperFaithful
    };

    std::string_view to_string(ReductionMode mode);
    std::optional<ReductionMode> parse_reduction_mode(std::string_view s);

    struct ReductionSpec
    {
        int gamma = 10;
        ReductionMode mode = ReductionMode::Guaranteed;
        std::uint64_t seed = 0;
    };

    /// n × γ unit directions: ±e_j for the first min(γ, 2n), then normalized
    /// Gaussian draws from a generator seeded with spec.seed.
    Matrix reduction_directions(Index n, const ReductionSpec& spec);

    /**
     * Polytope of order γ: G = [G̃ 0], c = c̃, A = [VᵀG̃, ½ diag(σ − b)],
     * b' = (b + σ)/2 − Vᵀc̃, one ℓ∞ ball over all γ + n generators, encoding
     * {x ∈ box : σ ≤ Vᵀx ≤ b}. Randomly drawn directions whose solve fails are
     * replaced (up to three times). Throws std::runtime_error if Z is empty or
     * unbounded.
     */
    ConvexSetCCG reduce_to_order(const ConvexSetCCG& Z, const ReductionSpec& spec,
                                 const ConicSolver& solver = default_solver());

    /// Same construction with caller-supplied directions (no retries).
    ConvexSetCCG reduce_with_directions(const ConvexSetCCG& Z, const Matrix& V, ReductionMode mode,
                                        const ConicSolver& solver = default_solver());
}

#endif
