#ifndef CCG_HULL_HPP_
#define CCG_HULL_HPP_

#include "ccg/set.hpp"

#include <vector>

namespace ccg
{
    /// Which operand of a hull a block belongs to. With λ = 0.5 + ξ_λ, the
    /// first operand is scaled by λ and the second by 1 − λ.
    enum class LiftSide
    {
        First,
        Second
    };

    /**
     * Re-expresses a block so that it describes the scaled factor λ·C
     * (First) or (1 − λ)·C (Second), with λ = 0.5 ± ξ_new.
     *
     * Norm constraints are homogeneous of degree one in all their generator
     * coordinates, so scaling only touches the right-hand side:
     *   ‖ξ_S‖ + wᵀξ_T ≤ v   becomes   ‖ξ_S‖ + wᵀξ_T ∓ v·ξ_new ≤ v/2.
     * A norm ball is the cone with v = 1 and no λ terms. Free and Nonneg
     * factors are invariant under nonnegative scaling and are returned as is.
     */
    ConstraintBlock lift_block(const ConstraintBlock& blk, int new_lambda_index, LiftSide side);

    /**
     * Exact convex hull of X ∪ Y:
     *   G = [G_x  G_y  c_x − c_y],  c = (c_x + c_y)/2,
     *   A = [A_x 0 −b_x; 0 A_y b_y],  b = [b_x/2; b_y/2],
     * X's blocks lifted with side First, Y's with side Second against the new
     * last coordinate ξ_λ, which gets its own Free block.
     *
     * An operand without any norm block (e.g. a singleton) receives an empty
     * ℓ∞ ball before lifting so that 0 ≤ λ ≤ 1 remains enforced.
     */
    ConvexSetCCG convex_hull_pair(const ConvexSetCCG& X, const ConvexSetCCG& Y);

    /// Left fold of convex_hull_pair; a single set is returned unchanged.
    ConvexSetCCG convex_hull_many(const std::vector<ConvexSetCCG>& sets);
}

#endif
