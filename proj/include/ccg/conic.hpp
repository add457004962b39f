#ifndef CCG_CONIC_HPP_
#define CCG_CONIC_HPP_

/**
 * @file conic.hpp
 * @brief Compilation of set queries into conic programs and the solver
 * backend interface.
 *
 * A compiled query has the generator vector ξ as decision variables, the
 * set's equalities (plus any query-specific ones) and one norm-cone
 * membership per norm block:
 *
 *     ‖ξ_S‖_p ≤ v − wᵀξ_λ.
 *
 * The ℓ2 case is a native second-order cone. ℓ∞ and ℓ1 are expressed by the
 * standard linear reformulations; the lowering chosen for each cone is
 * recorded so callers can inspect the program size.
 */

#include "ccg/set.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ccg
{
    enum class Lowering
    {
        SecondOrderCone,  ///< (v − wᵀλ, ξ_S) ∈ Q^{|S|+1}
        LinearBox,        ///< −(v − wᵀλ) ≤ ξ_i ≤ v − wᵀλ for each i ∈ S
        LinearAuxiliary,  ///< |ξ_i| ≤ a_i, Σ a_i ≤ v − wᵀλ
        LinearBound       ///< S empty: 0 ≤ v − wᵀλ
    };

    struct ConeMembership
    {
        NormOrder p = NormOrder::Two;
        std::vector<int> xi;
        std::vector<int> lambda;
        std::vector<double> w;
        double v = 1.0;
        Lowering lowering = Lowering::SecondOrderCone;
    };

    enum class QueryGoal
    {
        /// minimize objectiveᵀξ + offset
        Minimize,
        /// minimize the uniform slack t that makes every cone and sign
        /// constraint feasible (t ≥ −1); the set is nonempty iff t* ≤ 0
        MinimizeUniformSlack
    };

    struct ConicQuery
    {
        int num_vars = 0;
        Vector objective;
        double objective_offset = 0.0;
        Matrix eq_matrix;
        Vector eq_rhs;
        std::vector<ConeMembership> cones;
        std::vector<int> nonneg;
        QueryGoal goal = QueryGoal::Minimize;

        int soc_count() const;
        /// Number of two-sided box constraints produced by ℓ∞ lowerings.
        int box_constraint_count() const;
        /// Auxiliary variables introduced by ℓ1 lowerings.
        int auxiliary_variable_count() const;
    };

    using LinearEqualities = std::pair<Matrix, Vector>;

    /// Throws std::invalid_argument if Z is invalid or the extra equalities
    /// do not have n_g columns.
    ConicQuery compile(const ConvexSetCCG& Z, const std::optional<LinearEqualities>& extra_eq,
                       const Vector& objective, QueryGoal goal = QueryGoal::Minimize);

    enum class SolveStatus
    {
        Optimal,
        Infeasible,
        Unbounded,
        NumericalTrouble
    };

    std::string_view to_string(SolveStatus status);

    struct SolveOutcome
    {
        SolveStatus status = SolveStatus::NumericalTrouble;
        /// Primal objective at the returned point.
        double value = 0.0;
        /// Dual objective; a lower bound on the minimum up to dual residual.
        double dual_bound = 0.0;
        /// ξ* (present iff status == Optimal).
        std::optional<Vector> point;
        /// ‖Eξ − f‖∞ for the equality system after least-squares reduction.
        double equality_residual = 0.0;
        int iterations = 0;
        double wall_ms = 0.0;
    };

    struct SolverSettings
    {
        /// Decision threshold for membership and emptiness verdicts.
        double feasibility_tol = 1e-7;
        /// Absolute duality-gap target.
        double gap_tol = 1e-8;
        /// Target for scaled primal and dual residuals.
        double residual_tol = 1e-8;
        int max_iterations = 100;

        /// Defaults, with CCG_FEAS_TOL overriding feasibility_tol.
        static SolverSettings from_env();
    };

    class ConicSolver
    {
    public:
        virtual ~ConicSolver() = default;
        virtual SolveOutcome solve(const ConicQuery& query) const = 0;
        virtual const SolverSettings& settings() const = 0;
    };

    /// Dense homogeneous self-dual interior-point method with Nesterov–Todd
    /// scaling and Mehrotra correction.
    class InteriorPointSolver final : public ConicSolver
    {
    public:
        InteriorPointSolver() = default;
        explicit InteriorPointSolver(SolverSettings settings) : settings_(settings) {}

        SolveOutcome solve(const ConicQuery& query) const override;
        const SolverSettings& settings() const override { return settings_; }

    private:
        SolverSettings settings_;
    };

    const ConicSolver& default_solver();
}

#endif
