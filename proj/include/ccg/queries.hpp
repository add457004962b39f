#ifndef CCG_QUERIES_HPP_
#define CCG_QUERIES_HPP_

#include "ccg/conic.hpp"
#include "ccg/rng.hpp"
#include "ccg/set.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ccg
{
    struct SupportResult
    {
        SolveStatus status = SolveStatus::NumericalTrouble;
        /// max uᵀx attained at `point` (+inf if unbounded).
        double value = 0.0;
        /// Certified upper bound from the dual; use for outer approximations.
        double upper_bound = 0.0;
        std::optional<Vector> point;

        bool ok() const { return status == SolveStatus::Optimal; }
        double conservative() const { return std::max(value, upper_bound); }
    };

    SupportResult support_function(const ConvexSetCCG& Z, const Vector& u,
                                   const ConicSolver& solver = default_solver());

    enum class Verdict
    {
        Yes,
        No,
        Indeterminate
    };

    struct Membership
    {
        Verdict verdict = Verdict::Indeterminate;
        /// Smallest uniform relaxation of the generator constraints that
        /// admits x (≤ 0 strictly inside), or the equality residual.
        double slack = 0.0;

        bool member() const { return verdict == Verdict::Yes; }
    };

    Membership contains_point(const ConvexSetCCG& Z, const Vector& x, const ConicSolver& solver = default_solver());

    /// Yes = empty.
    Verdict is_empty(const ConvexSetCCG& Z, const ConicSolver& solver = default_solver());

    struct SurfaceSample
    {
        Matrix V;  // unit directions, n × γ
        Matrix P;  // support points, n × γ
    };

    /// Uniform direction on the unit sphere.
    Vector random_unit_direction(Index n, Rng& rng);

    /// γ random directions; a direction whose solve fails is redrawn up to
    /// three times before giving up with std::runtime_error.
    SurfaceSample sample_surface(const ConvexSetCCG& Z, int gamma, Rng& rng,
                                 const ConicSolver& solver = default_solver());

    /// Fixed directions (columns of V, normalized); throws on any failure.
    SurfaceSample sample_surface(const ConvexSetCCG& Z, const Matrix& V,
                                 const ConicSolver& solver = default_solver());

    using Polygon = std::vector<Eigen::Vector2d>;

    /// Intersection of K supporting half-planes at angles 2πk/K, CCW.
    /// Throws std::invalid_argument for n ≠ 2 or K < 3, std::runtime_error for
    /// empty or unbounded sets.
    Polygon outer_polygon(const ConvexSetCCG& Z, int K, const ConicSolver& solver = default_solver());

    double polygon_area(const Polygon& poly);

    /// Outer area estimate (area of outer_polygon); 0 for an empty set.
    double volume_2d(const ConvexSetCCG& Z, int K, const ConicSolver& solver = default_solver());
}

#endif
