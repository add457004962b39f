#ifndef CCG_SET_HPP_
#define CCG_SET_HPP_

/**
 * @file set.hpp
 * @brief Constrained convex generator sets and their closed-form operations.
 *
 * A set is Z = {G ξ + c : A ξ = b, ξ satisfies every constraint block}.
 * Blocks address generator coordinates by index instead of by position in a
 * Cartesian product, so that the λ coordinate introduced by a convex hull can
 * be shared by the lifted cones of both operands.
 */

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace ccg
{
    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;
    using Index = Eigen::Index;

    enum class BlockKind
    {
        NormBall,
        NormCone,
        Free,
        Nonneg
    };

    enum class NormOrder
    {
        One,
        Two,
        Inf
    };

    std::string_view to_string(BlockKind kind);
    std::string_view to_string(NormOrder p);

    /**
     * One factor of the generator domain.
     *
     *  NormBall:  ‖ξ_S‖_p ≤ 1                      (v = 1, no λ terms)
     *  NormCone:  ‖ξ_S‖_p + Σ_j w_j ξ_{λ_j} ≤ v     (v ≥ 0)
     *  Free:      ξ_S unconstrained
     *  Nonneg:    ξ_S ≥ 0
     *
     * `lambda` is ordered oldest-lift-first.
     */
    struct ConstraintBlock
    {
        BlockKind kind = BlockKind::Free;
        NormOrder p = NormOrder::Inf;
        std::vector<int> xi;
        std::vector<int> lambda;
        std::vector<double> w;
        double v = 1.0;

        static ConstraintBlock norm_ball(NormOrder p, std::vector<int> xi);
        static ConstraintBlock norm_cone(NormOrder p, std::vector<int> xi, std::vector<int> lambda,
                                         std::vector<double> w, double v);
        static ConstraintBlock unconstrained(std::vector<int> xi);
        static ConstraintBlock nonneg(std::vector<int> xi);

        bool is_norm() const { return kind == BlockKind::NormBall || kind == BlockKind::NormCone; }

        /// Copy with every coordinate index shifted by `offset`.
        ConstraintBlock shifted(int offset) const;

        bool operator==(const ConstraintBlock&) const = default;
    };

    /// Advisory label; never affects semantics.
    enum class SetClassTag
    {
        Interval,
        Zonotope,
        Ellipsoid,
        ConstrainedZonotope,
        Cone,
        General
    };

    std::string_view to_string(SetClassTag tag);

    class ConvexSetCCG
    {
    public:
        /// The zero-dimensional point.
        ConvexSetCCG() : ConvexSetCCG(Matrix(0, 0), Vector(0), Matrix(0, 0), Vector(0), {}) {}

        ConvexSetCCG(Matrix G, Vector c, Matrix A, Vector b, std::vector<ConstraintBlock> blocks,
                     SetClassTag tag = SetClassTag::General);

        /// {c}: no generators, no constraints.
        static ConvexSetCCG singleton(const Vector& c);

        const Matrix& G() const { return G_; }
        const Vector& c() const { return c_; }
        const Matrix& A() const { return A_; }
        const Vector& b() const { return b_; }
        const std::vector<ConstraintBlock>& blocks() const { return blocks_; }
        SetClassTag tag() const { return tag_; }

        Index dim() const { return c_.size(); }
        Index num_generators() const { return G_.cols(); }
        Index num_constraints() const { return A_.rows(); }

        bool has_cone_blocks() const;

    private:
        Matrix G_;
        Vector c_;
        Matrix A_;
        Vector b_;
        std::vector<ConstraintBlock> blocks_;
        SetClassTag tag_;
    };

    /// Empty iff every structural invariant holds.
    std::vector<std::string> validate(const ConvexSetCCG& Z);

    /// Throws std::invalid_argument listing the violations, prefixed by `context`.
    void require_valid(const ConvexSetCCG& Z, std::string_view context);

    // Definition-level set operations. All throw std::invalid_argument on
    // dimension mismatch.

    /// R Z + t
    ConvexSetCCG linear_map(const Matrix& R, const Vector& t, const ConvexSetCCG& Z);
    ConvexSetCCG linear_map(const Matrix& R, const ConvexSetCCG& Z);
    ConvexSetCCG translate(const ConvexSetCCG& Z, const Vector& t);

    ConvexSetCCG minkowski_sum(const ConvexSetCCG& Z, const ConvexSetCCG& W);

    /// {z ∈ Z : R z ∈ Y}. May be empty; emptiness is a solver query.
    ConvexSetCCG intersection_under_map(const ConvexSetCCG& Z, const Matrix& R, const ConvexSetCCG& Y);

    // Conversions from simpler classes.
    ConvexSetCCG from_interval(const Vector& lo, const Vector& hi);
    ConvexSetCCG from_zonotope(const Matrix& G, const Vector& c);
    ConvexSetCCG from_ellipsoid(const Matrix& G, const Vector& c);
    ConvexSetCCG from_constrained_zonotope(const Matrix& G, const Vector& c, const Matrix& A, const Vector& b);

    /// Replaces every ℓ1/ℓ2 ball by the ℓ∞ ball over the same coordinates
    /// (a superset). Rejects sets carrying lifted cones.
    ConvexSetCCG relax_to_box_blocks(const ConvexSetCCG& Z);
}

#endif
