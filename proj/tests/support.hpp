#ifndef CCG_TESTS_SUPPORT_HPP_
#define CCG_TESTS_SUPPORT_HPP_

// Random set generators and solver-free reference formulas shared by the
// test binaries.

#include "ccg/hull.hpp"
#include "ccg/queries.hpp"
#include "ccg/rng.hpp"
#include "ccg/set.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ccg::test
{
    inline Matrix random_matrix(Index rows, Index cols, Rng& rng, double scale = 1.0)
    {
        Matrix M(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                M(i, j) = scale * rng.normal();
        return M;
    }

    inline Vector random_vector(Index n, Rng& rng, double scale = 1.0)
    {
        return random_matrix(n, 1, rng, scale).col(0);
    }

    inline NormOrder random_order(Rng& rng)
    {
        const int k = static_cast<int>(rng.uniform(0.0, 3.0));
        return k == 0 ? NormOrder::One : k == 1 ? NormOrder::Two : NormOrder::Inf;
    }

    inline double dual_norm(const Vector& x, NormOrder p)
    {
        switch (p)
        {
        case NormOrder::One:
            return x.cwiseAbs().maxCoeff();
        case NormOrder::Two:
            return x.norm();
        case NormOrder::Inf:
            return x.cwiseAbs().sum();
        }
        return 0.0;
    }

    /// uᵀc + Σ_blocks ‖G_Sᵀu‖_dual for sets made only of norm balls and no
    /// equalities. Throws for anything else.
    inline double analytic_support(const ConvexSetCCG& Z, const Vector& u)
    {
        if (Z.num_constraints() != 0)
            throw std::invalid_argument("analytic_support: equalities present");
        double h = u.dot(Z.c());
        const Vector g = Z.G().transpose() * u;
        for (const auto& blk : Z.blocks())
        {
            if (blk.kind != BlockKind::NormBall)
                throw std::invalid_argument("analytic_support: only norm balls");
            Vector gs(static_cast<Index>(blk.xi.size()));
            for (std::size_t i = 0; i < blk.xi.size(); ++i)
                gs(static_cast<Index>(i)) = g(blk.xi[i]);
            h += dual_norm(gs, blk.p);
        }
        return h;
    }

    /// Point of the ℓp unit ball drawn roughly uniformly in radius.
    inline Vector point_in_ball(Index m, NormOrder p, Rng& rng, double radius)
    {
        Vector x = random_vector(m, rng);
        double nrm = 0.0;
        switch (p)
        {
        case NormOrder::One:
            nrm = x.lpNorm<1>();
            break;
        case NormOrder::Two:
            nrm = x.norm();
            break;
        case NormOrder::Inf:
            nrm = x.lpNorm<Eigen::Infinity>();
            break;
        }
        if (nrm == 0.0)
            return x;
        return x * (radius * rng.uniform(0.0, 1.0) / nrm);
    }

    enum class LeafKind
    {
        Ball,
        ProductOfBalls,
        ConstrainedZonotope,
        ConstrainedBall,
        Ellipsoid,
        Zonotope,
        Singleton
    };

    inline constexpr int kLeafKinds = 7;

    /// Random nonempty bounded leaf set in ℝⁿ.
    inline ConvexSetCCG random_leaf(Index n, LeafKind kind, Rng& rng)
    {
        const Vector c = random_vector(n, rng, 2.0);
        switch (kind)
        {
        case LeafKind::Ball:
        {
            const Index m = n + static_cast<Index>(rng.uniform(0.0, 3.0));
            return ConvexSetCCG(random_matrix(n, m, rng), c, Matrix(0, m), Vector(0),
                                {ConstraintBlock::norm_ball(random_order(rng), [m] {
                                    std::vector<int> xi;
                                    for (int i = 0; i < m; ++i)
                                        xi.push_back(i);
                                    return xi;
                                }())});
        }
        case LeafKind::ProductOfBalls:
        {
            const int m1 = 2;
            const int m2 = static_cast<int>(n);
            std::vector<int> s1, s2;
            for (int i = 0; i < m1; ++i)
                s1.push_back(i);
            for (int i = 0; i < m2; ++i)
                s2.push_back(m1 + i);
            return ConvexSetCCG(random_matrix(n, m1 + m2, rng), c, Matrix(0, m1 + m2), Vector(0),
                                {ConstraintBlock::norm_ball(random_order(rng), s1),
                                 ConstraintBlock::norm_ball(random_order(rng), s2)});
        }
        case LeafKind::ConstrainedZonotope:
        case LeafKind::ConstrainedBall:
        {
            const NormOrder p = kind == LeafKind::ConstrainedZonotope ? NormOrder::Inf : random_order(rng);
            const Index m = n + 2 + static_cast<Index>(rng.uniform(0.0, 3.0));
            const Index rows = 1 + static_cast<Index>(rng.uniform(0.0, 2.0));
            const Matrix A = random_matrix(rows, m, rng);
            const Vector b = A * point_in_ball(m, p, rng, 0.6);
            std::vector<int> xi;
            for (int i = 0; i < m; ++i)
                xi.push_back(i);
            return ConvexSetCCG(random_matrix(n, m, rng), c, A, b, {ConstraintBlock::norm_ball(p, xi)},
                                p == NormOrder::Inf ? SetClassTag::ConstrainedZonotope : SetClassTag::General);
        }
        case LeafKind::Ellipsoid:
            return from_ellipsoid(random_matrix(n, n, rng), c);
        case LeafKind::Zonotope:
            return from_zonotope(random_matrix(n, n + 2, rng, 0.7), c);
        case LeafKind::Singleton:
            return ConvexSetCCG::singleton(c);
        }
        throw std::logic_error("random_leaf");
    }

    inline ConvexSetCCG random_leaf(Index n, Rng& rng, bool allow_singleton = true)
    {
        const int kinds = allow_singleton ? kLeafKinds : kLeafKinds - 1;
        return random_leaf(n, static_cast<LeafKind>(static_cast<int>(rng.uniform(0.0, kinds))), rng);
    }

    /// Leaf, or a hull of random operands nested up to `depth` levels.
    inline ConvexSetCCG random_set(Index n, Rng& rng, int depth)
    {
        if (depth <= 0 || rng.uniform(0.0, 1.0) < 0.4)
            return random_leaf(n, rng);
        return convex_hull_pair(random_set(n, rng, depth - 1), random_set(n, rng, depth - 1));
    }

    /// Hull nested exactly `depth` levels on the left spine.
    inline ConvexSetCCG nested_hull(Index n, Rng& rng, int depth)
    {
        ConvexSetCCG Z = random_leaf(n, rng, false);
        for (int d = 0; d < depth; ++d)
            Z = convex_hull_pair(Z, random_leaf(n, rng));
        return Z;
    }

    /// Support point of Z in a random direction; throws on solver failure.
    inline Vector boundary_point(const ConvexSetCCG& Z, Rng& rng)
    {
        const auto r = support_function(Z, random_unit_direction(Z.dim(), rng));
        if (!r.ok() || !r.point)
            throw std::runtime_error("boundary_point: support failed");
        return *r.point;
    }

    /// Random point of Z: convex combination of a few boundary points.
    inline Vector member_point(const ConvexSetCCG& Z, Rng& rng, int pieces = 3)
    {
        Vector x = Vector::Zero(Z.dim());
        double total = 0.0;
        for (int i = 0; i < pieces; ++i)
        {
            const double w = rng.uniform(0.05, 1.0);
            x += w * boundary_point(Z, rng);
            total += w;
        }
        return x / total;
    }

    inline bool close(double a, double b, double tol)
    {
        return std::abs(a - b) <= tol * (1.0 + std::abs(b));
    }
}

#endif
