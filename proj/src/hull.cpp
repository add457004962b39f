#include "ccg/hull.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccg
{
    ConstraintBlock lift_block(const ConstraintBlock& blk, int new_lambda_index, LiftSide side)
    {
        if (!blk.is_norm())
            return blk;
        if (std::find(blk.lambda.begin(), blk.lambda.end(), new_lambda_index) != blk.lambda.end() ||
            std::find(blk.xi.begin(), blk.xi.end(), new_lambda_index) != blk.xi.end())
            throw std::invalid_argument("lift_block: lambda index already referenced by the block");

        ConstraintBlock out = blk;
        out.kind = BlockKind::NormCone;
        const double v = blk.kind == BlockKind::NormBall ? 1.0 : blk.v;
        out.lambda.push_back(new_lambda_index);
        out.w.push_back(side == LiftSide::First ? -v : v);
        out.v = 0.5 * v;
        return out;
    }

    namespace
    {
        // Norm-free operands need an explicit (empty) norm block to bound λ.
        std::vector<ConstraintBlock> hull_operand_blocks(const ConvexSetCCG& Z)
        {
            std::vector<ConstraintBlock> blocks = Z.blocks();
            const bool has_norm = std::any_of(blocks.begin(), blocks.end(),
                                              [](const ConstraintBlock& blk) { return blk.is_norm(); });
            if (!has_norm)
                blocks.push_back(ConstraintBlock::norm_ball(NormOrder::Inf, {}));
            return blocks;
        }
    }

    ConvexSetCCG convex_hull_pair(const ConvexSetCCG& X, const ConvexSetCCG& Y)
    {
        if (X.dim() != Y.dim())
            throw std::invalid_argument("convex_hull_pair: n dimensions must match");
        require_valid(X, "convex_hull_pair (first operand)");
        require_valid(Y, "convex_hull_pair (second operand)");

        const Index n = X.dim();
        const Index ngx = X.num_generators();
        const Index ngy = Y.num_generators();
        const Index ncx = X.num_constraints();
        const Index ncy = Y.num_constraints();
        const Index ng = ngx + ngy + 1;
        const int lambda = static_cast<int>(ngx + ngy);

        Matrix G(n, ng);
        G << X.G(), Y.G(), X.c() - Y.c();

        Matrix A = Matrix::Zero(ncx + ncy, ng);
        A.topLeftCorner(ncx, ngx) = X.A();
        A.block(0, lambda, ncx, 1) = -X.b();
        A.block(ncx, ngx, ncy, ngy) = Y.A();
        A.block(ncx, lambda, ncy, 1) = Y.b();

        Vector b(ncx + ncy);
        b << 0.5 * X.b(), 0.5 * Y.b();

        std::vector<ConstraintBlock> blocks;
        for (const auto& blk : hull_operand_blocks(X))
            blocks.push_back(lift_block(blk, lambda, LiftSide::First));
        for (const auto& blk : hull_operand_blocks(Y))
            blocks.push_back(lift_block(blk.shifted(static_cast<int>(ngx)), lambda, LiftSide::Second));
        blocks.push_back(ConstraintBlock::unconstrained({lambda}));

        return ConvexSetCCG(std::move(G), 0.5 * (X.c() + Y.c()), std::move(A), std::move(b), std::move(blocks),
                            SetClassTag::General);
    }

    ConvexSetCCG convex_hull_many(const std::vector<ConvexSetCCG>& sets)
    {
        if (sets.empty())
            throw std::invalid_argument("convex_hull_many: empty list");
        ConvexSetCCG acc = sets.front();
        for (std::size_t i = 1; i < sets.size(); ++i)
            acc = convex_hull_pair(acc, sets[i]);
        return acc;
    }
}
