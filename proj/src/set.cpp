#include "ccg/set.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ccg
{
    std::string_view to_string(BlockKind kind)
    {
        switch (kind)
        {
        case BlockKind::NormBall:
            return "NormBall";
        case BlockKind::NormCone:
            return "NormCone";
        case BlockKind::Free:
            return "Free";
        case BlockKind::Nonneg:
            return "Nonneg";
        }
        return "?";
    }

    std::string_view to_string(NormOrder p)
    {
        switch (p)
        {
        case NormOrder::One:
            return "1";
        case NormOrder::Two:
            return "2";
        case NormOrder::Inf:
            return "inf";
        }
        return "?";
    }

    std::string_view to_string(SetClassTag tag)
    {
        switch (tag)
        {
        case SetClassTag::Interval:
            return "Interval";
        case SetClassTag::Zonotope:
            return "Zonotope";
        case SetClassTag::Ellipsoid:
            return "Ellipsoid";
        case SetClassTag::ConstrainedZonotope:
            return "ConstrainedZonotope";
        case SetClassTag::Cone:
            return "Cone";
        case SetClassTag::General:
            return "General";
        }
        return "?";
    }

    ConstraintBlock ConstraintBlock::norm_ball(NormOrder p, std::vector<int> xi)
    {
        ConstraintBlock blk;
        blk.kind = BlockKind::NormBall;
        blk.p = p;
        blk.xi = std::move(xi);
        blk.v = 1.0;
        return blk;
    }

    ConstraintBlock ConstraintBlock::norm_cone(NormOrder p, std::vector<int> xi, std::vector<int> lambda,
                                               std::vector<double> w, double v)
    {
        ConstraintBlock blk;
        blk.kind = BlockKind::NormCone;
        blk.p = p;
        blk.xi = std::move(xi);
        blk.lambda = std::move(lambda);
        blk.w = std::move(w);
        blk.v = v;
        return blk;
    }

    ConstraintBlock ConstraintBlock::unconstrained(std::vector<int> xi)
    {
        ConstraintBlock blk;
        blk.kind = BlockKind::Free;
        blk.xi = std::move(xi);
        return blk;
    }

    ConstraintBlock ConstraintBlock::nonneg(std::vector<int> xi)
    {
        ConstraintBlock blk;
        blk.kind = BlockKind::Nonneg;
        blk.xi = std::move(xi);
        return blk;
    }

    ConstraintBlock ConstraintBlock::shifted(int offset) const
    {
        ConstraintBlock out = *this;
        for (int& i : out.xi)
            i += offset;
        for (int& i : out.lambda)
            i += offset;
        return out;
    }

    ConvexSetCCG::ConvexSetCCG(Matrix G, Vector c, Matrix A, Vector b, std::vector<ConstraintBlock> blocks,
                               SetClassTag tag)
        : G_(std::move(G)), c_(std::move(c)), A_(std::move(A)), b_(std::move(b)), blocks_(std::move(blocks)),
          tag_(tag)
    {
        // an empty A keeps the generator count so that shapes stay consistent
        if (A_.rows() == 0 && A_.cols() != G_.cols())
            A_.resize(0, G_.cols());
    }

    ConvexSetCCG ConvexSetCCG::singleton(const Vector& c)
    {
        return ConvexSetCCG(Matrix(c.size(), 0), c, Matrix(0, 0), Vector(0), {}, SetClassTag::Zonotope);
    }

    bool ConvexSetCCG::has_cone_blocks() const
    {
        return std::any_of(blocks_.begin(), blocks_.end(),
                           [](const ConstraintBlock& blk) { return blk.kind == BlockKind::NormCone; });
    }

    std::vector<std::string> validate(const ConvexSetCCG& Z)
    {
        std::vector<std::string> out;
        const auto ng = Z.num_generators();

        if (Z.G().rows() != Z.dim())
        {
            std::ostringstream os;
            os << "dimension mismatch: G has " << Z.G().rows() << " rows but c has length " << Z.dim();
            out.push_back(os.str());
        }
        if (Z.A().cols() != ng)
        {
            std::ostringstream os;
            os << "dimension mismatch: A has " << Z.A().cols() << " columns but G has " << ng;
            out.push_back(os.str());
        }
        if (Z.A().rows() != Z.b().size())
        {
            std::ostringstream os;
            os << "dimension mismatch: A has " << Z.A().rows() << " rows but b has length " << Z.b().size();
            out.push_back(os.str());
        }

        std::vector<int> owner(static_cast<std::size_t>(std::max<Index>(ng, 0)), -1);
        for (std::size_t k = 0; k < Z.blocks().size(); ++k)
        {
            const auto& blk = Z.blocks()[k];
            const std::string where = "block " + std::to_string(k) + " (" + std::string(to_string(blk.kind)) + ")";

            std::set<int> seen_xi;
            for (int i : blk.xi)
            {
                if (i < 0 || i >= ng)
                {
                    out.push_back(where + ": xi index " + std::to_string(i) + " out of range");
                    continue;
                }
                if (!seen_xi.insert(i).second)
                {
                    out.push_back(where + ": duplicate xi index " + std::to_string(i));
                    continue;
                }
                if (owner[static_cast<std::size_t>(i)] >= 0)
                    out.push_back(where + ": xi index " + std::to_string(i) + " already owned by block " +
                                  std::to_string(owner[static_cast<std::size_t>(i)]));
                else
                    owner[static_cast<std::size_t>(i)] = static_cast<int>(k);
            }

            std::set<int> seen_lambda;
            for (int i : blk.lambda)
            {
                if (i < 0 || i >= ng)
                    out.push_back(where + ": lambda index " + std::to_string(i) + " out of range");
                else if (!seen_lambda.insert(i).second)
                    out.push_back(where + ": duplicate lambda index " + std::to_string(i));
                else if (seen_xi.count(i))
                    out.push_back(where + ": index " + std::to_string(i) + " is both xi and lambda");
            }

            switch (blk.kind)
            {
            case BlockKind::NormBall:
                if (!blk.lambda.empty() || !blk.w.empty())
                    out.push_back(where + ": norm ball must not carry lambda terms");
                if (blk.v != 1.0)
                    out.push_back(where + ": norm ball must have v = 1");
                break;
            case BlockKind::NormCone:
                if (blk.lambda.size() != blk.w.size())
                    out.push_back(where + ": lambda and w lengths differ");
                if (!(blk.v >= 0.0))
                    out.push_back(where + ": nonnegativity violated, v = " + std::to_string(blk.v));
                break;
            case BlockKind::Free:
            case BlockKind::Nonneg:
                if (!blk.lambda.empty() || !blk.w.empty())
                    out.push_back(where + ": only norm cones may carry lambda terms");
                break;
            }
        }

        for (Index i = 0; i < ng; ++i)
        {
            if (owner[static_cast<std::size_t>(i)] < 0)
                out.push_back("generator " + std::to_string(i) + " is not constrained by any block");
        }

        // λ references must point at Free coordinates
        for (std::size_t k = 0; k < Z.blocks().size(); ++k)
        {
            for (int i : Z.blocks()[k].lambda)
            {
                if (i < 0 || i >= ng)
                    continue;
                const int o = owner[static_cast<std::size_t>(i)];
                if (o >= 0 && Z.blocks()[static_cast<std::size_t>(o)].kind != BlockKind::Free)
                    out.push_back("block " + std::to_string(k) + ": lambda index " + std::to_string(i) +
                                  " belongs to a non-Free block");
            }
        }
        return out;
    }

    void require_valid(const ConvexSetCCG& Z, std::string_view context)
    {
        const auto violations = validate(Z);
        if (violations.empty())
            return;
        std::string msg(context);
        msg += ": invalid set:";
        for (const auto& v : violations)
        {
            msg += " ";
            msg += v;
            msg += ";";
        }
        throw std::invalid_argument(msg);
    }

    namespace
    {
        SetClassTag polytope_join(SetClassTag a, SetClassTag b)
        {
            const auto boxlike = [](SetClassTag t) {
                return t == SetClassTag::Interval || t == SetClassTag::Zonotope;
            };
            if (boxlike(a) && boxlike(b))
                return SetClassTag::Zonotope;
            const auto polytope = [&](SetClassTag t) { return boxlike(t) || t == SetClassTag::ConstrainedZonotope; };
            if (polytope(a) && polytope(b))
                return SetClassTag::ConstrainedZonotope;
            return SetClassTag::General;
        }

        Matrix block_diag(const Matrix& X, const Matrix& Y)
        {
            Matrix out = Matrix::Zero(X.rows() + Y.rows(), X.cols() + Y.cols());
            out.topLeftCorner(X.rows(), X.cols()) = X;
            out.bottomRightCorner(Y.rows(), Y.cols()) = Y;
            return out;
        }

        Vector stack(const Vector& x, const Vector& y)
        {
            Vector out(x.size() + y.size());
            out << x, y;
            return out;
        }

        std::vector<ConstraintBlock> concat_blocks(const ConvexSetCCG& Z, const ConvexSetCCG& W)
        {
            std::vector<ConstraintBlock> blocks = Z.blocks();
            const int offset = static_cast<int>(Z.num_generators());
            for (const auto& blk : W.blocks())
                blocks.push_back(blk.shifted(offset));
            return blocks;
        }

        std::vector<int> iota_indices(Index n)
        {
            std::vector<int> idx(static_cast<std::size_t>(n));
            for (Index i = 0; i < n; ++i)
                idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
            return idx;
        }
    }

    ConvexSetCCG linear_map(const Matrix& R, const Vector& t, const ConvexSetCCG& Z)
    {
        if (R.cols() != Z.dim() || R.rows() != t.size())
            throw std::invalid_argument("linear_map: invalid input dimensions");
        SetClassTag tag = Z.tag();
        if (tag == SetClassTag::Interval)
            tag = SetClassTag::Zonotope;
        else if (tag == SetClassTag::Ellipsoid && R.rows() != R.cols())
            tag = SetClassTag::General;
        return ConvexSetCCG(R * Z.G(), R * Z.c() + t, Z.A(), Z.b(), Z.blocks(), tag);
    }

    ConvexSetCCG linear_map(const Matrix& R, const ConvexSetCCG& Z)
    {
        return linear_map(R, Vector::Zero(R.rows()), Z);
    }

    ConvexSetCCG translate(const ConvexSetCCG& Z, const Vector& t)
    {
        if (t.size() != Z.dim())
            throw std::invalid_argument("translate: invalid input dimensions");
        return ConvexSetCCG(Z.G(), Z.c() + t, Z.A(), Z.b(), Z.blocks(), Z.tag());
    }

    ConvexSetCCG minkowski_sum(const ConvexSetCCG& Z, const ConvexSetCCG& W)
    {
        if (Z.dim() != W.dim())
            throw std::invalid_argument("minkowski_sum: n dimensions must match");
        Matrix G(Z.dim(), Z.num_generators() + W.num_generators());
        G << Z.G(), W.G();
        return ConvexSetCCG(std::move(G), Z.c() + W.c(), block_diag(Z.A(), W.A()), stack(Z.b(), W.b()),
                            concat_blocks(Z, W), polytope_join(Z.tag(), W.tag()));
    }

    ConvexSetCCG intersection_under_map(const ConvexSetCCG& Z, const Matrix& R, const ConvexSetCCG& Y)
    {
        if (R.cols() != Z.dim() || R.rows() != Y.dim())
            throw std::invalid_argument("intersection_under_map: invalid input dimensions");

        const Index ngz = Z.num_generators();
        const Index ngy = Y.num_generators();
        const Index ncz = Z.num_constraints();
        const Index ncy = Y.num_constraints();

        Matrix G = Matrix::Zero(Z.dim(), ngz + ngy);
        G.leftCols(ngz) = Z.G();

        Matrix A = Matrix::Zero(ncz + ncy + R.rows(), ngz + ngy);
        A.topLeftCorner(ncz, ngz) = Z.A();
        A.block(ncz, ngz, ncy, ngy) = Y.A();
        A.block(ncz + ncy, 0, R.rows(), ngz) = R * Z.G();
        A.block(ncz + ncy, ngz, R.rows(), ngy) = -Y.G();

        Vector b(ncz + ncy + R.rows());
        b << Z.b(), Y.b(), Y.c() - R * Z.c();

        return ConvexSetCCG(std::move(G), Z.c(), std::move(A), std::move(b), concat_blocks(Z, Y),
                            polytope_join(Z.tag(), Y.tag()) == SetClassTag::General
                                ? SetClassTag::General
                                : SetClassTag::ConstrainedZonotope);
    }

    ConvexSetCCG from_interval(const Vector& lo, const Vector& hi)
    {
        if (lo.size() != hi.size())
            throw std::invalid_argument("from_interval: bound lengths differ");
        if ((lo.array() > hi.array()).any())
            throw std::invalid_argument("from_interval: lower bound exceeds upper bound");
        Matrix G = ((hi - lo) / 2.0).asDiagonal();
        return ConvexSetCCG(std::move(G), (hi + lo) / 2.0, Matrix(0, lo.size()), Vector(0),
                            {ConstraintBlock::norm_ball(NormOrder::Inf, iota_indices(lo.size()))},
                            SetClassTag::Interval);
    }

    ConvexSetCCG from_zonotope(const Matrix& G, const Vector& c)
    {
        if (G.rows() != c.size())
            throw std::invalid_argument("from_zonotope: G rows must match c");
        return ConvexSetCCG(G, c, Matrix(0, G.cols()), Vector(0),
                            {ConstraintBlock::norm_ball(NormOrder::Inf, iota_indices(G.cols()))},
                            SetClassTag::Zonotope);
    }

    ConvexSetCCG from_ellipsoid(const Matrix& G, const Vector& c)
    {
        if (G.rows() != G.cols())
            throw std::invalid_argument("from_ellipsoid: G must be square");
        if (G.rows() != c.size())
            throw std::invalid_argument("from_ellipsoid: G rows must match c");
        return ConvexSetCCG(G, c, Matrix(0, G.cols()), Vector(0),
                            {ConstraintBlock::norm_ball(NormOrder::Two, iota_indices(G.cols()))},
                            SetClassTag::Ellipsoid);
    }

    ConvexSetCCG from_constrained_zonotope(const Matrix& G, const Vector& c, const Matrix& A, const Vector& b)
    {
        if (G.rows() != c.size() || A.cols() != G.cols() || A.rows() != b.size())
            throw std::invalid_argument("from_constrained_zonotope: invalid input dimensions");
        return ConvexSetCCG(G, c, A, b, {ConstraintBlock::norm_ball(NormOrder::Inf, iota_indices(G.cols()))},
                            SetClassTag::ConstrainedZonotope);
    }

    ConvexSetCCG relax_to_box_blocks(const ConvexSetCCG& Z)
    {
        std::vector<ConstraintBlock> blocks;
        blocks.reserve(Z.blocks().size());
        for (const auto& blk : Z.blocks())
        {
            if (blk.kind == BlockKind::NormCone)
                throw std::invalid_argument("relax_to_box_blocks: lifted norm cones cannot be relaxed");
            ConstraintBlock out = blk;
            if (out.kind == BlockKind::NormBall)
                out.p = NormOrder::Inf;
            blocks.push_back(std::move(out));
        }
        SetClassTag tag = Z.tag();
        if (tag == SetClassTag::Ellipsoid)
            tag = SetClassTag::Zonotope;
        else if (tag == SetClassTag::General)
            tag = Z.num_constraints() == 0 ? SetClassTag::Zonotope : SetClassTag::ConstrainedZonotope;
        return ConvexSetCCG(Z.G(), Z.c(), Z.A(), Z.b(), std::move(blocks), tag);
    }
}
