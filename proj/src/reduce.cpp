#include "ccg/reduce.hpp"

#include "ccg/queries.hpp"
#include "ccg/rng.hpp"

#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccg
{
    std::string_view to_string(ReductionMode mode)
    {
        return mode == ReductionMode::Guaranteed ? "guaranteed" : "paper";
    }

    std::optional<ReductionMode> parse_reduction_mode(std::string_view s)
    {
        if (s == "guaranteed" || s == "Guaranteed")
            return ReductionMode::Guaranteed;
        if (s == "paper" || s == "PaperFaithful" || s == "paper_faithful")
            return ReductionMode::PaperFaithful;
        return std::nullopt;
    }

    Matrix reduction_directions(Index n, const ReductionSpec& spec)
    {
        if (spec.gamma < 1)
            throw std::invalid_argument("reduction_directions: gamma must be >= 1");
        Matrix V(n, spec.gamma);
        Rng rng(spec.seed);
        for (Index i = 0; i < spec.gamma; ++i)
        {
            if (i < 2 * n)
            {
                V.col(i).setZero();
                V(i / 2, i) = (i % 2 == 0) ? 1.0 : -1.0;
            }
            else
                V.col(i) = random_unit_direction(n, rng);
        }
        return V;
    }

    namespace
    {
        // Support values keyed by direction; ± pairs and the axis box share solves.
        class SupportCache
        {
        public:
            SupportCache(const ConvexSetCCG& Z, const ConicSolver& solver) : Z_(Z), solver_(solver) {}

            const SupportResult& get(const Vector& u)
            {
                for (const auto& [dir, res] : entries_)
                    if (dir == u)
                        return res;
                entries_.emplace_back(u, support_function(Z_, u, solver_));
                return entries_.back().second;
            }

        private:
            const ConvexSetCCG& Z_;
            const ConicSolver& solver_;
            std::deque<std::pair<Vector, SupportResult>> entries_;  // stable references
        };

        [[noreturn]] void fail(const SupportResult& r)
        {
            if (r.status == SolveStatus::Infeasible)
                throw std::runtime_error("reduce_to_order: set is empty");
            if (r.status == SolveStatus::Unbounded)
                throw std::runtime_error("reduce_to_order: set is unbounded");
            throw std::runtime_error("reduce_to_order: support solve failed (" + std::string(to_string(r.status)) +
                                     ")");
        }

        ConvexSetCCG assemble(const Vector& lo, const Vector& hi, const Matrix& V, const Vector& b, const Vector& sigma)
        {
            const Index n = lo.size();
            const Index gamma = V.cols();
            const Vector cbox = 0.5 * (hi + lo);
            const Matrix Gbox = (0.5 * (hi - lo)).asDiagonal();

            Matrix G = Matrix::Zero(n, n + gamma);
            G.leftCols(n) = Gbox;
            Matrix A(gamma, n + gamma);
            A.leftCols(n) = V.transpose() * Gbox;
            A.rightCols(gamma) = (0.5 * (sigma - b)).asDiagonal();
            const Vector rhs = 0.5 * (b + sigma) - V.transpose() * cbox;

            std::vector<int> all(static_cast<std::size_t>(n + gamma));
            for (std::size_t i = 0; i < all.size(); ++i)
                all[i] = static_cast<int>(i);
            return ConvexSetCCG(std::move(G), cbox, std::move(A), rhs,
                                {ConstraintBlock::norm_ball(NormOrder::Inf, std::move(all))},
                                SetClassTag::ConstrainedZonotope);
        }

        // Shared driver. `redraw` supplies a replacement for a failed random
        // direction; null means directions are fixed.
        ConvexSetCCG reduce_impl(const ConvexSetCCG& Z, Matrix V, ReductionMode mode, const ConicSolver& solver,
                                 Rng* redraw)
        {
            constexpr int max_retries = 3;
            const Index n = Z.dim();
            const Index gamma = V.cols();
            SupportCache cache(Z, solver);

            const auto is_axis = [&](const Vector& v) {
                return (v.array() == 0.0).count() == n - 1 && (v.array().abs() == 1.0).count() == 1;
            };

            Vector b(gamma);
            Vector sigma(gamma);
            Matrix P(n, gamma);
            for (Index i = 0; i < gamma; ++i)
            {
                for (int attempt = 0;; ++attempt)
                {
                    const Vector v = V.col(i);
                    const SupportResult& up = cache.get(v);
                    bool ok = up.ok();
                    const SupportResult* dn = nullptr;
                    if (ok && mode == ReductionMode::Guaranteed)
                    {
                        dn = &cache.get(-v);
                        ok = dn->ok();
                    }
                    if (ok)
                    {
                        b(i) = mode == ReductionMode::Guaranteed ? up.conservative() : up.value;
                        if (dn)
                            sigma(i) = -dn->conservative();
                        P.col(i) = *up.point;
                        break;
                    }
                    const SupportResult& bad = up.ok() ? *dn : up;
                    if (bad.status == SolveStatus::Infeasible || bad.status == SolveStatus::Unbounded ||
                        redraw == nullptr || is_axis(v) || attempt == max_retries)
                        fail(bad);
                    V.col(i) = random_unit_direction(n, *redraw);
                }
            }

            Vector lo(n);
            Vector hi(n);
            if (mode == ReductionMode::Guaranteed)
            {
                for (Index j = 0; j < n; ++j)
                {
                    const Vector e = Vector::Unit(n, j);
                    const SupportResult& up = cache.get(e);
                    if (!up.ok())
                        fail(up);
                    const SupportResult& dn = cache.get(-e);
                    if (!dn.ok())
                        fail(dn);
                    hi(j) = up.conservative();
                    lo(j) = -dn.conservative();
                }
            }
            else
            {
                lo = P.rowwise().minCoeff();
                hi = P.rowwise().maxCoeff();
                const Matrix M = V.transpose() * P;
                b = M.diagonal();
                sigma = M.rowwise().minCoeff();
            }
            return assemble(lo, hi, V, b, sigma);
        }
    }

    ConvexSetCCG reduce_to_order(const ConvexSetCCG& Z, const ReductionSpec& spec, const ConicSolver& solver)
    {
        Rng redraw = Rng(spec.seed).split(0x7265);
        return reduce_impl(Z, reduction_directions(Z.dim(), spec), spec.mode, solver, &redraw);
    }

    ConvexSetCCG reduce_with_directions(const ConvexSetCCG& Z, const Matrix& V, ReductionMode mode,
                                        const ConicSolver& solver)
    {
        if (V.rows() != Z.dim() || V.cols() < 1)
            throw std::invalid_argument("reduce_with_directions: directions must be n x gamma with gamma >= 1");
        Matrix Vn = V;
        Vn.colwise().normalize();
        return reduce_impl(Z, Vn, mode, solver, nullptr);
    }
}
