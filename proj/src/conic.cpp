#include "ccg/conic.hpp"

#include "ipm.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ccg
{
    int ConicQuery::soc_count() const
    {
        int n = 0;
        for (const auto& cm : cones)
            n += cm.lowering == Lowering::SecondOrderCone ? 1 : 0;
        return n;
    }

    int ConicQuery::box_constraint_count() const
    {
        int n = 0;
        for (const auto& cm : cones)
            if (cm.lowering == Lowering::LinearBox)
                n += static_cast<int>(cm.xi.size());
        return n;
    }

    int ConicQuery::auxiliary_variable_count() const
    {
        int n = 0;
        for (const auto& cm : cones)
            if (cm.lowering == Lowering::LinearAuxiliary)
                n += static_cast<int>(cm.xi.size());
        return n;
    }

    ConicQuery compile(const ConvexSetCCG& Z, const std::optional<LinearEqualities>& extra_eq, const Vector& objective,
                       QueryGoal goal)
    {
        require_valid(Z, "compile");
        const Index ng = Z.num_generators();
        if (objective.size() != ng)
            throw std::invalid_argument("compile: objective has " + std::to_string(objective.size()) +
                                        " entries, expected " + std::to_string(ng));

        ConicQuery q;
        q.num_vars = static_cast<int>(ng);
        q.objective = objective;
        q.goal = goal;

        const Index extra_rows = extra_eq ? extra_eq->first.rows() : 0;
        if (extra_eq && (extra_eq->first.cols() != ng || extra_eq->second.size() != extra_rows))
            throw std::invalid_argument("compile: extra equalities must have n_g columns and matching rhs");
        q.eq_matrix.resize(Z.num_constraints() + extra_rows, ng);
        q.eq_rhs.resize(Z.num_constraints() + extra_rows);
        q.eq_matrix.topRows(Z.num_constraints()) = Z.A();
        q.eq_rhs.head(Z.num_constraints()) = Z.b();
        if (extra_eq)
        {
            q.eq_matrix.bottomRows(extra_rows) = extra_eq->first;
            q.eq_rhs.tail(extra_rows) = extra_eq->second;
        }

        for (const auto& blk : Z.blocks())
        {
            if (blk.kind == BlockKind::Nonneg)
            {
                q.nonneg.insert(q.nonneg.end(), blk.xi.begin(), blk.xi.end());
                continue;
            }
            if (!blk.is_norm())
                continue;
            ConeMembership cm;
            cm.p = blk.p;
            cm.xi = blk.xi;
            cm.lambda = blk.lambda;
            cm.w = blk.w;
            cm.v = blk.kind == BlockKind::NormBall ? 1.0 : blk.v;
            if (blk.xi.empty())
                cm.lowering = Lowering::LinearBound;
            else
                switch (blk.p)
                {
                case NormOrder::Two:
                    cm.lowering = Lowering::SecondOrderCone;
                    break;
                case NormOrder::Inf:
                    cm.lowering = Lowering::LinearBox;
                    break;
                case NormOrder::One:
                    cm.lowering = Lowering::LinearAuxiliary;
                    break;
                default:
                    throw std::invalid_argument("compile: unsupported norm order");
                }
            q.cones.push_back(std::move(cm));
        }
        return q;
    }

    std::string_view to_string(SolveStatus status)
    {
        switch (status)
        {
        case SolveStatus::Optimal:
            return "Optimal";
        case SolveStatus::Infeasible:
            return "Infeasible";
        case SolveStatus::Unbounded:
            return "Unbounded";
        case SolveStatus::NumericalTrouble:
            return "NumericalTrouble";
        }
        return "?";
    }

    SolverSettings SolverSettings::from_env()
    {
        SolverSettings s;
        if (const char* env = std::getenv("CCG_FEAS_TOL"))
        {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v))
                s.feasibility_tol = v;
        }
        return s;
    }

    namespace
    {
        using detail::RowMatrix;

        // ξ = y0 + N y parametrizes {ξ : E ξ = f} (least squares if inconsistent).
        struct Nullspace
        {
            Vector y0;
            Matrix N;
            double residual = 0.0;
        };

        Nullspace eliminate(const Matrix& E, const Vector& f, Index n)
        {
            Nullspace ns;
            if (E.rows() == 0)
            {
                ns.y0 = Vector::Zero(n);
                ns.N = Matrix::Identity(n, n);
                return ns;
            }
            Eigen::ColPivHouseholderQR<Matrix> qr(E.transpose());
            qr.setThreshold(1e-10);
            const Index r = qr.rank();
            const Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
            const Vector pf = qr.colsPermutation().transpose() * f;
            const Matrix R11 = qr.matrixR().topLeftCorner(r, r).template triangularView<Eigen::Upper>();
            const Vector eta = R11.transpose().triangularView<Eigen::Lower>().solve(pf.head(r));
            ns.y0 = Q.leftCols(r) * eta;
            ns.N = Q.rightCols(n - r);
            ns.residual = f.size() ? (E * ns.y0 - f).cwiseAbs().maxCoeff() : 0.0;
            return ns;
        }

        // Lowered program in the original variable order (ξ, aux, t).
        struct Lowered
        {
            detail::StandardForm sf;
            int num_aux = 0;
            bool has_t = false;
        };

        Lowered lower(const ConicQuery& q)
        {
            const int ng = q.num_vars;
            const int naux = q.auxiliary_variable_count();
            const bool slack = q.goal == QueryGoal::MinimizeUniformSlack;
            const int nv = ng + naux + (slack ? 1 : 0);
            const int tcol = ng + naux;

            struct Row
            {
                std::vector<std::pair<int, double>> coef;
                double h = 0.0;
            };
            std::vector<Row> lp;
            std::vector<std::vector<Row>> socs;

            const auto bound_terms = [](const ConeMembership& cm, Row& row) {
                for (std::size_t j = 0; j < cm.lambda.size(); ++j)
                    row.coef.emplace_back(cm.lambda[j], cm.w[j]);
                row.h = cm.v;
            };

            int aux = ng;
            for (const auto& cm : q.cones)
            {
                switch (cm.lowering)
                {
                case Lowering::LinearBound: {
                    Row row;
                    bound_terms(cm, row);
                    lp.push_back(std::move(row));
                    break;
                }
                case Lowering::LinearBox:
                    for (int i : cm.xi)
                        for (double sgn : {1.0, -1.0})
                        {
                            Row row;
                            bound_terms(cm, row);
                            row.coef.emplace_back(i, sgn);
                            lp.push_back(std::move(row));
                        }
                    break;
                case Lowering::LinearAuxiliary: {
                    Row sum;
                    bound_terms(cm, sum);
                    for (int i : cm.xi)
                    {
                        for (double sgn : {1.0, -1.0})
                        {
                            Row row;
                            row.coef = {{i, sgn}, {aux, -1.0}};
                            lp.push_back(std::move(row));
                        }
                        sum.coef.emplace_back(aux, 1.0);
                        ++aux;
                    }
                    lp.push_back(std::move(sum));
                    break;
                }
                case Lowering::SecondOrderCone: {
                    std::vector<Row> cone;
                    Row head;
                    bound_terms(cm, head);
                    cone.push_back(std::move(head));
                    for (int i : cm.xi)
                    {
                        Row tail;
                        tail.coef = {{i, -1.0}};
                        cone.push_back(std::move(tail));
                    }
                    socs.push_back(std::move(cone));
                    break;
                }
                }
            }
            for (int i : q.nonneg)
            {
                Row row;
                row.coef = {{i, -1.0}};
                lp.push_back(std::move(row));
            }
            if (slack)
            {
                for (auto& row : lp)
                    row.coef.emplace_back(tcol, -1.0);
                for (auto& cone : socs)
                    cone.front().coef.emplace_back(tcol, -1.0);
                Row floor;
                floor.coef = {{tcol, -1.0}};
                floor.h = 1.0;
                lp.push_back(std::move(floor));
            }

            Lowered out;
            out.num_aux = naux;
            out.has_t = slack;
            auto& sf = out.sf;
            sf.cones.nonneg = static_cast<int>(lp.size());
            int m = sf.cones.nonneg;
            for (const auto& cone : socs)
            {
                sf.cones.soc.push_back(static_cast<int>(cone.size()));
                m += static_cast<int>(cone.size());
            }
            sf.G = RowMatrix::Zero(m, nv);
            sf.h = Vector::Zero(m);
            int r = 0;
            const auto emit = [&](const Row& row) {
                for (const auto& [col, val] : row.coef)
                    sf.G(r, col) += val;
                sf.h(r) = row.h;
                ++r;
            };
            for (const auto& row : lp)
                emit(row);
            for (const auto& cone : socs)
                for (const auto& row : cone)
                    emit(row);

            sf.c = Vector::Zero(nv);
            if (slack)
                sf.c(tcol) = 1.0;
            else
                sf.c.head(ng) = q.objective;
            return out;
        }
    }

    SolveOutcome InteriorPointSolver::solve(const ConicQuery& query) const
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto elapsed = [&] {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        };

        SolveOutcome out;
        const Index ng = query.num_vars;
        const Nullspace ns = eliminate(query.eq_matrix, query.eq_rhs, ng);
        out.equality_residual = ns.residual;
        const double f_scale = query.eq_rhs.size() ? query.eq_rhs.cwiseAbs().maxCoeff() : 0.0;
        if (ns.residual > settings_.feasibility_tol * (1.0 + f_scale))
        {
            out.status = SolveStatus::Infeasible;
            out.wall_ms = elapsed();
            return out;
        }

        const Lowered low = lower(query);
        const Index extra = low.sf.G.cols() - ng;
        const Index k = ns.N.cols();

        detail::StandardForm sf;
        sf.cones = low.sf.cones;
        sf.G.resize(low.sf.G.rows(), k + extra);
        sf.G.leftCols(k) = low.sf.G.leftCols(ng) * ns.N;
        sf.G.rightCols(extra) = low.sf.G.rightCols(extra);
        sf.h = low.sf.h - low.sf.G.leftCols(ng) * ns.y0;
        sf.c.resize(k + extra);
        sf.c.head(k) = ns.N.transpose() * low.sf.c.head(ng);
        sf.c.tail(extra) = low.sf.c.tail(extra);
        const double offset = low.sf.c.head(ng).dot(ns.y0);

        detail::IpmSettings ipm;
        ipm.residual_tol = settings_.residual_tol;
        ipm.gap_tol = settings_.gap_tol;
        ipm.max_iterations = settings_.max_iterations;
        const detail::IpmResult res = detail::solve_standard_form(sf, ipm);
        out.iterations = res.iterations;

        switch (res.status)
        {
        case detail::IpmStatus::Optimal: {
            out.status = SolveStatus::Optimal;
            const Vector xi = ns.y0 + ns.N * res.x.head(k);
            const double obj_offset = low.has_t ? 0.0 : query.objective_offset;
            out.value = res.pcost + offset + obj_offset;
            out.dual_bound = res.dcost + offset + obj_offset;
            if (query.eq_rhs.size())
                out.equality_residual = (query.eq_matrix * xi - query.eq_rhs).cwiseAbs().maxCoeff();
            if (low.has_t)
            {
                // objective value is t; expose it directly
                out.value = res.x(res.x.size() - 1);
                out.dual_bound = res.dcost;
            }
            out.point = xi;
            break;
        }
        case detail::IpmStatus::PrimalInfeasible:
            out.status = SolveStatus::Infeasible;
            break;
        case detail::IpmStatus::DualInfeasible:
            out.status = SolveStatus::Unbounded;
            break;
        case detail::IpmStatus::Failed:
            out.status = SolveStatus::NumericalTrouble;
            break;
        }
        out.wall_ms = elapsed();
        return out;
    }

    const ConicSolver& default_solver()
    {
        static const InteriorPointSolver solver(SolverSettings::from_env());
        return solver;
    }
}
