#include "ccg/queries.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccg
{
    SupportResult support_function(const ConvexSetCCG& Z, const Vector& u, const ConicSolver& solver)
    {
        if (u.size() != Z.dim())
            throw std::invalid_argument("support_function: direction has wrong dimension");
        const Vector obj = -(Z.G().transpose() * u);
        const ConicQuery q = compile(Z, std::nullopt, obj);
        const SolveOutcome out = solver.solve(q);

        SupportResult res;
        res.status = out.status;
        const double uc = u.dot(Z.c());
        switch (out.status)
        {
        case SolveStatus::Optimal:
            res.point = Z.G() * *out.point + Z.c();
            res.value = u.dot(*res.point);
            res.upper_bound = uc - out.dual_bound;
            break;
        case SolveStatus::Unbounded:
            res.value = res.upper_bound = std::numeric_limits<double>::infinity();
            break;
        case SolveStatus::Infeasible:
            res.value = res.upper_bound = -std::numeric_limits<double>::infinity();
            break;
        case SolveStatus::NumericalTrouble:
            res.value = res.upper_bound = std::numeric_limits<double>::quiet_NaN();
            break;
        }
        return res;
    }

    Membership contains_point(const ConvexSetCCG& Z, const Vector& x, const ConicSolver& solver)
    {
        if (x.size() != Z.dim())
            throw std::invalid_argument("contains_point: point has wrong dimension");
        const ConicQuery q = compile(Z, LinearEqualities{Z.G(), x - Z.c()}, Vector::Zero(Z.num_generators()),
                                     QueryGoal::MinimizeUniformSlack);
        const SolveOutcome out = solver.solve(q);
        const double tol = solver.settings().feasibility_tol;

        Membership m;
        switch (out.status)
        {
        case SolveStatus::Optimal:
            m.slack = out.equality_residual > tol ? std::max(out.equality_residual, out.value) : out.value;
            m.verdict = m.slack <= tol ? Verdict::Yes : Verdict::No;
            break;
        case SolveStatus::Infeasible:
            m.slack = std::max(out.equality_residual, tol * 10.0);
            m.verdict = Verdict::No;
            break;
        default:
            m.slack = std::numeric_limits<double>::quiet_NaN();
            m.verdict = Verdict::Indeterminate;
            break;
        }
        return m;
    }

    Verdict is_empty(const ConvexSetCCG& Z, const ConicSolver& solver)
    {
        const ConicQuery q =
            compile(Z, std::nullopt, Vector::Zero(Z.num_generators()), QueryGoal::MinimizeUniformSlack);
        const SolveOutcome out = solver.solve(q);
        const double tol = solver.settings().feasibility_tol;
        switch (out.status)
        {
        case SolveStatus::Optimal:
            return std::max(out.equality_residual, out.value) <= tol ? Verdict::No : Verdict::Yes;
        case SolveStatus::Infeasible:
            return Verdict::Yes;
        default:
            return Verdict::Indeterminate;
        }
    }

    Vector random_unit_direction(Index n, Rng& rng)
    {
        Vector v(n);
        do
        {
            for (Index i = 0; i < n; ++i)
                v(i) = rng.normal();
        } while (v.norm() < 1e-12);
        return v.normalized();
    }

    SurfaceSample sample_surface(const ConvexSetCCG& Z, int gamma, Rng& rng, const ConicSolver& solver)
    {
        constexpr int max_retries = 3;
        SurfaceSample s;
        s.V.resize(Z.dim(), gamma);
        s.P.resize(Z.dim(), gamma);
        for (int i = 0; i < gamma; ++i)
        {
            for (int attempt = 0;; ++attempt)
            {
                const Vector v = random_unit_direction(Z.dim(), rng);
                const SupportResult r = support_function(Z, v, solver);
                if (r.ok())
                {
                    s.V.col(i) = v;
                    s.P.col(i) = *r.point;
                    break;
                }
                if (attempt == max_retries)
                    throw std::runtime_error("sample_surface: support solve failed (" +
                                             std::string(to_string(r.status)) + ") after retries");
            }
        }
        return s;
    }

    SurfaceSample sample_surface(const ConvexSetCCG& Z, const Matrix& V, const ConicSolver& solver)
    {
        if (V.rows() != Z.dim())
            throw std::invalid_argument("sample_surface: directions have wrong dimension");
        SurfaceSample s;
        s.V.resize(V.rows(), V.cols());
        s.P.resize(V.rows(), V.cols());
        for (Index i = 0; i < V.cols(); ++i)
        {
            const Vector v = V.col(i).normalized();
            const SupportResult r = support_function(Z, v, solver);
            if (!r.ok())
                throw std::runtime_error("sample_surface: support solve failed (" + std::string(to_string(r.status)) +
                                         ")");
            s.V.col(i) = v;
            s.P.col(i) = *r.point;
        }
        return s;
    }

    namespace
    {
        // Clip a convex polygon by {x : nᵀx ≤ h}.
        Polygon clip(const Polygon& poly, const Eigen::Vector2d& n, double h)
        {
            Polygon out;
            const std::size_t m = poly.size();
            for (std::size_t i = 0; i < m; ++i)
            {
                const Eigen::Vector2d& a = poly[i];
                const Eigen::Vector2d& b = poly[(i + 1) % m];
                const double fa = n.dot(a) - h;
                const double fb = n.dot(b) - h;
                if (fa <= 0.0)
                    out.push_back(a);
                if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0))
                    out.push_back(a + (fa / (fa - fb)) * (b - a));
            }
            return out;
        }

        // Conservative support values at K equally spaced angles; nullopt if empty.
        std::optional<std::vector<double>> polygon_supports(const ConvexSetCCG& Z, int K, const ConicSolver& solver)
        {
            if (Z.dim() != 2)
                throw std::invalid_argument("outer_polygon: set must be two-dimensional");
            if (K < 3)
                throw std::invalid_argument("outer_polygon: need at least 3 directions");
            std::vector<double> h(static_cast<std::size_t>(K));
            for (int k = 0; k < K; ++k)
            {
                const double a = 2.0 * std::numbers::pi * k / K;
                const SupportResult r = support_function(Z, Eigen::Vector2d(std::cos(a), std::sin(a)), solver);
                if (r.status == SolveStatus::Infeasible)
                    return std::nullopt;
                if (!r.ok())
                    throw std::runtime_error("outer_polygon: support solve failed (" +
                                             std::string(to_string(r.status)) + ") at direction " +
                                             std::to_string(k));
                h[static_cast<std::size_t>(k)] = r.conservative();
            }
            return h;
        }

        Polygon polygon_from_supports(const std::vector<double>& h)
        {
            const int K = static_cast<int>(h.size());
            double hmax = 0.0;
            for (double v : h)
                hmax = std::max(hmax, std::abs(v));
            const double R = 4.0 * hmax + 1.0;
            Polygon poly{{-R, -R}, {R, -R}, {R, R}, {-R, R}};
            for (int k = 0; k < K && !poly.empty(); ++k)
            {
                const double a = 2.0 * std::numbers::pi * k / K;
                poly = clip(poly, Eigen::Vector2d(std::cos(a), std::sin(a)), h[static_cast<std::size_t>(k)]);
            }
            return poly;
        }
    }

    Polygon outer_polygon(const ConvexSetCCG& Z, int K, const ConicSolver& solver)
    {
        const auto h = polygon_supports(Z, K, solver);
        if (!h)
            throw std::runtime_error("outer_polygon: set is empty");
        return polygon_from_supports(*h);
    }

    double polygon_area(const Polygon& poly)
    {
        double a = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
        {
            const auto& p = poly[i];
            const auto& q = poly[(i + 1) % poly.size()];
            a += p.x() * q.y() - q.x() * p.y();
        }
        return 0.5 * a;
    }

    double volume_2d(const ConvexSetCCG& Z, int K, const ConicSolver& solver)
    {
        const auto h = polygon_supports(Z, K, solver);
        if (!h)
            return 0.0;
        return polygon_area(polygon_from_supports(*h));
    }
}
