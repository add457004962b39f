#include "ipm.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

using namespace ccg;
using namespace ccg::test;

namespace
{
    Eigen::VectorXd interior_soc_point(int dim, Rng& rng)
    {
        Eigen::VectorXd x = random_vector(dim, rng);
        x(0) = x.tail(dim - 1).norm() + rng.uniform(0.1, 2.0);
        return x;
    }

    bool in_soc(const Eigen::VectorXd& x, double tol)
    {
        return x(0) >= x.tail(x.size() - 1).norm() - tol;
    }
}

TEST_CASE("Nesterov-Todd scaling maps z and s to the same point")
{
    Rng rng(41);
    for (int dim : {2, 3, 5, 9})
    {
        for (int trial = 0; trial < 10; ++trial)
        {
            const auto s = interior_soc_point(dim, rng);
            const auto z = interior_soc_point(dim, rng);
            const auto sc = detail::soc_scaling(s, z);
            const Eigen::VectorXd lam1 = detail::soc_apply_w(sc, z);
            const Eigen::VectorXd lam2 = detail::soc_apply_winv(sc, s);
            CHECK((lam1 - lam2).norm() <= 1e-9 * (1.0 + lam1.norm()));
            CHECK(in_soc(lam1, 1e-12));

            const Eigen::VectorXd x = random_vector(dim, rng);
            CHECK((detail::soc_apply_winv(sc, detail::soc_apply_w(sc, x)) - x).norm() <= 1e-9 * (1.0 + x.norm()));

            // W = β(2vvᵀ − J) written out densely
            Eigen::MatrixXd J = -Eigen::MatrixXd::Identity(dim, dim);
            J(0, 0) = 1.0;
            const Eigen::MatrixXd W = sc.beta * (2.0 * sc.v * sc.v.transpose() - J);
            CHECK((W * x - detail::soc_apply_w(sc, x)).norm() <= 1e-9 * (1.0 + x.norm()));
            const Eigen::MatrixXd W2 = W * W;
            CHECK((W2 * z - W * lam1).norm() <= 1e-8 * (1.0 + (W2 * z).norm()));
        }
    }
}

TEST_CASE("soc_step matches bisection")
{
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial)
    {
        const int dim = 2 + trial % 5;
        const auto u = interior_soc_point(dim, rng);
        const Eigen::VectorXd du = random_vector(dim, rng, 2.0);
        const double a = detail::soc_step(u, du);
        if (std::isinf(a))
        {
            CHECK(in_soc(u + 1e6 * du, 1e-6 * (1.0 + du.norm() * 1e6)));
            continue;
        }
        double lo = 0.0, hi = a * 2.0 + 1.0;
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (in_soc(u + mid * du, 0.0))
                lo = mid;
            else
                hi = mid;
        }
        CHECK(a == doctest::Approx(lo).epsilon(1e-8));
    }
}

TEST_CASE("standard-form LP with a known optimum")
{
    // min −x1 − x2  s.t. x1 + 2 x2 ≤ 4, 3 x1 + x2 ≤ 6, x ≥ 0  →  (8/5, 6/5)
    detail::StandardForm prob;
    prob.G.resize(4, 2);
    prob.G << 1, 2, 3, 1, -1, 0, 0, -1;
    prob.h.resize(4);
    prob.h << 4, 6, 0, 0;
    prob.c.resize(2);
    prob.c << -1, -1;
    prob.cones.nonneg = 4;
    const auto r = detail::solve_standard_form(prob, {});
    REQUIRE(r.status == detail::IpmStatus::Optimal);
    CHECK(r.x(0) == doctest::Approx(1.6).epsilon(1e-7));
    CHECK(r.x(1) == doctest::Approx(1.2).epsilon(1e-7));
    CHECK(r.pcost == doctest::Approx(-2.8).epsilon(1e-7));
}

TEST_CASE("standard form detects infeasibility and unboundedness")
{
    detail::StandardForm infeasible;
    infeasible.G.resize(2, 1);
    infeasible.G << 1, -1;
    infeasible.h.resize(2);
    infeasible.h << -1, -1;  // x ≤ −1 and x ≥ 1
    infeasible.c = Eigen::VectorXd::Ones(1);
    infeasible.cones.nonneg = 2;
    CHECK(detail::solve_standard_form(infeasible, {}).status == detail::IpmStatus::PrimalInfeasible);

    detail::StandardForm unbounded;
    unbounded.G.resize(1, 1);
    unbounded.G << -1;
    unbounded.h = Eigen::VectorXd::Zero(1);  // x ≥ 0
    unbounded.c = -Eigen::VectorXd::Ones(1);
    unbounded.cones.nonneg = 1;
    CHECK(detail::solve_standard_form(unbounded, {}).status == detail::IpmStatus::DualInfeasible);
}

TEST_CASE("compile chooses a lowering per norm")
{
    Rng rng(45);
    const ConvexSetCCG Z(random_matrix(2, 6, rng), Vector::Zero(2), Matrix(0, 6), Vector(0),
                         {ConstraintBlock::norm_ball(NormOrder::Two, {0, 1}),
                          ConstraintBlock::norm_ball(NormOrder::Inf, {2, 3}),
                          ConstraintBlock::norm_ball(NormOrder::One, {4, 5})});
    const auto q = compile(Z, std::nullopt, Vector::Ones(6));
    CHECK(q.num_vars == 6);
    CHECK(q.soc_count() == 1);
    CHECK(q.box_constraint_count() == 2);
    CHECK(q.auxiliary_variable_count() == 2);
    CHECK_THROWS_AS(compile(Z, std::nullopt, Vector::Ones(5)), std::invalid_argument);
}

TEST_CASE("solver support matches closed-form support of norm-ball sets")
{
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial)
    {
        const Index n = 2 + trial % 3;
        const auto kind = static_cast<LeafKind>(std::vector<int>{0, 1, 4, 5, 6}[trial % 5]);
        const auto Z = random_leaf(n, kind, rng);
        for (int k = 0; k < 5; ++k)
        {
            const Vector u = random_unit_direction(n, rng);
            const auto r = support_function(Z, u);
            REQUIRE(r.ok());
            const double want = analytic_support(Z, u);
            CHECK(std::abs(r.value - want) <= 1e-7 * (1.0 + std::abs(want)));
            CHECK(r.conservative() >= want - 1e-7 * (1.0 + std::abs(want)));
            REQUIRE(r.point);
            CHECK(u.dot(*r.point) == doctest::Approx(r.value).epsilon(1e-7));
        }
    }
}

TEST_CASE("support of an empty set reports infeasibility, a free generator unboundedness")
{
    const Matrix A = (Matrix(1, 2) << 1.0, 1.0).finished();
    const ConvexSetCCG empty = from_constrained_zonotope(Matrix::Identity(2, 2), Vector::Zero(2), A,
                                                         Eigen::Matrix<double, 1, 1>(3.0));
    CHECK(support_function(empty, Eigen::Vector2d(1.0, 0.0)).status == SolveStatus::Infeasible);
    CHECK(is_empty(empty) == Verdict::Yes);
    CHECK(volume_2d(empty, 16) == 0.0);

    const ConvexSetCCG line(Matrix::Identity(2, 1), Vector::Zero(2), Matrix(0, 1), Vector(0),
                            {ConstraintBlock::unconstrained({0})});
    CHECK(support_function(line, Eigen::Vector2d(1.0, 0.0)).status == SolveStatus::Unbounded);
    const auto flat = support_function(line, Eigen::Vector2d(0.0, 1.0));
    REQUIRE(flat.ok());
    CHECK(flat.value == doctest::Approx(0.0).scale(1.0));

    const ConvexSetCCG ray(Matrix::Identity(2, 1), Vector::Zero(2), Matrix(0, 1), Vector(0),
                           {ConstraintBlock::nonneg({0})});
    CHECK(support_function(ray, Eigen::Vector2d(1.0, 0.0)).status == SolveStatus::Unbounded);
    CHECK(support_function(ray, Eigen::Vector2d(-1.0, 0.0)).value == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("membership and emptiness")
{
    const ConvexSetCCG box = from_interval(-Vector::Ones(2), Vector::Ones(2));
    const auto in = contains_point(box, Eigen::Vector2d(0.5, -0.5));
    CHECK(in.member());
    CHECK(in.slack < 0.0);
    const auto edge = contains_point(box, Eigen::Vector2d(1.0, 0.0));
    CHECK(edge.member());
    const auto out = contains_point(box, Eigen::Vector2d(1.2, 0.0));
    CHECK(out.verdict == Verdict::No);
    CHECK(out.slack == doctest::Approx(0.2).epsilon(1e-6));
    CHECK_THROWS_AS(contains_point(box, Vector::Zero(3)), std::invalid_argument);

    CHECK(is_empty(box) == Verdict::No);
    const auto disjoint = intersection_under_map(box, Matrix::Identity(2, 2),
                                                 from_interval(Vector::Ones(2) * 2.0, Vector::Ones(2) * 3.0));
    CHECK(is_empty(disjoint) == Verdict::Yes);
    const auto tangent = intersection_under_map(
        from_ellipsoid(Matrix::Identity(2, 2), Vector::Zero(2)), Matrix::Identity(2, 2),
        from_interval(Eigen::Vector2d(1.0, -1.0), Eigen::Vector2d(2.0, 1.0)));
    CHECK(is_empty(tangent) == Verdict::No);
}

TEST_CASE("outer polygon of the unit disk and of a box")
{
    const auto disk = from_ellipsoid(Matrix::Identity(2, 2), Vector::Zero(2));
    for (int K : {8, 16, 64})
    {
        const double want = K * std::tan(std::numbers::pi / K);
        CHECK(polygon_area(outer_polygon(disk, K)) == doctest::Approx(want).epsilon(1e-6));
    }
    const auto box = from_interval(Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(2.0, 1.0));
    CHECK(volume_2d(box, 64) == doctest::Approx(2.0).epsilon(1e-6));
    const auto poly = outer_polygon(box, 4);
    CHECK(poly.size() == 4);
    CHECK(polygon_area(poly) > 0.0);
    CHECK_THROWS_AS(outer_polygon(box, 2), std::invalid_argument);
    CHECK_THROWS_AS(outer_polygon(from_interval(-Vector::Ones(3), Vector::Ones(3)), 8), std::invalid_argument);
}

TEST_CASE("polygon area by the shoelace formula")
{
    const Polygon tri{{0, 0}, {4, 0}, {0, 3}};
    CHECK(polygon_area(tri) == doctest::Approx(6.0));
    CHECK(polygon_area({}) == 0.0);
}

TEST_CASE("surface sampling returns unit directions and attained support points")
{
    Rng rng(44);
    const auto Z = random_leaf(3, LeafKind::ConstrainedBall, rng);
    const auto sample = sample_surface(Z, 12, rng);
    CHECK(sample.V.cols() == 12);
    for (Index j = 0; j < 12; ++j)
    {
        CHECK(sample.V.col(j).norm() == doctest::Approx(1.0));
        CHECK(contains_point(Z, sample.P.col(j)).slack <= 1e-6);
    }
}

TEST_CASE("feasibility tolerance can be set from the environment")
{
    ::setenv("CCG_FEAS_TOL", "1e-5", 1);
    CHECK(SolverSettings::from_env().feasibility_tol == 1e-5);
    ::setenv("CCG_FEAS_TOL", "nonsense", 1);
    CHECK(SolverSettings::from_env().feasibility_tol == SolverSettings{}.feasibility_tol);
    ::unsetenv("CCG_FEAS_TOL");
}
