#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ccg;
using namespace ccg::test;

namespace
{
    ConvexSetCCG disk(double x, double y, double r)
    {
        return from_ellipsoid(Matrix::Identity(2, 2) * r, Eigen::Vector2d(x, y));
    }

    double support(const ConvexSetCCG& Z, const Vector& u)
    {
        const auto r = support_function(Z, u);
        REQUIRE(r.ok());
        return r.value;
    }
}

TEST_CASE("lifting a ball subtracts or adds v on the new coordinate and halves v")
{
    const auto ball = ConstraintBlock::norm_ball(NormOrder::Two, {0, 1});
    const auto first = lift_block(ball, 7, LiftSide::First);
    CHECK(first.kind == BlockKind::NormCone);
    CHECK(first.lambda == std::vector<int>{7});
    CHECK(first.w == std::vector<double>{-1.0});
    CHECK(first.v == 0.5);

    const auto second = lift_block(first, 9, LiftSide::Second);
    CHECK(second.lambda == std::vector<int>{7, 9});
    CHECK(second.w == std::vector<double>{-1.0, 0.5});
    CHECK(second.v == 0.25);

    const auto free = ConstraintBlock::unconstrained({3});
    CHECK(lift_block(free, 4, LiftSide::First) == free);
}

TEST_CASE("hull of two unit disks is the stadium")
{
    const auto H = convex_hull_pair(disk(-2, 0, 1), disk(2, 0, 1));
    CHECK(H.num_generators() == 5);
    CHECK(H.num_constraints() == 0);
    CHECK(validate(H).empty());
    for (int i = 0; i < 24; ++i)
    {
        const double a = 2.0 * std::numbers::pi * i / 24;
        const Eigen::Vector2d u(std::cos(a), std::sin(a));
        CHECK(support(H, u) == doctest::Approx(2.0 * std::abs(u.x()) + 1.0).epsilon(1e-6));
    }
    CHECK(contains_point(H, Eigen::Vector2d(0.0, 0.999)).member());
    CHECK_FALSE(contains_point(H, Eigen::Vector2d(0.0, 1.01)).member());
    CHECK_FALSE(contains_point(H, Eigen::Vector2d(2.8, 0.8)).member());
}

TEST_CASE("hull with a singleton is a cone over the set")
{
    const auto H = convex_hull_pair(disk(0, 0, 1), ConvexSetCCG::singleton(Eigen::Vector2d(4.0, 0.0)));
    CHECK(H.num_generators() == 3);
    CHECK(support(H, Eigen::Vector2d(1.0, 0.0)) == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(support(H, Eigen::Vector2d(-1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(support(H, Eigen::Vector2d(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-6));

    const auto P = convex_hull_pair(ConvexSetCCG::singleton(Eigen::Vector2d(0.0, 0.0)),
                                    ConvexSetCCG::singleton(Eigen::Vector2d(2.0, 2.0)));
    CHECK(P.num_generators() == 1);
    CHECK(support(P, Eigen::Vector2d(1.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(support(P, Eigen::Vector2d(1.0, -1.0)) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(contains_point(P, Eigen::Vector2d(0.5, 0.5)).member());
    CHECK_FALSE(contains_point(P, Eigen::Vector2d(0.5, 0.6)).member());
}

TEST_CASE("hull of a set with itself has the same support")
{
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial)
    {
        const auto A = random_leaf(trial % 2 ? 2 : 4, rng, false);
        const auto H = convex_hull_pair(A, A);
        for (int k = 0; k < 8; ++k)
        {
            const Vector u = random_unit_direction(A.dim(), rng);
            const double a = support(A, u);
            CHECK(std::abs(support(H, u) - a) <= 1e-5 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("hull size law and validity on nested random hulls")
{
    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial)
    {
        const Index n = trial % 2 ? 2 : 4;
        const auto X = random_set(n, rng, 3);
        const auto Y = random_set(n, rng, 3);
        const auto H = convex_hull_pair(X, Y);
        CHECK(H.num_generators() == X.num_generators() + Y.num_generators() + 1);
        CHECK(H.num_constraints() == X.num_constraints() + Y.num_constraints());
        CHECK(validate(H).empty());
    }
}

TEST_CASE("hull support equals the larger operand support")
{
    Rng rng(33);
    for (int trial = 0; trial < 8; ++trial)
    {
        const Index n = trial % 2 ? 2 : 4;
        const auto X = random_set(n, rng, 2);
        const auto Y = random_set(n, rng, 2);
        const auto H = convex_hull_pair(X, Y);
        for (int k = 0; k < 10; ++k)
        {
            const Vector u = random_unit_direction(n, rng);
            const double want = std::max(support(X, u), support(Y, u));
            CHECK(std::abs(support(H, u) - want) <= 1e-5 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("convex combinations of member points are in the hull")
{
    Rng rng(34);
    for (int trial = 0; trial < 6; ++trial)
    {
        const Index n = trial % 2 ? 2 : 4;
        const auto X = random_set(n, rng, 2);
        const auto Y = random_set(n, rng, 2);
        const auto H = convex_hull_pair(X, Y);
        for (int k = 0; k < 5; ++k)
        {
            const double lam = rng.uniform(0.0, 1.0);
            const Vector z = lam * member_point(X, rng) + (1.0 - lam) * member_point(Y, rng);
            const auto m = contains_point(H, z);
            CHECK(m.slack <= 1e-6);
        }
    }
}

TEST_CASE("hull of many folds left and keeps the size law")
{
    std::vector<ConvexSetCCG> sets{disk(0, 0, 1), disk(3, 0, 0.5), disk(0, 3, 0.25)};
    const auto H = convex_hull_many(sets);
    CHECK(H.num_generators() == 2 + 2 + 1 + 2 + 1);
    CHECK(support(H, Eigen::Vector2d(1.0, 0.0)) == doctest::Approx(3.5).epsilon(1e-6));
    CHECK(support(H, Eigen::Vector2d(0.0, 1.0)) == doctest::Approx(3.25).epsilon(1e-6));
    CHECK(support(H, Eigen::Vector2d(-1.0, -1.0).normalized()) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(convex_hull_many({disk(1, 1, 1)}).num_generators() == 2);
    CHECK_THROWS_AS(convex_hull_many({}), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull_pair(disk(0, 0, 1), ConvexSetCCG::singleton(Vector::Zero(3))),
                    std::invalid_argument);
}
