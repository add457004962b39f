#include "ccg/reduce.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ccg;
using namespace ccg::test;

namespace
{
    double support(const ConvexSetCCG& Z, const Vector& u)
    {
        const auto r = support_function(Z, u);
        REQUIRE(r.ok());
        return r.value;
    }
}

TEST_CASE("reduction directions start with the signed axes")
{
    const ReductionSpec spec{8, ReductionMode::Guaranteed, 5};
    const Matrix V = reduction_directions(3, spec);
    REQUIRE(V.rows() == 3);
    REQUIRE(V.cols() == 8);
    for (Index j = 0; j < 3; ++j)
    {
        CHECK(V(j, 2 * j) == 1.0);
        CHECK(V(j, 2 * j + 1) == -1.0);
    }
    for (Index j = 0; j < 8; ++j)
        CHECK(V.col(j).norm() == doctest::Approx(1.0));
    CHECK(reduction_directions(3, spec) == V);
    CHECK(reduction_directions(3, {8, ReductionMode::Guaranteed, 6}).rightCols(2) != V.rightCols(2));
}

TEST_CASE("reduction modes parse and print")
{
    CHECK(parse_reduction_mode("guaranteed") == ReductionMode::Guaranteed);
    CHECK(parse_reduction_mode("paper") == ReductionMode::PaperFaithful);
    CHECK_FALSE(parse_reduction_mode("other"));
    CHECK(to_string(ReductionMode::PaperFaithful) == "paper");
}

TEST_CASE("guaranteed reduction has the promised order and dominates the input")
{
    Rng rng(51);
    for (int trial = 0; trial < 6; ++trial)
    {
        const Index n = trial % 2 ? 2 : 4;
        const auto Z = nested_hull(n, rng, 1 + trial % 3);
        for (int gamma : {3, 10})
        {
            const auto R = reduce_to_order(Z, {gamma, ReductionMode::Guaranteed, static_cast<std::uint64_t>(trial)});
            CHECK(R.num_generators() == gamma + n);
            CHECK(R.num_constraints() == gamma);
            CHECK(R.tag() == SetClassTag::ConstrainedZonotope);
            CHECK(validate(R).empty());
            for (int k = 0; k < 15; ++k)
            {
                const Vector u = random_unit_direction(n, rng);
                CHECK(support(R, u) >= support(Z, u) - 1e-6);
            }
        }
    }
}

TEST_CASE("reduction is exact on the sampled directions of a box")
{
    const auto box = from_interval(Eigen::Vector2d(-1.0, 0.0), Eigen::Vector2d(3.0, 2.0));
    const auto R = reduce_to_order(box, {4, ReductionMode::Guaranteed, 1});
    CHECK(support(R, Eigen::Vector2d(1.0, 0.0)) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(support(R, Eigen::Vector2d(0.0, -1.0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(volume_2d(R, 64) == doctest::Approx(8.0).epsilon(1e-5));
}

TEST_CASE("reduction of a disk with many directions approaches the disk")
{
    const auto disk = from_ellipsoid(Matrix::Identity(2, 2), Vector::Zero(2));
    const auto R = reduce_to_order(disk, {40, ReductionMode::Guaranteed, 3});
    const double area = volume_2d(R, 64);
    CHECK(area >= 64 * std::tan(std::numbers::pi / 64) - 1e-6);
    CHECK(area < 3.4);
}

TEST_CASE("paper-faithful reduction keeps the order and stays close")
{
    Rng rng(52);
    const auto Z = random_leaf(2, LeafKind::Ellipsoid, rng);
    const auto R = reduce_to_order(Z, {12, ReductionMode::PaperFaithful, 2});
    CHECK(R.num_generators() == 14);
    CHECK(R.num_constraints() == 12);
    CHECK(is_empty(R) == Verdict::No);
    for (int k = 0; k < 10; ++k)
    {
        const Vector u = random_unit_direction(2, rng);
        CHECK(support(R, u) >= support(Z, u) - 0.5 * std::abs(support(Z, u) + support(Z, -u)));
    }
}

TEST_CASE("reduction with fixed directions")
{
    const auto disk = from_ellipsoid(Matrix::Identity(2, 2), Eigen::Vector2d(1.0, 1.0));
    Matrix V(2, 4);
    V << 1, -1, 0, 0, 0, 0, 1, -1;
    const auto R = reduce_with_directions(disk, V, ReductionMode::Guaranteed);
    CHECK(volume_2d(R, 64) == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("reduction rejects empty and unbounded input")
{
    const Matrix A = (Matrix(1, 2) << 1.0, 1.0).finished();
    const auto empty = from_constrained_zonotope(Matrix::Identity(2, 2), Vector::Zero(2), A,
                                                 Eigen::Matrix<double, 1, 1>(3.0));
    CHECK_THROWS_AS(reduce_to_order(empty, {4, ReductionMode::Guaranteed, 1}), std::runtime_error);
    const ConvexSetCCG line(Matrix::Identity(2, 1), Vector::Zero(2), Matrix(0, 1), Vector(0),
                            {ConstraintBlock::unconstrained({0})});
    CHECK_THROWS_AS(reduce_to_order(line, {4, ReductionMode::Guaranteed, 1}), std::runtime_error);
}
