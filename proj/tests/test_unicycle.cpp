#include "ccg/unicycle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ccg;
using namespace ccg::test;

constexpr double pi = std::numbers::pi;

TEST_CASE("angle wrapping lands in (-pi, pi]")
{
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(3.0 * pi / 2.0) == doctest::Approx(-pi / 2.0));
    CHECK(wrap_angle(7.0 * pi + 0.1) == doctest::Approx(-pi + 0.1));
    Rng rng(71);
    for (int i = 0; i < 100; ++i)
    {
        const double a = wrap_angle(rng.uniform(-50.0, 50.0));
        CHECK(a > -pi);
        CHECK(a <= pi);
    }
}

TEST_CASE("heading matrix and dynamics")
{
    const Eigen::Matrix2d A = heading_matrix(pi / 2.0, 0.1);
    CHECK(A(0, 0) == doctest::Approx(0.0).scale(1.0));
    CHECK(A(0, 1) == doctest::Approx(-0.1));
    CHECK(A(1, 0) == doctest::Approx(1.0));
    const UnicycleState s{1.0, 2.0, pi / 2.0};
    const auto next = dynamics_step(s, Eigen::Vector2d(2.0, 1.0), 0.1, 0.1);
    CHECK(next.p == doctest::Approx(1.0 - 0.01));
    CHECK(next.q == doctest::Approx(2.2));
    CHECK(next.theta == doctest::Approx(pi / 2.0 + 0.1));
}

TEST_CASE("controller halves the tracking error with exact feedback")
{
    const double Ts = 0.1, l = 0.1;
    UnicycleState s{3.0, -1.0, 0.4};
    const auto spec = TrajectorySpec::figure8();
    for (int k = 0; k < 30; ++k)
    {
        const Eigen::Vector2d tau = reference(spec, k, Ts);
        const Eigen::Vector2d tau_next = reference(spec, k + 1, Ts);
        const Eigen::Vector2d err = s.position() - tau;
        const auto u = controller(s.position(), s.theta, tau, tau_next, Eigen::Vector2d::Zero(), Ts, l);
        s = dynamics_step(s, u, Ts, l);
        CHECK((s.position() - tau_next - err / 2.0).norm() < 1e-9);
    }
}

TEST_CASE("compass readings stay within the bound")
{
    Rng rng(72);
    const double delta = 5.0 * pi / 180.0;
    for (int i = 0; i < 200; ++i)
    {
        const double theta = rng.uniform(-pi, pi);
        const double m = compass_measure(theta, rng, delta);
        CHECK(std::abs(wrap_angle(m - theta)) <= delta + 1e-12);
    }
}

TEST_CASE("beacon measurement only inside the detection radius")
{
    const Beacon b{Eigen::Vector2d(5.0, 5.0), 3.0, 0.1};
    Rng rng(73);
    Rng before = rng;
    CHECK_FALSE(beacon_measure(Eigen::Vector2d(0.0, 0.0), b, rng));
    CHECK(rng.engine() == before.engine());

    for (int i = 0; i < 30; ++i)
    {
        const Eigen::Vector2d p = b.position + Eigen::Vector2d(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const auto r = beacon_measure(p, b, rng);
        REQUIRE(r);
        CHECK(std::abs(r->range - (p - b.position).norm()) <= b.noise + 1e-12);
        CHECK(r->range >= 0.0);
        CHECK(contains_point(r->set, p).member());
    }
}

TEST_CASE("vertex model covers every heading in the compass interval")
{
    Rng rng(74);
    const double Ts = 0.1, l = 0.1, delta = 5.0 * pi / 180.0;
    for (int trial = 0; trial < 5; ++trial)
    {
        const double theta_hat = rng.uniform(-pi, pi);
        const Eigen::Vector2d u(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        const auto vm = build_vertex_maps(theta_hat, delta, u, Ts, l);
        REQUIRE(vm.vertices.size() == 2);
        const auto X = ConvexSetCCG::singleton(Vector::Zero(2));
        const auto step_set = propagate(X, vm.vertices, Vector::Zero(2), Matrix::Identity(2, 2), vm.remainder);
        for (int k = 0; k <= 10; ++k)
        {
            const double theta = theta_hat - delta + 2.0 * delta * k / 10.0;
            const Eigen::Vector2d inc = Ts * heading_matrix(theta, l) * u;
            CHECK(contains_point(step_set, inc).slack <= 1e-7);
        }
    }
}

TEST_CASE("reference trajectories")
{
    const auto f8 = TrajectorySpec::figure8();
    const double Ts = 0.1;
    CHECK((reference(f8, 0, Ts) - f8.center).norm() < 1e-12);
    CHECK((reference(f8, 150, Ts) - reference(f8, 0, Ts)).norm() < 1e-9);
    const auto sp = TrajectorySpec::spiral();
    const double r0 = (reference(sp, 0, Ts) - sp.center).norm();
    const double r1 = (reference(sp, 100, Ts) - sp.center).norm();
    CHECK(r0 == doctest::Approx(sp.r0));
    CHECK(r1 == doctest::Approx(sp.r0 + sp.growth * 10.0));
    CHECK(parse_trajectory_kind("spiral") == TrajectoryKind::Spiral);
    CHECK_FALSE(parse_trajectory_kind("circle"));
}
