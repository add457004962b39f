#include "ccg/unicycle.hpp"

#include <cmath>
#include <numbers>

namespace ccg
{
    double wrap_angle(double theta)
    {
        constexpr double pi = std::numbers::pi;
        double t = std::remainder(theta, 2.0 * pi);  // [−π, π]
        if (t <= -pi)
            t += 2.0 * pi;
        return t;
    }

    Eigen::Matrix2d heading_matrix(double theta, double l)
    {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Eigen::Matrix2d A;
        A << c, -l * s, s, l * c;
        return A;
    }

    UnicycleState dynamics_step(const UnicycleState& s, const Eigen::Vector2d& u, double Ts, double l)
    {
        const Eigen::Vector2d dp = Ts * heading_matrix(s.theta, l) * u;
        return {s.p + dp.x(), s.q + dp.y(), wrap_angle(s.theta + Ts * u.y())};
    }

    Eigen::Vector2d controller(const Eigen::Vector2d& p_hat, double theta_hat, const Eigen::Vector2d& tau_k,
                               const Eigen::Vector2d& tau_next, const Eigen::Vector2d& d, double Ts, double l)
    {
        const Eigen::Vector2d target = tau_next - 0.5 * tau_k - 0.5 * p_hat + d;
        // A⁻¹ = diag(1, 1/l) Rot(−θ)
        const double c = std::cos(theta_hat);
        const double s = std::sin(theta_hat);
        const Eigen::Vector2d r(c * target.x() + s * target.y(), -s * target.x() + c * target.y());
        return Eigen::Vector2d(r.x(), r.y() / l) / Ts;
    }

    double compass_measure(double theta, Rng& rng, double delta)
    {
        if (delta <= 0.0)
            return wrap_angle(theta);
        return wrap_angle(theta + rng.uniform(-delta, delta));
    }

    std::optional<BeaconReading> beacon_measure(const Eigen::Vector2d& position, const Beacon& beacon, Rng& rng)
    {
        const double rho = (position - beacon.position).norm();
        if (rho > beacon.detect_radius)
            return std::nullopt;
        const double e = beacon.noise > 0.0 ? rng.uniform(-beacon.noise, beacon.noise) : 0.0;
        const double range = std::max(0.0, rho + e);
        const double radius = range + beacon.noise;
        return BeaconReading{range, from_ellipsoid(radius * Eigen::Matrix2d::Identity(), beacon.position)};
    }

    VertexModel build_vertex_maps(double theta_hat, double delta, const Eigen::Vector2d& u, double Ts, double l)
    {
        VertexModel vm;
        for (double sgn : {-1.0, 1.0})
            vm.vertices.push_back(
                {Matrix::Identity(2, 2), Ts * heading_matrix(theta_hat + sgn * delta, l) * u});
        const double radius = Ts * Eigen::Vector2d(u.x(), l * u.y()).norm() * (1.0 - std::cos(delta));
        vm.remainder = from_ellipsoid(radius * Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
        return vm;
    }

    std::string_view to_string(TrajectoryKind kind)
    {
        return kind == TrajectoryKind::Figure8 ? "figure8" : "spiral";
    }

    std::optional<TrajectoryKind> parse_trajectory_kind(std::string_view s)
    {
        if (s == "figure8" || s == "Figure8")
            return TrajectoryKind::Figure8;
        if (s == "spiral" || s == "Spiral")
            return TrajectoryKind::Spiral;
        return std::nullopt;
    }

    TrajectorySpec TrajectorySpec::figure8()
    {
        TrajectorySpec t;
        t.kind = TrajectoryKind::Figure8;
        t.omega = 2.0 * std::numbers::pi / 15.0;
        return t;
    }

    TrajectorySpec TrajectorySpec::spiral()
    {
        TrajectorySpec t;
        t.kind = TrajectoryKind::Spiral;
        t.omega = 4.0 * std::numbers::pi / 15.0;
        return t;
    }

    Eigen::Vector2d reference(const TrajectorySpec& spec, int k, double Ts)
    {
        const double t = k * Ts;
        if (spec.kind == TrajectoryKind::Figure8)
            return spec.center + Eigen::Vector2d(spec.amplitudes.x() * std::sin(spec.omega * t),
                                                 spec.amplitudes.y() * std::sin(2.0 * spec.omega * t));
        const double r = spec.r0 + spec.growth * t;
        return spec.center + r * Eigen::Vector2d(std::cos(spec.omega * t), std::sin(spec.omega * t));
    }
}
