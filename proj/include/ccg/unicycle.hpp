#ifndef CCG_UNICYCLE_HPP_
#define CCG_UNICYCLE_HPP_

#include "ccg/estimator.hpp"
#include "ccg/rng.hpp"
#include "ccg/set.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace ccg
{
    struct UnicycleState
    {
        double p = 0.0;
        double q = 0.0;
        double theta = 0.0;

        Eigen::Vector2d position() const { return {p, q}; }
    };

    /// Wraps to (−π, π].
    double wrap_angle(double theta);

    /// [[cos θ, −l sin θ], [sin θ, l cos θ]] = Rot(θ) diag(1, l)
    Eigen::Matrix2d heading_matrix(double theta, double l);

    /// Position of the front point moves by Ts A(θ) u; heading by Ts w.
    UnicycleState dynamics_step(const UnicycleState& s, const Eigen::Vector2d& u, double Ts, double l);

    /// A(θ̂)⁻¹ / Ts · (τ(k+1) − τ(k)/2 − p̂/2 + d)
    Eigen::Vector2d controller(const Eigen::Vector2d& p_hat, double theta_hat, const Eigen::Vector2d& tau_k,
                               const Eigen::Vector2d& tau_next, const Eigen::Vector2d& d, double Ts, double l);

    /// θ + Uniform(−δ, δ), wrapped.
    double compass_measure(double theta, Rng& rng, double delta);

    struct Beacon
    {
        Eigen::Vector2d position;
        double detect_radius = 0.0;
        double noise = 0.0;  // ε_r
    };

    struct BeaconReading
    {
        double range = 0.0;
        /// disk of radius range + ε_r around the beacon
        ConvexSetCCG set;
    };

    /// Range reading if within detect_radius; the noise draw is consumed
    /// only on detection.
    std::optional<BeaconReading> beacon_measure(const Eigen::Vector2d& position, const Beacon& beacon, Rng& rng);

    struct VertexModel
    {
        std::vector<VertexAffineMap> vertices;
        /// ℓ2 ball covering the arc sagitta beyond the chord
        ConvexSetCCG remainder;
    };

    /// Offsets Ts A(θ̂ ∓ δ) u with identity dynamics, plus the remainder
    /// ball of radius Ts ‖diag(1, l) u‖ (1 − cos δ).
    VertexModel build_vertex_maps(double theta_hat, double delta, const Eigen::Vector2d& u, double Ts, double l);

    enum class TrajectoryKind
    {
        Figure8,
        Spiral
    };

    std::string_view to_string(TrajectoryKind kind);
    std::optional<TrajectoryKind> parse_trajectory_kind(std::string_view s);

    struct TrajectorySpec
    {
        TrajectoryKind kind = TrajectoryKind::Figure8;
        Eigen::Vector2d center{14.0, 17.0};
        Eigen::Vector2d amplitudes{12.0, 10.0};
        double omega = 0.0;
        double r0 = 2.0;
        double growth = 0.8;

        static TrajectorySpec figure8();
        static TrajectorySpec spiral();
    };

    Eigen::Vector2d reference(const TrajectorySpec& spec, int k, double Ts);
}

#endif
