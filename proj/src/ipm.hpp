#ifndef CCG_SRC_IPM_HPP_
#define CCG_SRC_IPM_HPP_

// Internal: standard-form conic program
//
//     minimize cᵀx  subject to  G x + s = h,  s ∈ K,
//     K = R₊^l × Q^{q₁} × … × Q^{q_k},
//
// solved on the homogeneous self-dual embedding. Rows of G are ordered with
// the nonnegative orthant first, then each second-order cone contiguously
// (head first).

#include <Eigen/Dense>

#include <vector>

namespace ccg::detail
{
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    struct ConeLayout
    {
        int nonneg = 0;
        std::vector<int> soc;

        int rows() const;
        int degree() const { return nonneg + static_cast<int>(soc.size()); }
    };

    struct StandardForm
    {
        RowMatrix G;
        Eigen::VectorXd h;
        Eigen::VectorXd c;
        ConeLayout cones;
    };

    enum class IpmStatus
    {
        Optimal,
        PrimalInfeasible,
        DualInfeasible,
        Failed
    };

    struct IpmSettings
    {
        double residual_tol = 1e-8;
        double gap_tol = 1e-8;
        int max_iterations = 100;
    };

    struct IpmResult
    {
        IpmStatus status = IpmStatus::Failed;
        Eigen::VectorXd x;
        Eigen::VectorXd s;
        Eigen::VectorXd z;
        double pcost = 0.0;
        double dcost = 0.0;
        double pres = 0.0;
        double dres = 0.0;
        int iterations = 0;
    };

    IpmResult solve_standard_form(const StandardForm& prob, const IpmSettings& settings);

    // Cone primitives, exposed for unit tests.

    /// Nesterov–Todd scaling for a single second-order cone at (s, z).
    struct SocScaling
    {
        double beta = 1.0;
        Eigen::VectorXd wbar;  // scaling point, wbarᵀ J wbar = 1
        Eigen::VectorXd v;     // W = beta (2 v vᵀ − J)
    };

    SocScaling soc_scaling(const Eigen::VectorXd& s, const Eigen::VectorXd& z);
    Eigen::VectorXd soc_apply_w(const SocScaling& sc, const Eigen::VectorXd& x);
    Eigen::VectorXd soc_apply_winv(const SocScaling& sc, const Eigen::VectorXd& x);

    /// Largest α ≥ 0 (possibly +inf) with u + α du in the second-order cone.
    double soc_step(const Eigen::VectorXd& u, const Eigen::VectorXd& du);
}

#endif
