#include "ipm.hpp"

#include "ccg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace ccg::detail
{
    using Vec = Eigen::VectorXd;
    using Mat = Eigen::MatrixXd;

    int ConeLayout::rows() const
    {
        int r = nonneg;
        for (int q : soc)
            r += q;
        return r;
    }

    SocScaling soc_scaling(const Vec& s, const Vec& z)
    {
        const Eigen::Index q = s.size();
        const double s1 = s.tail(q - 1).norm();
        const double z1 = z.tail(q - 1).norm();
        const double sn = std::sqrt(std::max((s(0) - s1) * (s(0) + s1), std::numeric_limits<double>::min()));
        const double zn = std::sqrt(std::max((z(0) - z1) * (z(0) + z1), std::numeric_limits<double>::min()));

        const Vec sbar = s / sn;
        Vec zbar_j = z / zn;
        zbar_j.tail(q - 1) *= -1.0;  // J z̄
        const double gamma = std::sqrt(0.5 * (1.0 + sbar.dot(z / zn)));

        SocScaling sc;
        sc.beta = std::sqrt(sn / zn);
        sc.wbar = (sbar + zbar_j) / (2.0 * gamma);
        sc.v = sc.wbar;
        sc.v(0) += 1.0;
        sc.v /= std::sqrt(2.0 * (sc.wbar(0) + 1.0));
        return sc;
    }

    namespace
    {
        Vec apply_j(Vec x)
        {
            x.tail(x.size() - 1) *= -1.0;
            return x;
        }
    }

    Vec soc_apply_w(const SocScaling& sc, const Vec& x)
    {
        return sc.beta * (2.0 * sc.v.dot(x) * sc.v - apply_j(x));
    }

    Vec soc_apply_winv(const SocScaling& sc, const Vec& x)
    {
        const Vec jv = apply_j(sc.v);
        return (2.0 * jv.dot(x) * jv - apply_j(x)) / sc.beta;
    }

    double soc_step(const Vec& u, const Vec& du)
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        const Eigen::Index q = u.size();
        const double u1 = u.tail(q - 1).norm();
        const double c = (u(0) - u1) * (u(0) + u1);
        if (c <= 0.0 || u(0) <= 0.0)
            return 0.0;
        const double a = du(0) * du(0) - du.tail(q - 1).squaredNorm();
        const double b = u(0) * du(0) - u.tail(q - 1).dot(du.tail(q - 1));

        const double scale = std::max(du.squaredNorm(), std::numeric_limits<double>::min());
        if (std::abs(a) <= 1e-15 * scale)
            return b < 0.0 ? -c / (2.0 * b) : inf;

        const double disc = b * b - a * c;
        if (disc < 0.0)
            return inf;
        const double sq = std::sqrt(disc);
        const double qq = -(b + std::copysign(sq, b));
        double best = inf;
        if (qq != 0.0)
        {
            const double r1 = qq / a;
            const double r2 = c / qq;
            if (r1 > 0.0)
                best = std::min(best, r1);
            if (r2 > 0.0)
                best = std::min(best, r2);
        }
        return best;
    }

    namespace
    {
        // Scaling state at the current iterate.
        struct Scaling
        {
            Vec lp_d;  // W = diag(lp_d) on the orthant
            std::vector<SocScaling> soc;
            Vec lambda;
        };

        class ConeOps
        {
        public:
            explicit ConeOps(const ConeLayout& layout) : l_(layout.nonneg)
            {
                int off = layout.nonneg;
                for (int q : layout.soc)
                {
                    off_.push_back(off);
                    len_.push_back(q);
                    off += q;
                }
                m_ = off;
            }

            int m() const { return m_; }
            std::size_t num_soc() const { return off_.size(); }
            auto soc_seg(Vec& x, std::size_t k) const { return x.segment(off_[k], len_[k]); }
            auto soc_seg(const Vec& x, std::size_t k) const { return x.segment(off_[k], len_[k]); }
            int soc_offset(std::size_t k) const { return off_[k]; }
            int soc_len(std::size_t k) const { return len_[k]; }

            Vec identity() const
            {
                Vec e = Vec::Zero(m_);
                e.head(l_).setOnes();
                for (int off : off_)
                    e(off) = 1.0;
                return e;
            }

            double min_eig(const Vec& u) const
            {
                double out = std::numeric_limits<double>::infinity();
                if (l_ > 0)
                    out = u.head(l_).minCoeff();
                for (std::size_t k = 0; k < off_.size(); ++k)
                {
                    const auto seg = soc_seg(u, k);
                    out = std::min(out, seg(0) - seg.tail(seg.size() - 1).norm());
                }
                return out;
            }

            Vec circ(const Vec& u, const Vec& v) const
            {
                Vec out(m_);
                out.head(l_) = u.head(l_).cwiseProduct(v.head(l_));
                for (std::size_t k = 0; k < off_.size(); ++k)
                {
                    const auto us = soc_seg(u, k);
                    const auto vs = soc_seg(v, k);
                    auto os = soc_seg(out, k);
                    const int q = len_[k];
                    os(0) = us.dot(vs);
                    os.tail(q - 1) = us(0) * vs.tail(q - 1) + vs(0) * us.tail(q - 1);
                }
                return out;
            }

            // x with u ∘ x = d
            Vec inv_circ(const Vec& u, const Vec& d) const
            {
                Vec out(m_);
                out.head(l_) = d.head(l_).cwiseQuotient(u.head(l_));
                for (std::size_t k = 0; k < off_.size(); ++k)
                {
                    const auto us = soc_seg(u, k);
                    const auto ds = soc_seg(d, k);
                    auto os = soc_seg(out, k);
                    const int q = len_[k];
                    const double u1 = us.tail(q - 1).norm();
                    const double det = (us(0) - u1) * (us(0) + u1);
                    const double x0 = (us(0) * ds(0) - us.tail(q - 1).dot(ds.tail(q - 1))) / det;
                    os(0) = x0;
                    os.tail(q - 1) = (ds.tail(q - 1) - x0 * us.tail(q - 1)) / us(0);
                }
                return out;
            }

            double max_step(const Vec& u, const Vec& du) const
            {
                double alpha = std::numeric_limits<double>::infinity();
                if (l_ > 0)
                    alpha = kernels::nonneg_step(std::span<const double>(u.data(), static_cast<std::size_t>(l_)),
                                                 std::span<const double>(du.data(), static_cast<std::size_t>(l_)));
                for (std::size_t k = 0; k < off_.size(); ++k)
                    alpha = std::min(alpha, soc_step(soc_seg(u, k), soc_seg(du, k)));
                return alpha;
            }

            Scaling identity_scaling() const
            {
                Scaling sc;
                sc.lp_d = Vec::Ones(l_);
                for (int q : len_)
                {
                    SocScaling s;
                    s.beta = 1.0;
                    s.wbar = Vec::Zero(q);
                    s.wbar(0) = 1.0;
                    s.v = s.wbar;
                    sc.soc.push_back(std::move(s));
                }
                sc.lambda = identity();
                return sc;
            }

            Scaling scaling(const Vec& s, const Vec& z) const
            {
                Scaling sc;
                sc.lp_d = (s.head(l_).cwiseQuotient(z.head(l_))).cwiseSqrt();
                for (std::size_t k = 0; k < off_.size(); ++k)
                    sc.soc.push_back(soc_scaling(soc_seg(s, k), soc_seg(z, k)));
                sc.lambda = apply_w(sc, z);
                return sc;
            }

            Vec apply_w(const Scaling& sc, const Vec& x) const
            {
                Vec out(m_);
                out.head(l_) = sc.lp_d.cwiseProduct(x.head(l_));
                for (std::size_t k = 0; k < off_.size(); ++k)
                    soc_seg(out, k) = soc_apply_w(sc.soc[k], soc_seg(x, k));
                return out;
            }

            Vec apply_winv(const Scaling& sc, const Vec& x) const
            {
                Vec out(m_);
                out.head(l_) = x.head(l_).cwiseQuotient(sc.lp_d);
                for (std::size_t k = 0; k < off_.size(); ++k)
                    soc_seg(out, k) = soc_apply_winv(sc.soc[k], soc_seg(x, k));
                return out;
            }

            // W² = β²(2 w̄ w̄ᵀ − J)
            Vec apply_w2(const Scaling& sc, const Vec& x) const
            {
                Vec out(m_);
                out.head(l_) = sc.lp_d.cwiseAbs2().cwiseProduct(x.head(l_));
                for (std::size_t k = 0; k < off_.size(); ++k)
                {
                    const auto& s = sc.soc[k];
                    const Vec xs = soc_seg(x, k);
                    soc_seg(out, k) = s.beta * s.beta * (2.0 * s.wbar.dot(xs) * s.wbar - apply_j(xs));
                }
                return out;
            }

            // W⁻² = β⁻²(2 Jw̄ (Jw̄)ᵀ − J)
            Vec apply_winv2(const Scaling& sc, const Vec& x) const
            {
                Vec out(m_);
                out.head(l_) = x.head(l_).cwiseQuotient(sc.lp_d.cwiseAbs2());
                for (std::size_t k = 0; k < off_.size(); ++k)
                {
                    const auto& s = sc.soc[k];
                    const Vec xs = soc_seg(x, k);
                    const Vec jw = apply_j(s.wbar);
                    soc_seg(out, k) = (2.0 * jw.dot(xs) * jw - apply_j(xs)) / (s.beta * s.beta);
                }
                return out;
            }

            int nonneg() const { return l_; }

        private:
            int l_ = 0;
            int m_ = 0;
            std::vector<int> off_;
            std::vector<int> len_;
        };

        // Reduced KKT system [0 Gᵀ; G −W²] [dx; dz] = [ra; rb] solved through
        // the normal equations Gᵀ W⁻² G dx = ra + Gᵀ W⁻² rb.
        class KktSolver
        {
        public:
            KktSolver(const StandardForm& prob, const ConeOps& ops) : prob_(prob), ops_(ops) {}

            bool factor(const Scaling& sc)
            {
                sc_ = &sc;
                const auto n = static_cast<std::size_t>(prob_.G.cols());
                const auto m = static_cast<std::size_t>(prob_.G.rows());

                Vec weights(static_cast<Eigen::Index>(m));
                weights.head(ops_.nonneg()) = sc.lp_d.cwiseAbs2().cwiseInverse();
                for (std::size_t k = 0; k < ops_.num_soc(); ++k)
                {
                    const double ib2 = 1.0 / (sc.soc[k].beta * sc.soc[k].beta);
                    auto seg = weights.segment(ops_.soc_offset(k), ops_.soc_len(k));
                    seg.setConstant(ib2);
                    seg(0) = -ib2;
                }

                Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> M =
                    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(
                        static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
                kernels::weighted_gram(std::span<const double>(prob_.G.data(), m * n), m, n,
                                       std::span<const double>(weights.data(), m),
                                       std::span<double>(M.data(), n * n));

                for (std::size_t k = 0; k < ops_.num_soc(); ++k)
                {
                    const auto& s = sc.soc[k];
                    const Vec jw = apply_j(s.wbar);
                    const Vec g =
                        prob_.G.middleRows(ops_.soc_offset(k), ops_.soc_len(k)).transpose() * jw;
                    M.noalias() += (2.0 / (s.beta * s.beta)) * g * g.transpose();
                }

                const double scale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
                double reg = 1e-13 * scale;
                for (int attempt = 0; attempt < 6; ++attempt)
                {
                    Mat Mr = M;
                    Mr.diagonal().array() += reg;
                    llt_.compute(Mr);
                    if (llt_.info() == Eigen::Success)
                        return true;
                    reg *= 1e3;
                }
                return false;
            }

            void solve(const Vec& ra, const Vec& rb, Vec& dx, Vec& dz) const
            {
                dx = llt_.solve(ra + prob_.G.transpose() * ops_.apply_winv2(*sc_, rb));
                dz = ops_.apply_winv2(*sc_, prob_.G * dx - rb);
                for (int it = 0; it < 3; ++it)
                {
                    const Vec e1 = ra - prob_.G.transpose() * dz;
                    const Vec e2 = rb - (prob_.G * dx - ops_.apply_w2(*sc_, dz));
                    const double err = std::max(e1.cwiseAbs().maxCoeff(), e2.size() ? e2.cwiseAbs().maxCoeff() : 0.0);
                    const double ref = std::max({1.0, ra.size() ? ra.cwiseAbs().maxCoeff() : 0.0,
                                                 rb.size() ? rb.cwiseAbs().maxCoeff() : 0.0});
                    if (err <= 1e-14 * ref)
                        break;
                    const Vec cx = llt_.solve(e1 + prob_.G.transpose() * ops_.apply_winv2(*sc_, e2));
                    const Vec cz = ops_.apply_winv2(*sc_, prob_.G * cx - e2);
                    dx += cx;
                    dz += cz;
                }
            }

        private:
            const StandardForm& prob_;
            const ConeOps& ops_;
            const Scaling* sc_ = nullptr;
            Eigen::LLT<Mat> llt_;
        };

        struct Direction
        {
            Vec dx, ds, dz;
            double dtau = 0.0;
            double dkappa = 0.0;
        };
    }

    IpmResult solve_standard_form(const StandardForm& prob, const IpmSettings& settings)
    {
        const ConeOps ops(prob.cones);
        const Eigen::Index n = prob.G.cols();
        const Eigen::Index m = prob.G.rows();
        IpmResult res;

        if (m == 0)
        {
            res.x = Vec::Zero(n);
            res.s = Vec(0);
            res.z = Vec(0);
            const bool flat = n == 0 || prob.c.cwiseAbs().maxCoeff() <= settings.residual_tol;
            res.status = flat ? IpmStatus::Optimal : IpmStatus::DualInfeasible;
            return res;
        }
        if (n == 0)
        {
            // nothing to optimize: feasible iff h ∈ K
            res.x = Vec(0);
            res.s = prob.h;
            res.z = Vec::Zero(m);
            const double slack = ops.min_eig(prob.h);
            res.status = slack >= -settings.residual_tol * std::max(1.0, prob.h.norm()) ? IpmStatus::Optimal
                                                                                         : IpmStatus::PrimalInfeasible;
            return res;
        }

        const double hnorm = std::max(1.0, prob.h.norm());
        const double cnorm = std::max(1.0, prob.c.norm());
        const double degree = static_cast<double>(prob.cones.degree());
        const Vec e = ops.identity();

        KktSolver kkt(prob, ops);

        // Initial point: least-squares primal/dual, shifted into the cone.
        Vec x, s, z;
        {
            const Scaling id = ops.identity_scaling();
            if (!kkt.factor(id))
                return res;
            Vec zt;
            kkt.solve(Vec::Zero(n), prob.h, x, zt);
            s = -zt;
            Vec xt;
            kkt.solve(-prob.c, Vec::Zero(m), xt, z);
            const double ap = -ops.min_eig(s);
            if (ap >= -1e-8)
                s += (1.0 + ap) * e;
            const double ad = -ops.min_eig(z);
            if (ad >= -1e-8)
                z += (1.0 + ad) * e;
        }
        double tau = 1.0;
        double kappa = 1.0;

        const double cert_tol = std::max(settings.residual_tol, 1e-8);

        // Best iterate seen so far, used as a reduced-accuracy answer when the
        // iteration stalls after getting close.
        constexpr double loose = 1e-6;
        double best_merit = std::numeric_limits<double>::infinity();
        IpmResult best;

        const auto fallback = [&](const IpmResult& current) {
            if (best_merit <= loose)
                return best;
            IpmResult out = current;
            out.status = IpmStatus::Failed;
            return out;
        };

        for (int iter = 0;; ++iter)
        {
            res.iterations = iter;
            const Vec rx = prob.G.transpose() * z + prob.c * tau;
            const Vec rz = prob.G * x + s - prob.h * tau;
            const double cx = prob.c.dot(x);
            const double hz = prob.h.dot(z);
            const double rt = kappa + cx + hz;

            const double pres = rz.norm() / tau / hnorm;
            const double dres = rx.norm() / tau / cnorm;
            const double pcost = cx / tau;
            const double dcost = -hz / tau;
            const double gap = s.dot(z) / (tau * tau);
            double relgap = std::numeric_limits<double>::infinity();
            if (pcost < 0.0)
                relgap = gap / -pcost;
            else if (dcost > 0.0)
                relgap = gap / dcost;

            res.pres = pres;
            res.dres = dres;
            res.pcost = pcost;
            res.dcost = dcost;
            res.x = x / tau;
            res.s = s / tau;
            res.z = z / tau;

            const double merit = std::max({pres, dres, std::min(gap, relgap)});
            if (std::isfinite(merit) && merit < best_merit)
            {
                best_merit = merit;
                best = res;
                best.status = IpmStatus::Optimal;
            }

            if (pres <= settings.residual_tol && dres <= settings.residual_tol &&
                (gap <= settings.gap_tol || relgap <= settings.gap_tol))
            {
                res.status = IpmStatus::Optimal;
                return res;
            }

            if (kappa > tau)
            {
                res.x = x;
                res.s = s;
                res.z = z;
                if (hz < 0.0 && (prob.G.transpose() * z).norm() <= cert_tol * -hz * cnorm)
                {
                    res.status = IpmStatus::PrimalInfeasible;
                    return res;
                }
                if (cx < 0.0 && (prob.G * x + s).norm() <= cert_tol * -cx * hnorm)
                {
                    res.status = IpmStatus::DualInfeasible;
                    return res;
                }
            }

            // diverging after having been close: numerical limit reached
            if (iter >= settings.max_iterations || (best_merit <= loose && merit > 1e3 * best_merit))
                return fallback(res);

            const Scaling sc = ops.scaling(s, z);
            if (!kkt.factor(sc))
                return fallback(res);

            Vec x1, z1;
            kkt.solve(-prob.c, prob.h, x1, z1);
            const double denom = prob.c.dot(x1) + prob.h.dot(z1) - kappa / tau;

            const auto direction = [&](double eta, const Vec& d_s, double d_k) {
                Direction d;
                const Vec wu = ops.apply_w(sc, ops.inv_circ(sc.lambda, d_s));
                Vec x2, z2;
                kkt.solve(-eta * rx, -eta * rz - wu, x2, z2);
                d.dtau = (-eta * rt - d_k / tau - prob.c.dot(x2) - prob.h.dot(z2)) / denom;
                d.dx = x2 + d.dtau * x1;
                d.dz = z2 + d.dtau * z1;
                d.ds = wu - ops.apply_w2(sc, d.dz);
                d.dkappa = (d_k - kappa * d.dtau) / tau;
                return d;
            };

            const auto step_to_boundary = [&](const Direction& d) {
                double a = std::min(ops.max_step(s, d.ds), ops.max_step(z, d.dz));
                if (d.dtau < 0.0)
                    a = std::min(a, -tau / d.dtau);
                if (d.dkappa < 0.0)
                    a = std::min(a, -kappa / d.dkappa);
                return a;
            };

            const double mu = (s.dot(z) + tau * kappa) / (degree + 1.0);
            const Vec lam_sq = ops.circ(sc.lambda, sc.lambda);

            const Direction aff = direction(1.0, -lam_sq, -tau * kappa);
            const double alpha_aff = std::min(1.0, step_to_boundary(aff));
            const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

            const Vec corr = ops.circ(ops.apply_winv(sc, aff.ds), ops.apply_w(sc, aff.dz));
            const Vec d_s = -lam_sq - corr + sigma * mu * e;
            const double d_k = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
            const Direction dir = direction(1.0 - sigma, d_s, d_k);

            const double alpha = std::min(1.0, 0.99 * step_to_boundary(dir));
            if (!(alpha > 1e-12))
                return fallback(res);

            x += alpha * dir.dx;
            s += alpha * dir.ds;
            z += alpha * dir.dz;
            tau += alpha * dir.dtau;
            kappa += alpha * dir.dkappa;

            if (!std::isfinite(tau) || !std::isfinite(kappa) || !x.allFinite() || !z.allFinite())
                return fallback(res);
        }
    }
}
