#include "ccg/kernels.hpp"

#include <arm_neon.h>

#include <limits>

namespace ccg::kernels::neon
{
    void weighted_gram(const double* rows, std::size_t m, std::size_t n,
                       const double* weights, double* out)
    {
        const std::size_t n2 = n & ~static_cast<std::size_t>(1);
        for (std::size_t i = 0; i < m; ++i)
        {
            const double* row = rows + i * n;
            const double wi = weights[i];
            if (wi == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
            {
                const double a = wi * row[j];
                if (a == 0.0)
                    continue;
                double* out_row = out + j * n;
                const float64x2_t av = vdupq_n_f64(a);
                std::size_t k = 0;
                for (; k < n2; k += 2)
                    vst1q_f64(out_row + k, vfmaq_f64(vld1q_f64(out_row + k), av, vld1q_f64(row + k)));
                for (; k < n; ++k)
                    out_row[k] += a * row[k];
            }
        }
    }

    double nonneg_step(const double* u, const double* du, std::size_t len)
    {
        const float64x2_t zero = vdupq_n_f64(0.0);
        const float64x2_t inf = vdupq_n_f64(std::numeric_limits<double>::infinity());
        float64x2_t best = inf;
        std::size_t i = 0;
        for (; i + 2 <= len; i += 2)
        {
            const float64x2_t d = vld1q_f64(du + i);
            const uint64x2_t neg = vcltq_f64(d, zero);
            const float64x2_t safe_d = vbslq_f64(neg, d, vdupq_n_f64(-1.0));
            const float64x2_t ratio = vdivq_f64(vnegq_f64(vld1q_f64(u + i)), safe_d);
            best = vminq_f64(best, vbslq_f64(neg, ratio, inf));
        }
        double alpha = vminvq_f64(best);
        for (; i < len; ++i)
        {
            if (du[i] < 0.0)
            {
                const double r = -u[i] / du[i];
                if (r < alpha)
                    alpha = r;
            }
        }
        return alpha;
    }
}
