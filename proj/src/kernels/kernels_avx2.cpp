#include "ccg/kernels.hpp"

#include <immintrin.h>

#include <limits>

namespace ccg::kernels::avx2
{
    void weighted_gram(const double* rows, std::size_t m, std::size_t n,
                       const double* weights, double* out)
    {
        const std::size_t n4 = n & ~static_cast<std::size_t>(3);
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
                const __m256d av = _mm256_set1_pd(a);
                std::size_t k = 0;
                for (; k < n4; k += 4)
                {
                    __m256d acc = _mm256_loadu_pd(out_row + k);
                    acc = _mm256_fmadd_pd(av, _mm256_loadu_pd(row + k), acc);
                    _mm256_storeu_pd(out_row + k, acc);
                }
                for (; k < n; ++k)
                    out_row[k] += a * row[k];
            }
        }
    }

    double nonneg_step(const double* u, const double* du, std::size_t len)
    {
        const __m256d zero = _mm256_setzero_pd();
        const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        __m256d best = inf;
        std::size_t i = 0;
        for (; i + 4 <= len; i += 4)
        {
            const __m256d d = _mm256_loadu_pd(du + i);
            const __m256d neg = _mm256_cmp_pd(d, zero, _CMP_LT_OQ);
            // lanes with du >= 0 divide by -1 and are then masked to +inf
            const __m256d safe_d = _mm256_blendv_pd(_mm256_set1_pd(-1.0), d, neg);
            const __m256d ratio = _mm256_div_pd(_mm256_sub_pd(zero, _mm256_loadu_pd(u + i)), safe_d);
            best = _mm256_min_pd(best, _mm256_blendv_pd(inf, ratio, neg));
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, best);
        double alpha = lanes[0];
        for (int l = 1; l < 4; ++l)
            alpha = lanes[l] < alpha ? lanes[l] : alpha;
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
