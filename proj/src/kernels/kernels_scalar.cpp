#include "ccg/kernels.hpp"

#include <limits>

namespace ccg::kernels::scalar
{
    void weighted_gram(const double* rows, std::size_t m, std::size_t n,
                       const double* weights, double* out)
    {
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
                for (std::size_t k = 0; k < n; ++k)
                    out_row[k] += a * row[k];
            }
        }
    }

    double nonneg_step(const double* u, const double* du, std::size_t len)
    {
        double alpha = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < len; ++i)
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
