#include "ccg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ccg::kernels
{
    namespace
    {
        bool cpu_supports(Isa isa)
        {
            switch (isa)
            {
            case Isa::Scalar:
                return true;
            case Isa::Avx2:
#if defined(CCG_KERNELS_AVX2) && (defined(__GNUC__) || defined(__clang__))
                return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
                return false;
#endif
            case Isa::Neon:
#if defined(CCG_KERNELS_NEON)
                return true;
#else
                return false;
#endif
            }
            return false;
        }

        Isa detect()
        {
            if (const char* env = std::getenv("CCG_KERNELS"))
            {
                const std::string want(env);
                for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
                {
                    if (want == isa_name(isa) && cpu_supports(isa))
                        return isa;
                }
            }
            if (cpu_supports(Isa::Avx2))
                return Isa::Avx2;
            if (cpu_supports(Isa::Neon))
                return Isa::Neon;
            return Isa::Scalar;
        }

        std::atomic<Isa>& current()
        {
            static std::atomic<Isa> isa{detect()};
            return isa;
        }
    }

    std::string_view isa_name(Isa isa)
    {
        switch (isa)
        {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
        case Isa::Neon:
            return "neon";
        }
        return "unknown";
    }

    std::vector<Isa> available_isas()
    {
        std::vector<Isa> out;
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        {
            if (cpu_supports(isa))
                out.push_back(isa);
        }
        return out;
    }

    Isa active_isa() { return current().load(std::memory_order_relaxed); }

    void set_active_isa(Isa isa)
    {
        if (!cpu_supports(isa))
            throw std::invalid_argument("kernels: ISA '" + std::string(isa_name(isa)) + "' not available");
        current().store(isa, std::memory_order_relaxed);
    }

    void weighted_gram(std::span<const double> rows, std::size_t m, std::size_t n,
                       std::span<const double> weights, std::span<double> out)
    {
        if (rows.size() != m * n || weights.size() != m || out.size() != n * n)
            throw std::invalid_argument("weighted_gram: inconsistent extents");
        switch (active_isa())
        {
#if defined(CCG_KERNELS_AVX2)
        case Isa::Avx2:
            avx2::weighted_gram(rows.data(), m, n, weights.data(), out.data());
            return;
#endif
#if defined(CCG_KERNELS_NEON)
        case Isa::Neon:
            neon::weighted_gram(rows.data(), m, n, weights.data(), out.data());
            return;
#endif
        default:
            scalar::weighted_gram(rows.data(), m, n, weights.data(), out.data());
        }
    }

    double nonneg_step(std::span<const double> u, std::span<const double> du)
    {
        if (u.size() != du.size())
            throw std::invalid_argument("nonneg_step: inconsistent extents");
        switch (active_isa())
        {
#if defined(CCG_KERNELS_AVX2)
        case Isa::Avx2:
            return avx2::nonneg_step(u.data(), du.data(), u.size());
#endif
#if defined(CCG_KERNELS_NEON)
        case Isa::Neon:
            return neon::nonneg_step(u.data(), du.data(), u.size());
#endif
        default:
            return scalar::nonneg_step(u.data(), du.data(), u.size());
        }
    }
}
