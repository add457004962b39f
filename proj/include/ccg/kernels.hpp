#ifndef CCG_KERNELS_HPP_
#define CCG_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

/**
 * @file kernels.hpp
 * @brief Dense arithmetic inner loops of the interior-point backend.
 *
 * Every kernel has a scalar reference implementation and, where the target
 * supports it, an AVX2/FMA (x86-64) or NEON (aarch64) variant. The variant is
 * picked once at first use from the CPU feature bits; the environment
 * variable CCG_KERNELS=scalar|avx2|neon overrides the choice.
 */

namespace ccg::kernels
{
    enum class Isa
    {
        Scalar,
        Avx2,
        Neon
    };

    std::string_view isa_name(Isa isa);

    /// ISAs compiled into this binary and supported by the running CPU.
    std::vector<Isa> available_isas();

    Isa active_isa();

    /// Pins the dispatch target. Throws std::invalid_argument if unavailable.
    void set_active_isa(Isa isa);

    /**
     * out += rowsᵀ · diag(weights) · rows
     *
     * `rows` is row-major m×n, `out` is row-major n×n. Weights may be
     * negative (second-order cone heads contribute -1/β²).
     */
    void weighted_gram(std::span<const double> rows, std::size_t m, std::size_t n,
                       std::span<const double> weights, std::span<double> out);

    /// Largest α in [0, +inf] with u + α·du >= 0 elementwise (u > 0 assumed).
    double nonneg_step(std::span<const double> u, std::span<const double> du);

    // Per-ISA entry points; exposed for equivalence tests.
    namespace scalar
    {
        void weighted_gram(const double* rows, std::size_t m, std::size_t n,
                           const double* weights, double* out);
        double nonneg_step(const double* u, const double* du, std::size_t len);
    }

    namespace avx2
    {
        void weighted_gram(const double* rows, std::size_t m, std::size_t n,
                           const double* weights, double* out);
        double nonneg_step(const double* u, const double* du, std::size_t len);
    }

    namespace neon
    {
        void weighted_gram(const double* rows, std::size_t m, std::size_t n,
                           const double* weights, double* out);
        double nonneg_step(const double* u, const double* du, std::size_t len);
    }
}

#endif
