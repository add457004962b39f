#include "ccg/kernels.hpp"
#include "ccg/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace ccg;
using kernels::Isa;

namespace
{
    using GramFn = void (*)(const double*, std::size_t, std::size_t, const double*, double*);
    using StepFn = double (*)(const double*, const double*, std::size_t);

    struct Variant
    {
        Isa isa;
        GramFn gram;
        StepFn step;
    };

    std::vector<Variant> compiled_variants()
    {
        std::vector<Variant> out;
        for (Isa isa : kernels::available_isas())
        {
            switch (isa)
            {
            case Isa::Scalar:
                out.push_back({isa, kernels::scalar::weighted_gram, kernels::scalar::nonneg_step});
                break;
            case Isa::Avx2:
#if defined(CCG_KERNELS_AVX2)
                out.push_back({isa, kernels::avx2::weighted_gram, kernels::avx2::nonneg_step});
#endif
                break;
            case Isa::Neon:
#if defined(CCG_KERNELS_NEON)
                out.push_back({isa, kernels::neon::weighted_gram, kernels::neon::nonneg_step});
#endif
                break;
            }
        }
        return out;
    }

    std::vector<double> draw(std::size_t n, Rng& rng, double lo = -1.0, double hi = 1.0)
    {
        std::vector<double> v(n);
        for (auto& x : v)
            x = rng.uniform(lo, hi);
        return v;
    }

    // Plain triple loop, no blocking, no symmetry shortcut.
    std::vector<double> naive_gram(const std::vector<double>& rows, std::size_t m, std::size_t n,
                                   const std::vector<double>& w, std::vector<double> out)
    {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t r = 0; r < m; ++r)
                    out[i * n + j] += rows[r * n + i] * w[r] * rows[r * n + j];
        return out;
    }
}

TEST_CASE("scalar is always available and listed first")
{
    const auto isas = kernels::available_isas();
    REQUIRE_FALSE(isas.empty());
    CHECK(isas.front() == Isa::Scalar);
    CHECK(kernels::isa_name(Isa::Avx2) == "avx2");
}

TEST_CASE("weighted_gram variants match the naive triple loop")
{
    Rng rng(11);
    for (const auto& var : compiled_variants())
    {
        CAPTURE(kernels::isa_name(var.isa));
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 13u, 16u, 31u})
        {
            for (std::size_t m : {0u, 1u, 3u, 8u, 17u})
            {
                const auto rows = draw(m * n, rng);
                const auto w = draw(m, rng, -2.0, 3.0);
                const auto init = draw(n * n, rng);
                const auto want = naive_gram(rows, m, n, w, init);
                auto got = init;
                var.gram(rows.data(), m, n, w.data(), got.data());
                for (std::size_t i = 0; i < got.size(); ++i)
                    REQUIRE(got[i] == doctest::Approx(want[i]).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("nonneg_step variants agree bit for bit with scalar")
{
    Rng rng(12);
    for (const auto& var : compiled_variants())
    {
        CAPTURE(kernels::isa_name(var.isa));
        for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 9u, 64u, 101u})
        {
            const auto u = draw(len, rng, 0.1, 2.0);
            const auto du = draw(len, rng, -3.0, 3.0);
            CHECK(var.step(u.data(), du.data(), len) == kernels::scalar::nonneg_step(u.data(), du.data(), len));
        }
    }
}

TEST_CASE("nonneg_step semantics")
{
    const std::vector<double> u{1.0, 2.0, 0.5, 4.0};
    CHECK(std::isinf(kernels::nonneg_step(u, std::vector<double>{0.0, 1.0, 2.0, 0.0})));
    CHECK(kernels::nonneg_step(u, std::vector<double>{-1.0, -1.0, 1.0, -8.0}) == doctest::Approx(0.5));
    CHECK(kernels::nonneg_step(u, std::vector<double>{0.0, 0.0, -2.0, 0.0}) == doctest::Approx(0.25));
}

TEST_CASE("dispatch can be pinned to every available ISA")
{
    const Isa before = kernels::active_isa();
    for (Isa isa : kernels::available_isas())
    {
        kernels::set_active_isa(isa);
        CHECK(kernels::active_isa() == isa);
        std::vector<double> rows{1.0, 2.0, 3.0, 4.0};
        std::vector<double> w{1.0, -1.0};
        std::vector<double> out(4, 0.0);
        kernels::weighted_gram(rows, 2, 2, w, out);
        CHECK(out[0] == doctest::Approx(1.0 - 9.0));
        CHECK(out[1] == doctest::Approx(2.0 - 12.0));
        CHECK(out[3] == doctest::Approx(4.0 - 16.0));
    }
    const auto isas = kernels::available_isas();
    for (Isa isa : {Isa::Avx2, Isa::Neon})
        if (std::find(isas.begin(), isas.end(), isa) == isas.end())
            CHECK_THROWS_AS(kernels::set_active_isa(isa), std::invalid_argument);
    kernels::set_active_isa(before);
}
