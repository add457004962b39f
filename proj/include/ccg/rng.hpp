#ifndef CCG_RNG_HPP_
#define CCG_RNG_HPP_

#include <cstdint>
#include <random>

namespace ccg
{
    /// SplitMix64 finalizer; used to derive independent stream seeds.
    constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0)
    {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Seeded generator that can be split into named substreams, so that
    /// consumers of one stream never perturb another.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

        Rng split(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

        std::uint64_t seed() const { return seed_; }
        std::mt19937_64& engine() { return engine_; }

        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
        double normal() { return std::normal_distribution<double>()(engine_); }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
    };
}

#endif
