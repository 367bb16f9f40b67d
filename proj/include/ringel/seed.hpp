#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace ringel
{
    /// Pipeline stages that consume randomness. The numeric values are part of
    /// the reproducibility contract: changing them changes every certificate.
    enum class Stage : std::uint64_t
    {
        Sampler = 1,
        TreeEmbedding = 2,
        ColorCompletion = 3,
        StarForest = 4,
        DistinctSums = 5,
        Restart = 6,
        Repair = 7,
        LeafAssignment = 8,
    };

    inline auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// derive_seed(seed, stage, index) = splitmix64(seed XOR splitmix64(stage * 2^32 XOR index)).
    inline auto derive_seed(std::uint64_t seed, Stage stage, std::uint64_t index = 0) -> std::uint64_t
    {
        auto tag = (static_cast<std::uint64_t>(stage) << 32) ^ index;
        return splitmix64(seed ^ splitmix64(tag));
    }

    using Rng = std::mt19937_64;

    /// Uniform integer in [0, bound). Avoids std::uniform_int_distribution, whose
    /// output is implementation-defined and would break byte-identical runs.
    inline auto uniform_below(Rng & rng, std::uint64_t bound) -> std::uint64_t
    {
        auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        while (true) {
            auto x = rng();
            if (x < limit)
                return x % bound;
        }
    }

    template <typename T>
    void shuffle(std::vector<T> & items, Rng & rng)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[uniform_below(rng, i)]);
    }

    inline auto shuffled_range(int lo, int hi, std::uint64_t seed) -> std::vector<int>
    {
        std::vector<int> values(static_cast<std::size_t>(std::max(0, hi - lo)));
        std::iota(values.begin(), values.end(), lo);
        Rng rng(seed);
        shuffle(values, rng);
        return values;
    }
}
