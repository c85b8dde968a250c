#pragma once

#include "rotsync/word.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace rotsync {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for sample `index` of a batch run with master seed `seed`. Every
/// sample owns its stream, so results do not depend on the worker count.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., n - 1}.
    std::uint64_t below(std::uint64_t n)
    {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampler for a probability vector.
class LetterSampler {
public:
    explicit LetterSampler(const std::vector<double>& nu);

    Letter operator()(Rng& rng) const;

private:
    std::vector<double> cumulative_;
};

/// i.i.d. word of length n, letter i with probability nu[i].
Word sample_word(const std::vector<double>& nu, std::size_t n, std::uint64_t seed);
Word sample_word(const LetterSampler& sampler, std::size_t n, Rng& rng);

} // namespace rotsync
