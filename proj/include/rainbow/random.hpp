#pragma once

#include <cstdint>
#include <limits>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace rainbow {

[[nodiscard]] constexpr auto splitmix64(std::uint64_t x) -> std::uint64_t
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Mixes a base seed with a sequence of indices (trial, attempt, ...).
[[nodiscard]] constexpr auto derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) -> std::uint64_t
{
    std::uint64_t h = splitmix64(seed);
    for (auto p : parts)
        h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

/// mt19937_64 with platform-independent bounded draws; the standard
/// distributions are implementation-defined, which would break
/// cross-platform reproducibility of seeded runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform in [0, n), n > 0.
    auto below(std::uint64_t n) -> std::uint64_t
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % n;
    }

    template <typename T_>
    void shuffle(std::vector<T_> & items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace rainbow
