#ifndef CUTROUTE_RANDOM_HPP
#define CUTROUTE_RANDOM_HPP

// Portable, bit-reproducible randomness. std::mt19937_64's output sequence is
// fixed by the standard, but the std distributions and std::shuffle are not,
// so bounded draws and shuffles are done here.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace cutroute {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent sub-seed for a named purpose ("instance", "order", "tree").
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) {
    std::uint64_t h = splitmix64(seed);
    for (char c : purpose)
        h = splitmix64(h ^ static_cast<unsigned char>(c));
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // reject the biased tail of the 64-bit range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform in [0, 1) with 53 bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cutroute

#endif // CUTROUTE_RANDOM_HPP
