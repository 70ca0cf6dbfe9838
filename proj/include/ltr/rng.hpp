#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ltr {

// SplitMix64 finalizer; used to derive independent stream seeds from a
// master seed plus indices so parallel schedules cannot change results.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t a) {
    return splitmix64(splitmix64(master) ^ a);
}

inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
    return splitmix64(derive_seed(master, a) ^ splitmix64(b));
}

inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b, uint64_t c) {
    return splitmix64(derive_seed(master, a, b) ^ splitmix64(c ^ 0x5bd1e995ULL));
}

// Deterministic generator wrapper. mt19937_64 output is pinned by the
// standard, so identical seeds give identical streams on every platform;
// we avoid std::uniform_*_distribution for the same reason.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // Uniform on (0,1]; zero is excluded so alpha/t never divides by zero.
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n).
    uint64_t below(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ltr
