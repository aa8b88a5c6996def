#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace shapgraph {

// All randomized stages draw from one root seed; substreams are derived by
// counter so results do not depend on evaluation or scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(splitmix64(root) ^ splitmix64(stream + 0x51ed270b0a5b2c3fULL));
}

// mt19937_64 wrapper with hand-rolled distributions. std::shuffle and the
// std distributions are implementation-defined; these recipes are bit-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    // Uniform integer in [0, bound). Rejection keeps the draw unbiased.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    bool bernoulli(double p) { return uniform() < p; }

    double gaussian() {
        // Box-Muller; one draw per call keeps the stream simple to reason about.
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Sample k distinct indices from [0, n) without replacement.
    std::vector<int> sample_indices(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        shuffle(pool);
        pool.resize(static_cast<std::size_t>(k));
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace shapgraph
