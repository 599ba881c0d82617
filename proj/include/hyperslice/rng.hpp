// rng.hpp - deterministic counter-based pseudo randomness (splitmix64)
//
// All randomized routines in the library take a single 64-bit seed and derive
// independent streams with derive_seed(seed, tag).  No standard-library
// distributions are used anywhere, so results are identical across platforms
// and compilers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace hyperslice {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Derives the seed of an independent child stream.  Chaining derive_seed with
// distinct tags never reuses a stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed + 0x9E3779B97F4A7C15ull * (tag + 1));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    for (std::uint64_t tag : path) seed = derive_seed(seed, tag);
    return seed;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform value in [0, n).  Rejection sampling keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = u64();
        while (v >= limit) v = u64();
        return v % n;
    }

    // Bernoulli draw with probability num/den (integer threshold on a u64).
    bool bernoulli(std::uint64_t num, std::uint64_t den) {
        if (num >= den) return true;
        if (num == 0) return false;
        return below(den) < num;
    }

    // Bernoulli draw with double probability p via a fixed-point threshold.
    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        const double scaled = p * 9007199254740992.0;  // 2^53
        const std::uint64_t threshold = static_cast<std::uint64_t>(scaled);
        return (u64() >> 11) < threshold;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Sorted uniform random k-subset of {0..n-1} via partial Fisher-Yates.
    std::vector<int> subset(int n, int k);

    Rng split(std::uint64_t tag) const { return Rng(derive_seed(state_, tag)); }

  private:
    std::uint64_t state_;
};

inline std::vector<int> Rng::subset(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace hyperslice
