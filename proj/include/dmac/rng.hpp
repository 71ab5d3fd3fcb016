#pragma once

// Deterministic random number generation. Everything that consumes
// randomness derives its stream from a 64-bit seed through mix64/derive_seed,
// so results are bit-for-bit reproducible across platforms and thread counts.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dmac {

// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for an independent stream identified by `stream`.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return mix64(seed ^ mix64(stream ^ 0x517cc1b727220a95ULL));
}

/// SplitMix64 generator.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from [0, n), by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const uint64_t threshold = -n % n;  // 2^64 mod n
        for (;;) {
            const uint64_t v = next();
            if (v >= threshold) return v % n;
        }
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform random permutation of [0, n) via Fisher-Yates.
    std::vector<uint32_t> permutation(uint32_t n) {
        std::vector<uint32_t> p(n);
        std::iota(p.begin(), p.end(), 0u);
        for (uint32_t i = n; i > 1; --i) {
            const uint32_t j = static_cast<uint32_t>(below(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    /// k distinct values from [0, n), Floyd's algorithm. Order unspecified.
    std::vector<uint32_t> sample_distinct(uint32_t k, uint32_t n) {
        if (k > n) throw std::invalid_argument("Rng::sample_distinct: k > n");
        std::vector<uint32_t> out;
        out.reserve(k);
        for (uint32_t j = n - k; j < n; ++j) {
            uint32_t v = static_cast<uint32_t>(below(j + 1));
            bool seen = false;
            for (uint32_t x : out)
                if (x == v) { seen = true; break; }
            out.push_back(seen ? j : v);
        }
        return out;
    }

  private:
    uint64_t state_;
};

}  // namespace dmac
