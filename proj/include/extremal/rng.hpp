#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace extremal {

// splitmix64: the 64-bit shift-xor-multiply generator from Steele/Lea/Flood's
// "Fast splittable pseudorandom number generators" as circulated in its
// public-domain C form. Chosen because it is tiny, seedable from a single
// word, and has no state beyond one uint64, which keeps runs reproducible
// across platforms.
//
// Test vectors, seed 42 (frozen in tests/test_io_cli.cpp and in the README):
//   0xbdd732262feb6e95, 0x28efe333b266f103, 0x47526757130f9f52, 0x581ce1ff0e4ae394
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // unbiased integer in [0, n) by rejection on the low remainder zone
    std::uint64_t below(std::uint64_t n) {
        require(n > 0, "SplitMix64::below: n must be positive");
        std::uint64_t threshold = (0ULL - n) % n; // 2^64 mod n
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    // real in [0,1) with 53 random bits
    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derived streams for Monte-Carlo trials: sub-seed = seed XOR trial index.
    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
        return SplitMix64(seed ^ trial);
    }

  private:
    std::uint64_t state_;
};

} // namespace extremal
