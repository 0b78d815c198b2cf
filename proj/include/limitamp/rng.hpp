#pragma once

// Splittable counter-based randomness. Every sampler takes an explicit
// 64-bit seed; per-sample streams are derived as hashes of
// (seed, stream-id, sample-index) so suite reports are reproducible and
// independent of evaluation order.

#include "limitamp/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

namespace limitamp {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // decorrelate trivially related seeds
        splitmix64(state_);
    }

    std::uint64_t u64() { return splitmix64(state_); }

    // unbiased enough for sampling purposes; n > 0
    std::uint64_t below(std::uint64_t n) { return u64() % n; }

    int int_in(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // small random rational, numerator in [-max_num, max_num], denominator in [1, max_den]
    Rat rat_small(int max_num = 12, int max_den = 12) {
        return Rat(int_in(-max_num, max_num), int_in(1, max_den));
    }

    Rat rat_nonzero(int max_num = 12, int max_den = 12) {
        for (;;) {
            Rat r = rat_small(max_num, max_den);
            if (r != 0) return r;
        }
    }

    // rational strictly inside (0,1)
    Rat rat_in_01(int max_den = 64) {
        const int den = int_in(2, max_den);
        const int num = int_in(1, den - 1);
        return Rat(num, den);
    }

    // strictly increasing rationals in (0,1), pairwise distinct
    std::vector<Rat> distinct_in_01(int count, int max_den = 97) {
        std::vector<Rat> vals;
        while (static_cast<int>(vals.size()) < count) {
            Rat c = rat_in_01(max_den);
            bool dup = false;
            for (const Rat& v : vals) dup = dup || (v == c);
            if (!dup) vals.push_back(c);
        }
        std::sort(vals.begin(), vals.end());
        return vals;
    }

  private:
    std::uint64_t state_;
};

inline Rng derive_rng(std::uint64_t seed, std::string_view stream_id, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ fnv1a(stream_id);
    std::uint64_t b = splitmix64(s);
    s = b ^ (index * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull);
    return Rng(splitmix64(s));
}

}  // namespace limitamp
