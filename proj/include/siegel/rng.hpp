#ifndef SIEGEL_RNG_HPP
#define SIEGEL_RNG_HPP

#include <cstdint>

namespace siegel {
namespace rng {

// SplitMix64 step; used for seeding and stream-seed derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream seed from (seed, salt, stream index).
inline uint64_t derive_seed(uint64_t seed, uint64_t salt, uint64_t stream) {
    uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0x6a09e667f3bcc909ULL * (salt + 1);
    (void)splitmix64(s);
    s ^= 0xbb67ae8584caa73bULL * (stream + 1);
    return splitmix64(s);
}

// xoshiro256** with a portable, platform-independent output sequence.
class Xoshiro256 {
public:
    explicit Xoshiro256(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform double in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

} // namespace rng
} // namespace siegel

#endif
