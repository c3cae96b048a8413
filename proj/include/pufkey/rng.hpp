#pragma once

#include <cstdint>

namespace pufkey {

// splitmix64 generator. Chosen over std::mt19937_64 because reseeding is a
// single mix (we derive one generator per Monte Carlo trial) and the output
// stream is identical on every platform, which the deterministic-output
// contract of the CLI depends on.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0)
        : state_(mix(seed + kGamma) ^ mix(stream * kGamma + 0x632be59bd9b4e019ull)) {}

    uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    // uniform in [0, bound), bound >= 1; multiply-shift, bias < bound/2^64
    uint32_t below(uint32_t bound) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // uniform in [0, 1) with 53 bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

private:
    static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ull;
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t state_;
};

} // namespace pufkey
