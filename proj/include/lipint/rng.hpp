#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lipint {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic sub-stream seed for worker (a, b) of a run with `base` seed.
// Used to hand every (sample size, repetition) task its own independent
// generator so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s = h ^ (a + 0x1f83d9abfb41bd6bULL);
    h = splitmix64(s);
    s = h ^ (b + 0x5be0cd19137e2179ULL);
    return splitmix64(s);
}

// Seeded random source. mt19937_64 is fully specified by the standard and the
// double conversions below are explicit, so a seed pins the draw sequence
// bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // (0, 1)
    double open01() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Fair ±1.
    double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

    // Box-Muller, one variate per call.
    double standard_normal() {
        const double u1 = open01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace lipint
