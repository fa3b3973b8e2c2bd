#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace iset {

/// Deterministic splittable PRNG (splitmix64 core).
///
/// Every random decision in the toolkit flows through this class so that a
/// run is reproducible from a single seed, byte for byte, on any platform
/// and under any thread count. Streams for replications, optimizer restarts
/// etc. are derived from (seed, index...) rather than drawn sequentially, so
/// workers never share or race a generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ kGolden)) {}

    /// Child stream keyed by an index path, e.g. derive(master, {rep, restart}).
    /// Distinct paths give statistically independent streams.
    Rng derive(std::initializer_list<std::uint64_t> path) const {
        std::uint64_t s = state_;
        for (std::uint64_t k : path) s = mix(s ^ mix(k + kGolden));
        return Rng(FromState{}, s);
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Normal(mean, sd) via Box-Muller. sd = 0 returns mean without
    /// consuming the stream.
    double normal(double mean, double sd) {
        if (sd == 0.0) return mean;
        if (have_spare_) {
            have_spare_ = false;
            return mean + sd * spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + sd * r * std::cos(theta);
    }

    /// Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    struct FromState {};
    Rng(FromState, std::uint64_t s) : state_(s) {}

    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace iset
