#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace hrcm {

/// Root seed plus a stream (replica) id; (root, stream) and a draw counter
/// fully determine every random number.
struct Seed {
    std::uint64_t root = 0;
    std::uint64_t stream = 0;

    Seed with_stream(std::uint64_t s) const { return Seed{root, s}; }
};

namespace rng {

// splitmix64 finaliser
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based draw: hash of (root, stream, purpose, counter). Distinct
/// purpose tags keep unrelated draw sequences independent.
inline std::uint64_t draw(const Seed& seed, std::uint64_t purpose, std::uint64_t counter) {
    std::uint64_t h = mix64(seed.root);
    h = mix64(h ^ seed.stream);
    h = mix64(h ^ purpose);
    return mix64(h ^ counter);
}

inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

// Purpose tags.
inline constexpr std::uint64_t kCount = 0xc07e57a11ed5eed1ULL;
inline constexpr std::uint64_t kRadius = 0x7ad1a15edba11a5eULL;
inline constexpr std::uint64_t kDirection = 0xd19ec7101a5e03b2ULL;
inline constexpr std::uint64_t kEdge = 0xed9eba5e5eed3141ULL;

/// Sequential uniform stream for one purpose; deterministic in (seed, purpose).
class CounterRng {
public:
    CounterRng(const Seed& seed, std::uint64_t purpose) : seed_(seed), purpose_(purpose) {}

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return draw(seed_, purpose_, counter_++); }

    double uniform() { return to_unit((*this)()); }

    double exponential() {  // rate 1
        double u;
        do { u = uniform(); } while (u == 0.0);
        return -std::log(u);
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do { u1 = uniform(); } while (u1 == 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    Seed seed_;
    std::uint64_t purpose_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Uniform in [0,1) keyed by an unordered index pair; order-independent by
/// construction, so parallel edge generation is deterministic.
inline double pair_uniform(const Seed& seed, std::uint64_t i, std::uint64_t j) {
    std::uint64_t lo = i < j ? i : j;
    std::uint64_t hi = i < j ? j : i;
    return to_unit(draw(seed, kEdge, (lo << 32) | hi));  // indices stay below 2^32
}

}  // namespace rng
}  // namespace hrcm
