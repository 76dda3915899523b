#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace innatecoder {

// splitmix64 step; used both as a standalone mixer and to derive child seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic child-seed derivation: fold each index into the base seed.
// Used so that per-restart / per-iteration / per-draw streams are independent
// of evaluation order and worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = base;
    for (std::uint64_t p : parts) {
        s ^= p + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        std::uint64_t t = s;
        s = splitmix64(t);
    }
    return s;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) {
    return derive_seed(base, {a});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return derive_seed(base, {a, b});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return derive_seed(base, {a, b, c});
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n). n must be positive.
    int uniform_int(int n) {
        return static_cast<int>(std::uniform_int_distribution<std::uint64_t>(0, static_cast<std::uint64_t>(n) - 1)(eng_));
    }

    // Uniform in [0, 1).
    double uniform_real() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
    }

    bool bernoulli(double p) { return uniform_real() < p; }

    // Index drawn proportionally to non-negative weights. At least one weight
    // must be positive.
    int pick_weighted(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double x = uniform_real() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (x < acc) return static_cast<int>(i);
        }
        for (std::size_t i = weights.size(); i-- > 0;) {
            if (weights[i] > 0.0) return static_cast<int>(i);
        }
        return 0;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace innatecoder
