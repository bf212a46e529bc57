#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace lincue {

// Deterministic RNG used everywhere results must be reproducible bit-for-bit.
// The core generator is mt19937_64-equivalent via std::mt19937_64, but all
// distributions are implemented here because the std:: distribution algorithms
// are implementation-defined and would break cross-platform determinism.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {
        if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;  // xorshift state must be nonzero
    }

    // Mixes (seed, stream tags) into a stream key. Used to give every tree /
    // fold / iteration its own RNG so parallel execution order cannot change
    // results; Rng(derive_key(...)) reproduces the stream from the key alone.
    static std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
        std::uint64_t h = splitmix(seed);
        for (std::uint64_t t : tags) {
            h ^= splitmix(t + 0x9e3779b97f4a7c15ULL);
            h = splitmix(h);
        }
        return h;
    }

    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
        return Rng(derive_key(seed, tags));
    }

    std::uint64_t next_u64() {
        // xorshift64* — tiny, fast, and fully specified here.
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    // Uniform integer in [0, n) without modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via polar Box-Muller; caches the second variate.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * m;
        has_cached_ = true;
        return u * m;
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace lincue
