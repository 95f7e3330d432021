#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace spamflow::util {

// Deterministic RNG wrapper. std::mt19937_64 output is pinned by the
// standard, but std::uniform_*_distribution is not, so every draw the
// toolkit makes goes through the portable helpers below.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi_inclusive) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi_inclusive - lo + 1)));
    }

    // Uniform double in [0, 1) with 53 bits of entropy.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (deterministic, no cached spare).
    double normal() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    // First k elements of a Fisher-Yates shuffle of [0, n).
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

    // Derives an independent child stream; used to give pipeline stages
    // seeds that do not depend on each other's draw counts.
    Rng fork(std::uint64_t salt) {
        return Rng(engine_() ^ (salt * 0x9e3779b97f4a7c15ULL));
    }

private:
    std::mt19937_64 engine_;
};

inline std::vector<std::size_t> Rng::sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(idx[i], idx[i + below(n - i)]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace spamflow::util
