#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <vector>

namespace feesim {

// Pairwise (tree) summation over the given span. The reduction order is a
// function of the element order alone, so parallel producers that write
// into fixed slots reproduce bits regardless of scheduling.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n-1 denominator)
};

// Two-pass mean / sample standard deviation with pairwise reductions.
inline MeanSd mean_sd(std::span<const double> values) {
    MeanSd out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    out.mean = pairwise_sum(values) / static_cast<double>(n);
    if (n < 2) {
        out.sd = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    out.sd = std::sqrt(pairwise_sum(sq) / static_cast<double>(n - 1));
    return out;
}

// FNV-1a over raw double bits; used to fingerprint consumed increments.
inline std::uint64_t fnv1a_init() { return 0xcbf29ce484222325ULL; }

inline std::uint64_t fnv1a_update(std::uint64_t h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a_update(std::uint64_t h, double value) {
    return fnv1a_update(h, std::bit_cast<std::uint64_t>(value));
}

// splitmix64; used to derive independent sub-seeds (e.g. one per horizon).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline int resolve_threads(int n_threads) {
    if (n_threads > 0) return n_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Static partition of [0, n) across workers. Results must only depend on
// the index each worker receives, never on scheduling.
inline void parallel_for(std::size_t n, int n_threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    const int workers = resolve_threads(n_threads);
    if (workers <= 1 || n <= 1) {
        body(0, n);
        return;
    }
    const std::size_t w = static_cast<std::size_t>(workers);
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t lo = t * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace feesim
