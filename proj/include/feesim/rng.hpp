#pragma once

#include <array>
#include <cstdint>

namespace feesim::rng {

// Philox4x32-10 counter-based generator. Each (counter, key) pair maps to
// four independent 32-bit words, so draws keyed by (seed, path, step) are
// reproducible bit-for-bit under any execution order.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::uint32_t key0, std::uint32_t key1);

struct NormalPair {
    double z1 = 0.0;
    double z2 = 0.0;
};

// Two standard normals for grid node (path, step), via one Philox block and
// the Box-Muller transform.
NormalPair normal_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step);

}  // namespace feesim::rng
