#pragma once

// Seeded randomness with a fixed, platform-independent draw procedure.

#include "hcube/rational.hpp"

#include <cstdint>
#include <random>

namespace hcube {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, bound), bound >= 1, by rejection.
    std::uint64_t below(std::uint64_t bound);
    /// True with probability p, p an exact rational in [0, 1] whose
    /// denominator fits in 63 bits.
    bool bernoulli(const Rational& p);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed for item `index` of a run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace hcube
