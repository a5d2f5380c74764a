#include "hcube/random.hpp"

#include "hcube/errors.hpp"

#include <limits>

namespace hcube {

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw InputError("Rng::below needs a positive bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x < limit)
            return x % bound;
    }
}

bool Rng::bernoulli(const Rational& p)
{
    if (p < 0 || p > 1)
        throw InputError("probability outside [0, 1]");
    const BigInt den = denominator(p);
    if (den > (BigInt(1) << 63))
        throw TooLarge("probability denominator exceeds 63 bits");
    const auto d = den.convert_to<std::uint64_t>();
    const auto n = numerator(p).convert_to<std::uint64_t>();
    return below(d) < n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

}  // namespace hcube
