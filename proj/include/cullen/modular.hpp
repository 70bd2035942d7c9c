#pragma once

#include <cstdint>

namespace cullen {

// Word-sized modular helpers for the scan kernels. Moduli must be nonzero
// and below 2^63 so that intermediate sums stay in range.

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exponent != 0) {
        if (exponent & 1U)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exponent >>= 1U;
    }
    return result;
}

// p^e, or 0 if the result would not fit below 2^63.
inline std::uint64_t checked_pow(std::uint64_t p, unsigned e)
{
    constexpr std::uint64_t limit = std::uint64_t{1} << 63;
    std::uint64_t result = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (result > limit / p)
            return 0;
        result *= p;
    }
    return result;
}

}  // namespace cullen
