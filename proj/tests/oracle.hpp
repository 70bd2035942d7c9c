#pragma once

// Slow, obviously-correct reference computations for the unit tests. None of
// these call into the library except for the BigInt alias.

#include "cullen/bigint.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using cullen::BigInt;

// Repeated division; -1 stands for infinity.
inline long valuation(BigInt n, unsigned long p)
{
    if (n == 0)
        return -1;
    if (n < 0)
        n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline BigInt factorial(unsigned long n)
{
    BigInt r = 1;
    for (unsigned long i = 2; i <= n; ++i)
        r *= i;
    return r;
}

inline BigInt power(long base, unsigned long e)
{
    BigInt r = 1;
    for (unsigned long i = 0; i < e; ++i)
        r *= base;
    return r;
}

inline BigInt cullen_number(unsigned long n)
{
    return BigInt(n) * power(2, n) + 1;
}

inline bool is_prime_naive(unsigned long n)
{
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Largest prime factor by plain trial division.
inline BigInt largest_prime_factor(BigInt n)
{
    if (n < 0)
        n = -n;
    BigInt best = 1;
    for (unsigned long d = 2; BigInt(d) * d <= n; ++d) {
        while (n % d == 0) {
            best = d;
            n /= d;
        }
    }
    return n > 1 ? n : best;
}

// Unrolled u_n = r1 u_(n-1) + r2 u_(n-2) + r3 u_(n-3).
inline std::vector<BigInt> unroll(long r1, long r2, long r3, long u0, long u1, long u2, std::size_t count)
{
    std::vector<BigInt> u{u0, u1, u2};
    while (u.size() < count) {
        const std::size_t n = u.size();
        u.push_back(r1 * u[n - 1] + r2 * u[n - 2] + r3 * u[n - 3]);
    }
    u.resize(count);
    return u;
}

inline BigInt random_big(std::mt19937_64& rng, unsigned bits)
{
    BigInt r = 0;
    for (unsigned i = 0; i < bits; i += 32)
        r = (r << 32) + static_cast<unsigned long>(rng() & 0xFFFFFFFFU);
    if (bits % 32 != 0)
        r >>= 32 - bits % 32;
    return r;
}

}  // namespace oracle
