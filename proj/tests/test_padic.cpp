#include "cullen/errors.hpp"
#include "cullen/padic.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace cullen;

TEST_CASE("vp basics")
{
    CHECK(vp(8, 2) == Valuation(3));
    CHECK(vp(0, 5).is_infinite());
    CHECK(vp(2025, 3) == Valuation(4));
    CHECK(vp(2025, 5) == Valuation(2));
    CHECK(vp(-2025, 5) == Valuation(2));
    CHECK(vp(7, 2) == Valuation(0));
    CHECK_THROWS_AS(vp(12, 4), InvalidArgument);
    CHECK_THROWS_AS(vp(12, 1), InvalidArgument);
}

TEST_CASE("Valuation ordering puts infinity last")
{
    CHECK(Valuation(1000) < Valuation::infinity());
    CHECK(Valuation(2) < Valuation(3));
    CHECK(Valuation::infinity().to_string() == "inf");
    CHECK_THROWS_AS((void)Valuation::infinity().value(), InvalidArgument);
}

TEST_CASE("is_prime against trial division")
{
    for (unsigned long n = 0; n < 20000; ++n)
        REQUIRE(is_prime(n) == oracle::is_prime_naive(n));
    CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ULL));      // strong pseudoprime to 2, 3, 5, 7
    CHECK_FALSE(is_prime(18446744073709551615ULL));
}

TEST_CASE("vp is multiplicative")
{
    std::mt19937_64 rng(11);
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
        for (int i = 0; i < 1000; ++i) {
            BigInt a = oracle::random_big(rng, 1 + rng() % 160) + 1;
            BigInt b = oracle::random_big(rng, 1 + rng() % 160) + 1;
            if (rng() & 1)
                a *= oracle::power(static_cast<long>(p), rng() % 20);
            if (rng() & 1)
                b = -b;
            REQUIRE(vp(a * b, p).value() == vp(a, p).value() + vp(b, p).value());
        }
    }
}

TEST_CASE("vp is ultrametric")
{
    std::mt19937_64 rng(12);
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
        for (int i = 0; i < 1000; ++i) {
            BigInt a = (oracle::random_big(rng, 64) + 1) * oracle::power(static_cast<long>(p), rng() % 6);
            BigInt b = (oracle::random_big(rng, 64) + 1) * oracle::power(static_cast<long>(p), rng() % 6);
            const auto va = vp(a, p), vb = vp(b, p), vs = vp(a + b, p);
            REQUIRE(vs >= std::min(va, vb));
            if (va != vb)
                REQUIRE(vs == std::min(va, vb));
        }
    }
}

TEST_CASE("vp agrees with repeated division")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        const BigInt n = oracle::random_big(rng, 200) * oracle::power(3, rng() % 40);
        REQUIRE(static_cast<long>(vp(n, 3).value()) == oracle::valuation(n, 3));
    }
}

TEST_CASE("factorial_valuation")
{
    CHECK(factorial_valuation(500, 3) == 247);
    CHECK(factorial_valuation(500, 2) == 494);
    CHECK(factorial_valuation(500, 5) == 124);
    CHECK(factorial_valuation(500, 7) == 82);
    // Direct count on 49! gives 46.
    CHECK(factorial_valuation(49, 2) == static_cast<std::uint64_t>(oracle::valuation(oracle::factorial(49), 2)));
    CHECK(factorial_valuation(49, 2) == 46);
    CHECK(factorial_valuation(1, 2) == 0);
    CHECK_THROWS_AS(factorial_valuation(10, 9), InvalidArgument);
    CHECK_THROWS_AS(factorial_valuation(0, 3), InvalidArgument);
}

TEST_CASE("factorial_valuation matches explicit factorials up to 200")
{
    BigInt f = 1;
    for (unsigned long a = 1; a <= 200; ++a) {
        f *= a;
        for (unsigned long p : {2UL, 3UL, 5UL, 7UL})
            REQUIRE(static_cast<long>(factorial_valuation(a, p)) == oracle::valuation(f, p));
    }
}

TEST_CASE("factorial_valuation exceeds a/2p once a >= p")
{
    for (unsigned long p = 2; p <= 97; ++p) {
        if (!oracle::is_prime_naive(p))
            continue;
        for (unsigned long a = p; a <= 5000; ++a)
            REQUIRE(2 * p * factorial_valuation(a, p) > a);
    }
}

TEST_CASE("SmoothnessBasis validation")
{
    CHECK_NOTHROW(SmoothnessBasis({2, 3, 5, 7}));
    CHECK_THROWS_AS(SmoothnessBasis({}), InvalidArgument);
    CHECK_THROWS_AS(SmoothnessBasis({3, 2}), InvalidArgument);
    CHECK_THROWS_AS(SmoothnessBasis({2, 2}), InvalidArgument);
    CHECK_THROWS_AS(SmoothnessBasis({2, 4}), InvalidArgument);
    CHECK(SmoothnessBasis::first_four().largest() == 7);
}

TEST_CASE("factor_over_basis")
{
    const auto basis = SmoothnessBasis::first_four();
    auto f = factor_over_basis(2025, basis);
    CHECK(f.exponents == std::vector<std::uint64_t>{0, 4, 2, 0});
    CHECK(f.is_unit());

    f = factor_over_basis(1, basis);
    CHECK(f.exponents == std::vector<std::uint64_t>{0, 0, 0, 0});
    CHECK(f.is_unit());

    f = factor_over_basis(2049, basis);
    CHECK(f.exponents == std::vector<std::uint64_t>{0, 1, 0, 0});
    CHECK(f.cofactor == 683);
    CHECK_FALSE(f.is_unit());

    CHECK_THROWS_AS(factor_over_basis(0, basis), InvalidArgument);
    CHECK_THROWS_AS(factor_over_basis(-6, basis), InvalidArgument);
}

TEST_CASE("factor_over_basis round-trips")
{
    std::mt19937_64 rng(14);
    const auto basis = SmoothnessBasis::first_four();
    for (int i = 0; i < 10000; ++i) {
        BigInt n = oracle::random_big(rng, 1 + rng() % 255) + 1;
        if (i % 3 == 0)
            n *= oracle::power(2, rng() % 30) * oracle::power(7, rng() % 10);
        const auto f = factor_over_basis(n, basis);
        REQUIRE(reconstruct(f, basis) == n);
        for (auto p : basis.primes())
            REQUIRE(f.cofactor % p != 0);
    }
}

TEST_CASE("greatest_prime_factor")
{
    CHECK(greatest_prime_factor(2049) == 683);
    CHECK(greatest_prime_factor(8) == 2);
    CHECK(greatest_prime_factor(2025) == 5);
    CHECK(greatest_prime_factor(-2025) == 5);
    CHECK_THROWS_AS(greatest_prime_factor(1), InvalidArgument);
    CHECK_THROWS_AS(greatest_prime_factor(-1), InvalidArgument);
    std::mt19937_64 rng(15);
    for (int i = 0; i < 300; ++i) {
        const BigInt n = oracle::random_big(rng, 36) + 2;
        REQUIRE(greatest_prime_factor(n) == oracle::largest_prime_factor(n));
    }
    // 2^64 + 1 = 274177 * 67280421310721
    CHECK(greatest_prime_factor(BigInt("18446744073709551617")) == BigInt("67280421310721"));
}

TEST_CASE("greatest_prime_factor gives up on hard composites")
{
    // product of two 20-digit primes
    const BigInt hard = BigInt("10000000000000000051") * BigInt("10000000000000000087");
    CHECK_THROWS_AS(greatest_prime_factor(hard, {1000}), TrialDivisionLimit);
}

namespace {

BoxMaximum box_oracle(unsigned am, unsigned bm, unsigned cm)
{
    BoxMaximum best{0, {0, 0, 0}};
    bool seen = false;
    for (unsigned a = 0; a <= am; ++a)
        for (unsigned b = 0; b <= bm; ++b)
            for (unsigned c = 0; c <= cm; ++c) {
                if (a + b + c == 0)
                    continue;
                const BigInt x = oracle::power(3, a) * oracle::power(5, b) * oracle::power(7, c) - 1;
                const auto v = static_cast<std::uint64_t>(oracle::valuation(x, 2));
                if (!seen || v > best.valuation) {
                    best = {v, {a, b, c}};
                    seen = true;
                }
            }
    return best;
}

}  // namespace

TEST_CASE("nu2 box maximum")
{
    auto r = nu2_max_over_box(2, 0, 0);
    CHECK(r.valuation == 3);
    CHECK(r.witness == std::array<unsigned, 3>{2, 0, 0});

    r = nu2_max_over_box(1, 1, 1);
    CHECK(r.valuation == 3);
    CHECK(r.witness == std::array<unsigned, 3>{1, 1, 1});

    CHECK_THROWS_AS(nu2_max_over_box(0, 0, 0), InvalidArgument);

    for (auto [am, bm, cm] : {std::array<unsigned, 3>{10, 10, 10}, {0, 12, 3}, {7, 0, 9}, {4, 4, 0}}) {
        const auto expected = box_oracle(am, bm, cm);
        for (unsigned jobs : {1U, 3U}) {
            const auto got = nu2_max_over_box(am, bm, cm, jobs);
            CHECK(got.valuation == expected.valuation);
            CHECK(got.witness == expected.witness);
        }
    }
    r = nu2_max_over_box(10, 10, 10);
    CHECK(r.valuation == 14);
    CHECK(r.witness == std::array<unsigned, 3>{5, 7, 1});
}
