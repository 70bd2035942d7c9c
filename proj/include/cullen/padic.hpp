#pragma once

#include "cullen/bigint.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cullen {

/// Exponent of a prime in an integer; infinite exactly for 0.
class Valuation {
public:
    constexpr explicit Valuation(std::uint64_t value) : value_(value), infinite_(false) {}

    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return infinite_; }

    // Throws InvalidArgument on the infinite valuation.
    std::uint64_t value() const;

    std::string to_string() const;

    friend constexpr bool operator==(const Valuation& lhs, const Valuation& rhs)
    {
        return lhs.infinite_ == rhs.infinite_ && (lhs.infinite_ || lhs.value_ == rhs.value_);
    }

    friend constexpr std::strong_ordering operator<=>(const Valuation& lhs, const Valuation& rhs)
    {
        if (lhs.infinite_ || rhs.infinite_)
            return lhs.infinite_ <=> rhs.infinite_;
        return lhs.value_ <=> rhs.value_;
    }

private:
    constexpr Valuation() : value_(0), infinite_(true) {}

    std::uint64_t value_;
    bool infinite_;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

void require_prime(std::uint64_t p);

/// nu_p(n), with nu_p(-n) = nu_p(n) and nu_p(0) = infinity.
Valuation vp(const BigInt& n, std::uint64_t p);

/// nu_p(a!) by Legendre's sum of floor(a / p^i); a! is never formed.
std::uint64_t factorial_valuation(std::uint64_t a, std::uint64_t p);

/// Strictly increasing, nonempty list of 64-bit primes.
class SmoothnessBasis {
public:
    explicit SmoothnessBasis(std::vector<std::uint64_t> primes);

    static SmoothnessBasis first_four() { return SmoothnessBasis({2, 3, 5, 7}); }

    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::uint64_t largest() const { return primes_.back(); }
    std::size_t size() const { return primes_.size(); }

private:
    std::vector<std::uint64_t> primes_;
};

struct BasisFactorization {
    std::vector<std::uint64_t> exponents;  // one per basis prime, same order
    BigInt cofactor;                       // coprime to every basis prime

    bool is_unit() const { return cofactor == 1; }
};

BasisFactorization factor_over_basis(const BigInt& n, const SmoothnessBasis& basis);

BigInt reconstruct(const BasisFactorization& factorization, const SmoothnessBasis& basis);

struct TrialDivisionOptions {
    // Largest trial divisor tried before giving up on a composite cofactor.
    std::uint64_t max_divisor = 200'000'000;
};

/// Largest prime dividing y, |y| >= 2. Trial division, finishing early once
/// the remaining cofactor tests prime.
BigInt greatest_prime_factor(const BigInt& y, TrialDivisionOptions options = {});

struct BoxMaximum {
    std::uint64_t valuation = 0;
    std::array<unsigned, 3> witness{};  // (a, b, c)
};

/// max nu_2(3^a 5^b 7^c - 1) over 0<=a<=a_max, 0<=b<=b_max, 0<=c<=c_max with
/// the origin excluded. Ties resolve to the lexicographically smallest
/// witness, so the answer does not depend on `jobs`.
BoxMaximum nu2_max_over_box(unsigned a_max, unsigned b_max, unsigned c_max, unsigned jobs = 1);

}  // namespace cullen
