#include "cullen/padic.hpp"

#include "cullen/errors.hpp"
#include "cullen/modular.hpp"
#include "cullen/parallel.hpp"

#include <bit>

namespace cullen {

namespace {

bool is_probable_prime(const BigInt& n)
{
    if (n.fits_ulong_p())
        return is_prime(n.get_ui());
    // BPSW plus extra Miller-Rabin rounds beyond 64 bits.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Escalation threshold for the box walk: a 64-bit window leaves 16 bits of
// headroom above this.
constexpr unsigned kBoxEscalation = 48;

std::uint64_t exact_box_valuation(unsigned a, unsigned b, unsigned c)
{
    BigInt modulus = BigInt(1) << 192;
    BigInt x = 1;
    BigInt factor;
    mpz_powm_ui(factor.get_mpz_t(), BigInt(3).get_mpz_t(), a, modulus.get_mpz_t());
    x *= factor;
    mpz_powm_ui(factor.get_mpz_t(), BigInt(5).get_mpz_t(), b, modulus.get_mpz_t());
    x *= factor;
    mpz_powm_ui(factor.get_mpz_t(), BigInt(7).get_mpz_t(), c, modulus.get_mpz_t());
    x *= factor;
    BigInt residue = (x - 1) % modulus;
    if (residue == 0) {
        // Beyond 192 bits; take the full product.
        BigInt full = pow(BigInt(3), a) * pow(BigInt(5), b) * pow(BigInt(7), c) - 1;
        return mpz_scan1(full.get_mpz_t(), 0);
    }
    return mpz_scan1(residue.get_mpz_t(), 0);
}

bool better(const BoxMaximum& candidate, const BoxMaximum& incumbent)
{
    if (candidate.valuation != incumbent.valuation)
        return candidate.valuation > incumbent.valuation;
    return candidate.witness < incumbent.witness;
}

}  // namespace

std::uint64_t Valuation::value() const
{
    if (infinite_)
        throw InvalidArgument("valuation is infinite");
    return value_;
}

std::string Valuation::to_string() const
{
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto q : small) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (auto a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

void require_prime(std::uint64_t p)
{
    if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " is not prime");
}

Valuation vp(const BigInt& n, std::uint64_t p)
{
    require_prime(p);
    if (n == 0)
        return Valuation::infinity();
    BigInt rest = abs(n);
    const auto count = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), from_u64(p).get_mpz_t());
    return Valuation(count);
}

std::uint64_t factorial_valuation(std::uint64_t a, std::uint64_t p)
{
    require_prime(p);
    if (a == 0)
        throw InvalidArgument("factorial valuation needs a >= 1");
    std::uint64_t total = 0;
    while (a >= p) {
        a /= p;
        total += a;
    }
    return total;
}

SmoothnessBasis::SmoothnessBasis(std::vector<std::uint64_t> primes) : primes_(std::move(primes))
{
    if (primes_.empty())
        throw InvalidArgument("smoothness basis must contain at least one prime");
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        require_prime(primes_[i]);
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw InvalidArgument("smoothness basis must be strictly increasing");
    }
}

BasisFactorization factor_over_basis(const BigInt& n, const SmoothnessBasis& basis)
{
    if (n <= 0)
        throw InvalidArgument("factor_over_basis needs a positive integer, got " + to_decimal(n));
    BasisFactorization result;
    result.cofactor = n;
    result.exponents.reserve(basis.size());
    for (auto p : basis.primes()) {
        if (p == 2) {
            const auto twos = mpz_scan1(result.cofactor.get_mpz_t(), 0);
            result.cofactor >>= twos;
            result.exponents.push_back(twos);
            continue;
        }
        if (!mpz_divisible_ui_p(result.cofactor.get_mpz_t(), p)) {
            result.exponents.push_back(0);
            continue;
        }
        const auto count = mpz_remove(result.cofactor.get_mpz_t(), result.cofactor.get_mpz_t(),
                                      from_u64(p).get_mpz_t());
        result.exponents.push_back(count);
    }
    return result;
}

BigInt reconstruct(const BasisFactorization& factorization, const SmoothnessBasis& basis)
{
    if (factorization.exponents.size() != basis.size())
        throw InvalidArgument("factorization does not match the basis size");
    BigInt value = factorization.cofactor;
    for (std::size_t i = 0; i < basis.size(); ++i)
        value *= pow(from_u64(basis.primes()[i]), factorization.exponents[i]);
    return value;
}

BigInt greatest_prime_factor(const BigInt& y, TrialDivisionOptions options)
{
    BigInt rest = abs(y);
    if (rest < 2)
        throw InvalidArgument("greatest_prime_factor needs |y| >= 2");

    BigInt largest = 0;
    const auto twos = mpz_scan1(rest.get_mpz_t(), 0);
    if (twos > 0) {
        rest >>= twos;
        largest = 2;
    }
    if (rest == 1)
        return largest;
    if (is_probable_prime(rest))
        return rest;

    for (std::uint64_t d = 3;; d += 2) {
        if (d > options.max_divisor)
            throw TrialDivisionLimit("greatest_prime_factor: trial division passed " +
                                     std::to_string(options.max_divisor) + " with composite cofactor " +
                                     to_decimal(rest) + " remaining; input too large for trial division");
        if (BigInt(d) * d > rest)
            return rest;  // rest is prime
        if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), from_u64(d).get_mpz_t());
            largest = d;
            if (rest == 1)
                return largest;
            if (is_probable_prime(rest))
                return rest;
        }
    }
}

BoxMaximum nu2_max_over_box(unsigned a_max, unsigned b_max, unsigned c_max, unsigned jobs)
{
    if (a_max == 0 && b_max == 0 && c_max == 0)
        throw InvalidArgument("nu2_max_over_box: box contains only the excluded origin");

    std::vector<BoxMaximum> per_a(a_max + 1);
    std::vector<char> has_result(a_max + 1, 0);

    parallel_for(a_max + 1, jobs, [&](std::size_t index) {
        const auto a = static_cast<unsigned>(index);
        // Arithmetic wraps modulo 2^64.
        std::uint64_t three = 1;
        for (unsigned i = 0; i < a; ++i)
            three *= 3;
        BoxMaximum best;
        bool found = false;
        std::uint64_t with_five = three;
        for (unsigned b = 0; b <= b_max; ++b, with_five *= 5) {
            std::uint64_t x = with_five;
            for (unsigned c = 0; c <= c_max; ++c, x *= 7) {
                if (a == 0 && b == 0 && c == 0)
                    continue;
                const std::uint64_t diff = x - 1;
                std::uint64_t v = diff == 0 ? 64 : static_cast<std::uint64_t>(std::countr_zero(diff));
                if (v >= kBoxEscalation)
                    v = exact_box_valuation(a, b, c);
                BoxMaximum candidate{v, {a, b, c}};
                if (!found || better(candidate, best)) {
                    best = candidate;
                    found = true;
                }
            }
        }
        per_a[index] = best;
        has_result[index] = found;
    });

    BoxMaximum overall;
    bool found = false;
    for (std::size_t i = 0; i <= a_max; ++i) {
        if (has_result[i] && (!found || better(per_a[i], overall))) {
            overall = per_a[i];
            found = true;
        }
    }
    return overall;
}

}  // namespace cullen
