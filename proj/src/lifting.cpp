#include "cullen/lifting.hpp"

#include "cullen/errors.hpp"
#include "cullen/modular.hpp"
#include "cullen/padic.hpp"
#include "cullen/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cullen {

namespace {

BigInt powm(const BigInt& base, const BigInt& exponent, const BigInt& modulus)
{
    BigInt result;
    mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return result;
}

BigInt mod(const BigInt& value, const BigInt& modulus)
{
    BigInt result;
    mpz_mod(result.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
    return result;
}

// (n 2^n - t') mod modulus, where `order` is a multiple of the order of 2
// modulo `modulus`. Pass order = 0 to use the full exponent.
BigInt residue(const BigInt& n, const BigInt& t_prime, const BigInt& modulus, const BigInt& order)
{
    const BigInt exponent = order == 0 ? n : mod(n, order);
    return mod(n * powm(2, exponent, modulus) - t_prime, modulus);
}

BigInt prime_power(std::uint64_t p, std::uint64_t e)
{
    return pow(from_u64(p), e);
}

std::string describe(const LiftChain& chain)
{
    return "p = " + std::to_string(chain.p) + ", n0 = " + to_decimal(chain.n0) + ", length " +
           std::to_string(chain.length());
}

// Smallest j with (p-1) p^(j+1) > limit.
std::size_t spacing_exceeds(std::uint64_t p, const BigInt& limit)
{
    std::size_t j = 0;
    BigInt step = from_u64((p - 1) * p);
    while (step <= limit) {
        step *= static_cast<unsigned long>(p);
        ++j;
    }
    return j;
}

BaseCeiling ceiling_for_base(const LiftTarget& target, LiftChain chain, const BigInt& N, std::size_t min_length)
{
    BaseCeiling out;
    const BigInt t = target.t_prime;
    std::optional<std::size_t> first_above;
    for (;;) {
        if (!first_above && chain.nj > N)
            first_above = chain.length();
        if (first_above && chain.length() >= min_length)
            break;
        // n 2^n = t' forces n < log2 |t'|, so only tiny indices need the exact test.
        if (chain.nj <= mpz_sizeinbase(t.get_mpz_t(), 2) && chain.nj * pow(BigInt(2), to_u64(chain.nj)) == t) {
            // n_j is an exact root; the chain would stall here forever.
            out.exact_root = chain.nj;
            const BigInt& root = chain.nj;
            const BigInt reach = std::max(BigInt(N - root), root);
            out.J = spacing_exceeds(target.p, reach);
            while (chain.length() < min_length)
                chain = lift_step(chain, target);
            out.chain = std::move(chain);
            return out;
        }
        chain = lift_step(chain, target);
    }
    out.J = *first_above;
    out.chain = std::move(chain);
    return out;
}

}  // namespace

LiftTarget::LiftTarget(std::uint64_t prime, BigInt t) : p(prime), t_prime(std::move(t))
{
    if (p == 2)
        throw InvalidArgument("lifting needs an odd prime; p = 2 is unsupported");
    if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " is not prime");
}

LiftTarget cullen_target(std::uint64_t p, const BigInt& t)
{
    return LiftTarget(p, t - 1);
}

BigInt LiftChain::index_at(std::size_t i) const
{
    if (i > digits.size())
        throw InvalidArgument("chain has only " + std::to_string(digits.size()) + " steps");
    BigInt n = n0;
    BigInt step = from_u64(p - 1) * p;
    for (std::size_t k = 0; k < i; ++k) {
        n += step * digits[k];
        step *= static_cast<unsigned long>(p);
    }
    return n;
}

std::vector<std::uint64_t> base_solutions(const LiftTarget& target)
{
    const std::uint64_t p = target.p;
    if (p > 0xFFFFFFFFULL)
        throw RangeTooLarge("base residues need p < 2^32");
    // For each r = n mod (p-1), p | n 2^n - t' pins n mod p to t' 2^(-r).
    // Combining the two congruences gives one residue mod p(p-1) per r.
    const std::uint64_t t = mod(target.t_prime, from_u64(p)).get_ui();
    const std::uint64_t half = (p + 1) / 2;  // 2^(-1) mod p
    std::vector<std::uint64_t> out;
    std::uint64_t x = t;  // t' 2^(-r) mod p
    for (std::uint64_t r = 0; r + 1 < p; ++r) {
        const std::uint64_t m = (r % p + p - x) % p;
        out.push_back(r + (p - 1) * m);
        x = mulmod(x, half, p);
    }
    std::sort(out.begin(), out.end());
    for (std::uint64_t n : out)
        if (mulmod(n % p, powmod(2, n, p), p) != t)
            throw InternalContradiction("base residue " + std::to_string(n) + " fails mod " + std::to_string(p));
    return out;
}

LiftChain start_chain(const LiftTarget& target, std::uint64_t n0)
{
    LiftChain chain{target.p, from_u64(n0), {}, from_u64(n0)};
    if (n0 >= target.p * (target.p - 1) || !chain_is_sound(chain, target))
        throw InvalidArgument(std::to_string(n0) + " is not a base residue for p = " + std::to_string(target.p));
    return chain;
}

bool chain_is_sound(const LiftChain& chain, const LiftTarget& target)
{
    const BigInt modulus = prime_power(target.p, chain.length() + 1);
    return residue(chain.nj, target.t_prime, modulus, 0) == 0;
}

LiftChain lift_step(const LiftChain& chain, const LiftTarget& target)
{
    const std::uint64_t p = target.p;
    const std::size_t j = chain.length();
    const BigInt pj1 = prime_power(p, j + 1);
    const BigInt modulus = pj1 * p;
    const BigInt order = from_u64(p - 1) * pj1;

    const BigInt f = residue(chain.nj, target.t_prime, modulus, order);
    if (mod(f, pj1) != 0)
        throw InternalContradiction("chain invariant broken before lifting (" + describe(chain) + ")");

    const BigInt P = from_u64(p);
    const BigInt quotient = BigInt(f / pj1);
    BigInt inverse;
    const BigInt two_n = powm(2, mod(chain.nj, from_u64(p - 1)), P);
    mpz_invert(inverse.get_mpz_t(), two_n.get_mpz_t(), P.get_mpz_t());
    const BigInt digit = mod(quotient * inverse, P);

    LiftChain next = chain;
    next.digits.push_back(static_cast<std::uint32_t>(digit.get_ui()));
    next.nj = chain.nj + order * digit;

    if (residue(next.nj, target.t_prime, modulus, 0) != 0)
        throw InternalContradiction("lifted index fails p^(j+2) divisibility (" + describe(next) + ")");
    return next;
}

std::vector<BigInt> CeilingResult::indices_at(std::size_t i) const
{
    std::vector<BigInt> out;
    out.reserve(bases.size());
    for (const auto& base : bases)
        out.push_back(base.chain.index_at(i));
    return out;
}

CeilingResult valuation_ceiling(const LiftTarget& target, const BigInt& N, const CeilingOptions& options)
{
    if (N < 1)
        throw InvalidArgument("N must be positive");
    const auto residues = base_solutions(target);

    std::vector<LiftChain> starts;
    for (std::uint64_t n0 : residues) {
        auto found = std::find_if(options.resume.begin(), options.resume.end(),
                                  [&](const LiftChain& c) { return c.p == target.p && c.n0 == n0; });
        if (found == options.resume.end()) {
            starts.push_back(start_chain(target, n0));
            continue;
        }
        if (found->index_at(found->length()) != found->nj || !chain_is_sound(*found, target))
            throw InvalidArgument("resumed chain for n0 = " + std::to_string(n0) + " fails its invariant");
        starts.push_back(*found);
    }

    CeilingResult result;
    result.N = N;
    result.bases.resize(starts.size());
    parallel_for(starts.size(), options.jobs, [&](std::size_t i) {
        LiftChain chain = starts[i];
        // A resumed chain may already be longer than needed; rewind to the
        // first index above N so J stays minimal.
        std::size_t keep = 0;
        while (keep < chain.length() && chain.index_at(keep) <= N)
            ++keep;
        if (keep < chain.length()) {
            chain.digits.resize(std::max(keep, std::min(chain.length(), options.min_length)));
            chain.nj = chain.index_at(chain.length());
        }
        result.bases[i] = ceiling_for_base(target, std::move(chain), N, options.min_length);
    });
    for (const auto& base : result.bases)
        result.J = std::max(result.J, base.J);
    // Bring every chain up to the common length so n_J exists for each base.
    for (auto& base : result.bases)
        while (base.chain.length() < result.J)
            base.chain = lift_step(base.chain, target);
    return result;
}

std::vector<BigInt> solutions_mod_prime_power(const LiftTarget& target, std::uint64_t k, SolveOptions options)
{
    if (k == 0)
        throw InvalidArgument("k must be positive");
    const double digits = static_cast<double>(k) * std::log10(static_cast<double>(target.p));
    if (digits > static_cast<double>(options.max_digits))
        throw BudgetExceeded("p^k has about " + std::to_string(static_cast<long long>(digits)) +
                             " digits, above the budget of " + std::to_string(options.max_digits));
    std::vector<BigInt> out;
    for (std::uint64_t n0 : base_solutions(target)) {
        LiftChain chain = start_chain(target, n0);
        while (chain.length() + 1 < k)
            chain = lift_step(chain, target);
        out.push_back(chain.nj);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BigInt> brute_force_solutions(const LiftTarget& target, std::uint64_t k)
{
    if (k == 0)
        throw InvalidArgument("k must be positive");
    const std::uint64_t pk = checked_pow(target.p, static_cast<unsigned>(std::min<std::uint64_t>(k, 64)));
    constexpr std::uint64_t cap = 10'000'000;
    if (pk == 0 || pk > cap / (target.p - 1))
        throw RangeTooLarge("p^k (p-1) exceeds the brute-force cap of 10^7");
    const std::uint64_t t = mod(target.t_prime, from_u64(pk)).get_ui();
    std::vector<BigInt> out;
    std::uint64_t power = 1 % pk;
    for (std::uint64_t n = 0; n < pk * (target.p - 1); ++n) {
        if (mulmod(n % pk, power, pk) == t)
            out.push_back(from_u64(n));
        power = power * 2 % pk;
    }
    return out;
}

nlohmann::json chain_to_json(const LiftChain& chain)
{
    return {
        {"p", std::to_string(chain.p)},
        {"n0", to_decimal(chain.n0)},
        {"digits", chain.digits},
        {"nj", to_decimal(chain.nj)},
    };
}

LiftChain chain_from_json(const nlohmann::json& j)
{
    LiftChain chain;
    chain.p = to_u64(parse_integer(j.at("p").get<std::string>()));
    chain.n0 = parse_integer(j.at("n0").get<std::string>());
    chain.digits = j.at("digits").get<std::vector<std::uint32_t>>();
    chain.nj = parse_integer(j.at("nj").get<std::string>());
    for (auto l : chain.digits)
        if (l >= chain.p)
            throw InvalidArgument("chain digit out of range");
    return chain;
}

}  // namespace cullen
