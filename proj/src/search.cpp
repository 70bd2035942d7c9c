#include "cullen/search.hpp"

#include "cullen/errors.hpp"
#include "cullen/modular.hpp"
#include "cullen/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <string>

namespace cullen {

namespace {

constexpr std::uint64_t block_size = std::uint64_t{1} << 14;

BigInt cullen_number(std::uint64_t n)
{
    BigInt c = from_u64(n);
    c <<= static_cast<mp_bitcnt_t>(n);
    return c + 1;
}

BigInt factorial(std::uint64_t m)
{
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), m);
    return f;
}

// C_n mod m for m < 2^63.
std::uint64_t cullen_mod(std::uint64_t n, std::uint64_t m)
{
    return (mulmod(n % m, powmod(2, n, m), m) + 1) % m;
}

unsigned count_factor(std::uint64_t r, std::uint64_t p)
{
    unsigned v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

// nu_p(C_n) for the small basis primes; word arithmetic with a big-integer
// fallback when the residue vanishes.
unsigned cullen_valuation(std::uint64_t n, std::uint64_t p)
{
    const unsigned cap = p == 2 ? 61 : default_vcap(p);
    const std::uint64_t m = checked_pow(p, cap + 1);
    const std::uint64_t r = cullen_mod(n, m);
    if (r != 0)
        return count_factor(r, p);
    return static_cast<unsigned>(vp(cullen_number(n), p).value());
}

}  // namespace

std::optional<DegeneracyWitness> find_degeneracy(std::uint64_t n, const std::vector<BigInt>& terms,
                                                 const ClosedForm& form)
{
    const Rational double_part = form.double_root_term(n);
    const Rational simple_part = form.simple_root_term(n);
    for (std::size_t first = 0; first < terms.size(); ++first) {
        BigInt sum = 0;
        for (std::size_t last = first; last < terms.size(); ++last) {
            sum += terms[last];
            const Rational q(sum);
            if (q == double_part)
                return DegeneracyWitness{first, last, ClosedFormPart::DoubleRootTerm};
            if (q == simple_part)
                return DegeneracyWitness{first, last, ClosedFormPart::SimpleRootTerm};
        }
    }
    return std::nullopt;
}

std::optional<DegeneracyWitness> classify_degenerate(const Solution& sol, const ClosedForm& form)
{
    std::vector<BigInt> terms;
    for (auto m : sol.ms)
        terms.push_back(factorial(m));
    return find_degeneracy(sol.n, terms, form);
}

std::optional<bool> n_exceeds_m1(std::uint64_t n, std::uint64_t m1)
{
    if (m1 < 6)
        return std::nullopt;
    return n > m1;
}

std::vector<Solution> solve_cullen(std::uint64_t n_max, std::uint64_t m1_max, const SmoothnessBasis& basis,
                                   SolveCullenOptions options)
{
    if (n_max == 0 || m1_max == 0)
        throw InvalidArgument("n_max and m1_max must be positive");
    std::vector<BigInt> fact(m1_max + 1);
    fact[0] = 1;
    for (std::uint64_t m = 1; m <= m1_max; ++m)
        fact[m] = fact[m - 1] * static_cast<unsigned long>(m);

    const auto rec = cullen_sequence();
    const ClosedForm& form = rec.form();
    std::vector<std::vector<Solution>> per_n(n_max);
    parallel_for(n_max, options.jobs, [&](std::size_t i) {
        const std::uint64_t n = i + 1;
        const BigInt c = cullen_number(n);
        for (std::uint64_t m1 = 1; m1 <= m1_max; ++m1) {
            if (options.prune_with_index_inequality && n_exceeds_m1(n, m1) == false)
                break;
            if (fact[m1] + 1 >= c)  // s = c - m1! - m2! would be < 1
                break;
            for (std::uint64_t m2 = 1; m2 <= m1; ++m2) {
                BigInt s = c - fact[m1] - fact[m2];
                if (s < 1)
                    break;
                auto f = factor_over_basis(s, basis);
                if (!f.is_unit())
                    continue;
                Solution sol{n, {m1, m2}, std::move(s), std::move(f), false, std::nullopt};
                sol.witness = classify_degenerate(sol, form);
                sol.degenerate = sol.witness.has_value();
                per_n[i].push_back(std::move(sol));
            }
        }
    });

    std::vector<Solution> out;
    for (auto& bucket : per_n)
        for (auto& sol : bucket)
            out.push_back(std::move(sol));
    // Independent re-check: closed-form evaluation and library factorials.
    for (const auto& sol : out) {
        BigInt rhs = sol.s;
        for (auto m : sol.ms)
            rhs += factorial(m);
        if (eval(rec, sol.n) != rhs || reconstruct(sol.s_factorization, basis) != sol.s)
            throw InternalContradiction("solution at n = " + std::to_string(sol.n) + " failed re-verification");
    }
    std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
        return std::tie(a.n, a.ms) < std::tie(b.n, b.ms);
    });
    return out;
}

unsigned default_vcap(std::uint64_t p)
{
    switch (p) {
    case 3: return 16;
    case 5: return 11;
    case 7: return 10;
    default: break;
    }
    unsigned e = 1;
    while (e < 16 && checked_pow(p, e + 2) != 0)
        ++e;
    return e;
}

ScanResult scan_valuation(std::uint64_t p, const ScanTarget& target, std::uint64_t lo, std::uint64_t hi,
                          ScanOptions options)
{
    require_prime(p);
    if (lo > hi)
        throw InvalidArgument("empty scan range");
    if (!target.constant && !target.builder)
        throw InvalidArgument("scan target has no value");
    const unsigned cap = options.v_cap.value_or(default_vcap(p));
    const std::uint64_t modulus = checked_pow(p, cap + 1);
    if (modulus == 0)
        throw InvalidArgument("p^(cap+1) does not fit in a machine word");

    struct Block {
        std::uint64_t max = 0;
        std::vector<std::uint64_t> argmax, at_least, zeros, escalated;
    };
    const std::uint64_t blocks = (hi - lo) / block_size + 1;
    std::vector<Block> results(blocks);
    const std::uint64_t const_t =
        target.constant ? BigInt(((*target.constant % from_u64(modulus)) + from_u64(modulus)) % from_u64(modulus)).get_ui()
                        : 0;

    parallel_for(blocks, options.jobs, [&](std::size_t b) {
        Block& out = results[b];
        const std::uint64_t start = lo + b * block_size;
        const std::uint64_t stop = std::min(hi, start + block_size - 1);
        std::uint64_t two = powmod(2, start, modulus);
        bool any = false;
        for (std::uint64_t n = start;; ++n) {
            std::uint64_t t = const_t;
            if (!target.constant) {
                const BigInt tb = target.at(n) % from_u64(modulus);
                t = BigInt(tb < 0 ? tb + from_u64(modulus) : tb).get_ui();
            }
            const std::uint64_t c = (mulmod(n % modulus, two, modulus) + 1) % modulus;
            const std::uint64_t r = (c + modulus - t) % modulus;
            std::uint64_t v;
            bool finite = true;
            if (r != 0) {
                v = count_factor(r, p);
            } else {
                // Widen the modulus twice before asking whether C_n = t(n).
                out.escalated.push_back(n);
                const BigInt tn = target.at(n);
                const BigInt nn = from_u64(n);
                std::optional<std::uint64_t> found;
                for (std::uint64_t e : {2 * (cap + 1), 4 * (cap + 1)}) {
                    const BigInt m = pow(from_u64(p), e);
                    BigInt w;
                    mpz_powm(w.get_mpz_t(), BigInt(2).get_mpz_t(), nn.get_mpz_t(), m.get_mpz_t());
                    BigInt res = (nn * w + 1 - tn) % m;
                    if (res < 0)
                        res += m;
                    if (res != 0) {
                        found = vp(res, p).value();
                        break;
                    }
                }
                if (found) {
                    v = *found;
                } else if (cullen_number(n) == tn) {
                    out.zeros.push_back(n);
                    finite = false;
                    v = 0;
                } else {
                    throw CapEscalationFailed("nu_" + std::to_string(p) + "(C_n - t) exceeds " +
                                              std::to_string(4 * (cap + 1) - 1) + " at n = " + std::to_string(n));
                }
            }
            if (finite) {
                if (!any || v > out.max) {
                    out.max = v;
                    out.argmax.clear();
                    any = true;
                }
                if (v == out.max)
                    out.argmax.push_back(n);
                if (options.threshold && v >= *options.threshold)
                    out.at_least.push_back(n);
            }
            if (n == stop)
                break;
            two = two * 2 % modulus;
        }
    });

    ScanResult result;
    std::uint64_t best = 0;
    bool any = false;
    for (const auto& block : results) {
        if (block.argmax.empty())
            continue;
        if (!any || block.max > best) {
            best = block.max;
            any = true;
        }
    }
    result.max = Valuation(best);
    for (auto& block : results) {
        if (any && block.max == best && !block.argmax.empty())
            result.argmax.insert(result.argmax.end(), block.argmax.begin(), block.argmax.end());
        result.at_least.insert(result.at_least.end(), block.at_least.begin(), block.at_least.end());
        result.zeros.insert(result.zeros.end(), block.zeros.begin(), block.zeros.end());
        result.escalated.insert(result.escalated.end(), block.escalated.begin(), block.escalated.end());
    }
    return result;
}

BigInt smooth_part_of_cullen(std::uint64_t n)
{
    BigInt s = 1;
    for (std::uint64_t p : {2, 3, 5, 7})
        s *= pow(from_u64(p), cullen_valuation(n, p));
    return s;
}

Nu11Result scan_nu11_case(std::uint64_t lo, std::uint64_t hi, unsigned jobs)
{
    if (lo < 201 || hi > 236898 || lo > hi)
        throw InvalidArgument("range must lie in [201, 236898]");
    constexpr std::uint64_t m11 = 214358881;  // 11^8
    constexpr std::uint64_t m13 = 2197;       // 13^3
    const std::uint64_t blocks = (hi - lo) / block_size + 1;
    std::vector<std::vector<std::uint64_t>> found(blocks);
    parallel_for(blocks, jobs, [&](std::size_t b) {
        const std::uint64_t start = lo + b * block_size;
        const std::uint64_t stop = std::min(hi, start + block_size - 1);
        for (std::uint64_t n = start; n <= stop; ++n) {
            std::uint64_t s = 1;
            for (std::uint64_t p : {2, 3, 5, 7})
                s = mulmod(s, powmod(p, cullen_valuation(n, p), m11), m11);
            const std::uint64_t r = (cullen_mod(n, m11) + m11 - s) % m11;
            // r = 0 would mean nu_11 >= 8; that still counts as >= 4.
            if (r == 0 || count_factor(r, 11) >= 4)
                found[b].push_back(n);
        }
    });
    Nu11Result out;
    for (const auto& f : found)
        out.list11.insert(out.list11.end(), f.begin(), f.end());
    for (std::uint64_t n : out.list11) {
        std::uint64_t s = 1;
        for (std::uint64_t p : {2, 3, 5, 7})
            s = mulmod(s, powmod(p, cullen_valuation(n, p), m13), m13);
        if ((cullen_mod(n, m13) + m13 - s) % m13 == 0)
            out.list13.push_back(n);
    }
    return out;
}

std::vector<WoodallHit> woodall_check(std::uint64_t n_max, unsigned jobs)
{
    if (n_max > 100'000)
        throw RangeTooLarge("woodall_check is limited to n <= 10^5");
    const auto basis = SmoothnessBasis::first_four();
    std::mutex mutex;
    std::vector<WoodallHit> hits;
    parallel_for(n_max, jobs, [&](std::size_t i) {
        const std::uint64_t n = i + 1;
        BigInt s = from_u64(n);
        s <<= static_cast<mp_bitcnt_t>(n);
        s -= 2;  // W_n - 1
        if (s < 1)
            return;
        if (factor_over_basis(s, basis).is_unit()) {
            std::lock_guard lock(mutex);
            hits.push_back({n, std::move(s)});
        }
    });
    std::sort(hits.begin(), hits.end(), [](const WoodallHit& a, const WoodallHit& b) { return a.n < b.n; });
    return hits;
}

}  // namespace cullen
