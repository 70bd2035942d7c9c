#pragma once

#include "cullen/bigint.hpp"
#include "cullen/padic.hpp"
#include "cullen/recurrence.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace cullen {

enum class ClosedFormPart { DoubleRootTerm, SimpleRootTerm };

/// A contiguous run of factorial terms whose sum equals one part of the
/// closed form at index n.
struct DegeneracyWitness {
    std::size_t first = 0;  // 0-based, inclusive
    std::size_t last = 0;
    ClosedFormPart matched = ClosedFormPart::DoubleRootTerm;

    friend bool operator==(const DegeneracyWitness&, const DegeneracyWitness&) = default;
};

/// C_n = m_1! + ... + m_k! + s with s a unit over the basis.
struct Solution {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> ms;  // non-increasing
    BigInt s;
    BasisFactorization s_factorization;
    bool degenerate = false;
    std::optional<DegeneracyWitness> witness;
};

/// Degenerate iff some contiguous subsum of the terms equals (a n + c) alpha^n
/// or b beta^n exactly. `terms` are the a_i m_i! in order.
std::optional<DegeneracyWitness> find_degeneracy(std::uint64_t n, const std::vector<BigInt>& terms,
                                                 const ClosedForm& form);

/// Same test for a Cullen solution (all a_i = 1).
std::optional<DegeneracyWitness> classify_degenerate(const Solution& sol, const ClosedForm& form);

/// For m1 >= 6 a solution forces n > m1; returns nullopt below 6 where the
/// inequality has nothing to say.
std::optional<bool> n_exceeds_m1(std::uint64_t n, std::uint64_t m1);

struct SolveCullenOptions {
    unsigned jobs = 1;
    // Skip m1 >= max(6, n). Off only for cross-checking the pruning.
    bool prune_with_index_inequality = true;
};

/// Every (n, m1, m2, s) with 1 <= n <= n_max, m1_max >= m1 >= m2 >= 1,
/// s = C_n - m1! - m2! >= 1 and s a basis unit, tagged and sorted by
/// (n, m1, m2). Each result is re-verified from scratch before it is returned.
std::vector<Solution> solve_cullen(std::uint64_t n_max, std::uint64_t m1_max, const SmoothnessBasis& basis,
                                   SolveCullenOptions options = {});

/// t(n) for valuation scans of C_n - t(n).
struct ScanTarget {
    std::optional<BigInt> constant;
    std::function<BigInt(std::uint64_t)> builder;

    static ScanTarget fixed(BigInt t) { return {std::move(t), {}}; }
    static ScanTarget from(std::function<BigInt(std::uint64_t)> f) { return {std::nullopt, std::move(f)}; }
    BigInt at(std::uint64_t n) const { return constant ? *constant : builder(n); }
};

struct ScanOptions {
    std::optional<unsigned> v_cap;          // default_vcap(p) when unset
    std::optional<std::uint64_t> threshold;  // also list every n reaching this
    unsigned jobs = 1;
};

struct ScanResult {
    Valuation max{0};                     // over finite values
    std::vector<std::uint64_t> argmax;    // all n attaining max
    std::vector<std::uint64_t> at_least;  // n with valuation >= threshold
    std::vector<std::uint64_t> zeros;     // C_n = t(n) exactly
    std::vector<std::uint64_t> escalated; // n that needed a wider modulus
};

/// Caps for word-sized scans: the largest valuations expected on the
/// desk-scale range plus 4 (3 -> 16, 5 -> 11, 7 -> 10), otherwise whatever
/// fits below 2^63 up to 16.
unsigned default_vcap(std::uint64_t p);

/// max nu_p(C_n - t(n)) over lo <= n <= hi, working mod p^(cap+1) in
/// machine words. Indices whose residue vanishes are retried at exponents
/// 2(cap+1) and 4(cap+1); if that still vanishes and C_n != t(n) the scan
/// throws CapEscalationFailed naming the index.
ScanResult scan_valuation(std::uint64_t p, const ScanTarget& target, std::uint64_t lo, std::uint64_t hi,
                          ScanOptions options = {});

struct Nu11Result {
    std::vector<std::uint64_t> list11;  // nu_11(C_n - s(n)) >= 4
    std::vector<std::uint64_t> list13;  // of those, nu_13(C_n - s(n)) >= 3
};

/// s(n) = 2^nu_2(C_n) 3^nu_3(C_n) 5^nu_5(C_n) 7^nu_7(C_n); the 11-adic test
/// runs mod 11^8 and the 13-adic recheck mod 13^3. Range must lie in
/// [201, 236898].
Nu11Result scan_nu11_case(std::uint64_t lo, std::uint64_t hi, unsigned jobs = 1);

/// The {2,3,5,7}-unit part of C_n, as used by scan_nu11_case.
BigInt smooth_part_of_cullen(std::uint64_t n);

struct WoodallHit {
    std::uint64_t n = 0;
    BigInt s;
};

/// All n <= n_max (at most 10^5) with W_n - 1 >= 1 a {2,3,5,7}-unit.
std::vector<WoodallHit> woodall_check(std::uint64_t n_max, unsigned jobs = 1);

}  // namespace cullen
