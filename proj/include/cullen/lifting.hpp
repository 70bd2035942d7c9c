#pragma once

#include "cullen/bigint.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cullen {

/// The congruence n 2^n = t' (mod p^k) for an odd prime p.
struct LiftTarget {
    LiftTarget(std::uint64_t p, BigInt t_prime);

    std::uint64_t p;
    BigInt t_prime;
};

/// p^k | C_n - t  <=>  p^k | n 2^n - (t - 1)
LiftTarget cullen_target(std::uint64_t p, const BigInt& t);

/// n_j = n_0 + (p-1) p l_1 + ... + (p-1) p^j l_j with p^(j+1) | n_j 2^n_j - t'.
struct LiftChain {
    std::uint64_t p = 0;
    BigInt n0;
    std::vector<std::uint32_t> digits;  // l_1 .. l_j
    BigInt nj;

    std::size_t length() const { return digits.size(); }
    /// n_i for i <= length(), rebuilt from the digits.
    BigInt index_at(std::size_t i) const;
};

/// The p - 1 residues in [0, p(p-1)) solving the congruence mod p.
std::vector<std::uint64_t> base_solutions(const LiftTarget& target);

LiftChain start_chain(const LiftTarget& target, std::uint64_t n0);

/// Appends l_(j+1). Checks p^(j+2) | n_(j+1) 2^n_(j+1) - t' with an unreduced
/// exponent and throws InternalContradiction if that fails.
LiftChain lift_step(const LiftChain& chain, const LiftTarget& target);

/// True when p^(length+1) divides n_j 2^n_j - t'.
bool chain_is_sound(const LiftChain& chain, const LiftTarget& target);

struct BaseCeiling {
    LiftChain chain;  // at least max(J, min_length) steps long
    std::size_t J = 0;
    // Set when n 2^n = t' holds exactly for an n in this class. The chain
    // then stalls at that n, and J bounds every other index of the class.
    std::optional<BigInt> exact_root;
};

struct CeilingResult {
    BigInt N;
    std::size_t J = 0;  // max over bases
    std::vector<BaseCeiling> bases;

    /// n_i for every base at a common length i.
    std::vector<BigInt> indices_at(std::size_t i) const;
};

struct CeilingOptions {
    unsigned jobs = 1;
    // Chains are extended to at least this many steps even if n_j > N earlier.
    std::size_t min_length = 0;
    // Previously computed chains to continue from, matched by n0.
    std::vector<LiftChain> resume;
};

/// Lifts every base residue until n_J > N. J_b is the first chain length with
/// n_(J_b) > N, and J = max J_b. For 0 <= n <= N (exact roots aside)
///     nu_p(n 2^n - t') <= J,
/// with equality possible: the chain index n_(J_b - 1) <= N already has
/// valuation >= J_b.
CeilingResult valuation_ceiling(const LiftTarget& target, const BigInt& N, const CeilingOptions& options = {});

struct SolveOptions {
    std::size_t max_digits = 10'000;  // on p^k
};

/// The p - 1 residues in [0, p^k (p-1)) with p^k | n 2^n - t', by lifting.
std::vector<BigInt> solutions_mod_prime_power(const LiftTarget& target, std::uint64_t k, SolveOptions options = {});

/// Same contract by scanning every candidate; p^k (p-1) must stay <= 10^7.
std::vector<BigInt> brute_force_solutions(const LiftTarget& target, std::uint64_t k);

nlohmann::json chain_to_json(const LiftChain& chain);
LiftChain chain_from_json(const nlohmann::json& j);

}  // namespace cullen
