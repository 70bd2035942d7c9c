#pragma once

#include "cullen/bigint.hpp"
#include "cullen/interval.hpp"
#include "cullen/recurrence.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace cullen {

// All real-valued results are Interval enclosures. Upper bounds should be
// read from upper(), the lower bound c3 from lower().

inline Precision default_precision()
{
    return Precision::digits(50);
}

/// Inputs to Yu's p-adic bound for a linear form in l logarithms.
struct YuParams {
    unsigned l = 1;
    unsigned D = 1;  // field degree
    unsigned e = 1;  // ramification index of the prime above p
    unsigned f = 1;  // inertial degree
    std::uint64_t p = 2;
    std::vector<Interval> H;  // H_j >= max(h(eta_j), log p)
    Interval Bstar;           // >= 3
};

/// 19 (20 sqrt(l+1) D)^(2(l+1)) e^(l-1) log(e^5 l D)
Interval yu_structural_constant(unsigned l, unsigned D, unsigned e, Precision precision);

/// p^f / (f log p)^2
Interval yu_prime_factor(std::uint64_t p, unsigned f, Precision precision);

/// structural constant * prime factor * H_1 ... H_l * log B*
Interval yu_valuation_bound(const YuParams& params);

/// Upper bound for the largest real x with x = u + v (log x)^h:
///   max(2^h (u^(1/h) + v^(1/h) log(h^h v))^h, 2^h (u^(1/h) + 2 e^2)^h).
/// The first branch is dropped when it is undefined (v = 0, or a negative
/// base under the power).
Interval petho_bound(const Interval& u, const Interval& v, const Interval& h);

/// Largest integer n >= 1 with n < C (D + E log^3 n)^k, or 0 if there is none.
/// Points where the enclosure cannot decide the inequality count as
/// solutions, so the answer never undershoots.
BigInt solve_log_inequality(const Interval& C, const Interval& D, const Interval& E, unsigned k);

struct BoundConstants {
    unsigned k = 0;
    std::uint64_t A = 0;
    BigInt c1;  // Y^8
    Interval c2;
    BigInt n0;
    BigInt n1;
    BigInt c4;  // max(c1, n1)
    /// (n / 1.45)^(1/(2k+2)) (log(4A)/4 + 2.63 c2 log^3 n)^(-1/2); a lower
    /// bound on P, so read lower().
    std::function<Interval(const BigInt&)> c3;
};

BoundConstants general_constants(unsigned k, std::uint64_t A, const TernaryRecurrence& rec,
                                 Precision precision = default_precision());

struct SUnitConstants {
    Interval c7;
    Interval c6;
    BigInt c5;  // max(c4, ceil c6)
};

SUnitConstants sunit_constants(unsigned k, std::uint64_t A, std::uint64_t P, const TernaryRecurrence& rec,
                               Precision precision = default_precision());
SUnitConstants sunit_constants(const BoundConstants& general, std::uint64_t P);

/// Upper bound on nu_p(u_n - t) for n > Y^8: c2 p log^2 n, times log+ t when
/// t != 0, where log+ t = max(1, log |t|). Throws PreconditionViolated when
/// n <= Y^8, t = u_n, t = b with beta = 1, or t = a n + c with alpha = 1.
Interval vp_un_minus_t_bound(const TernaryRecurrence& rec, std::uint64_t n, const BigInt& t, std::uint64_t p,
                             Precision precision = default_precision());

/// 2.02e12 log^2 Y
Interval c2_constant(const TernaryRecurrence& rec, Precision precision = default_precision());

}  // namespace cullen
