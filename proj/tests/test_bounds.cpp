#include "cullen/bounds.hpp"
#include "cullen/errors.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cullen;

// Reference values below come from an independent 120-digit evaluation of
// the same formulas (plain fixed-point iteration, no interval arithmetic).

namespace {

const Precision prec = default_precision();

Interval num(const char* text)
{
    return Interval::decimal(text, prec);
}

// x overlaps the reference value widened by a relative 1e-18, enough for
// references quoted to 20+ significant digits.
bool agrees(const Interval& x, const char* text)
{
    const Precision wide = Precision::digits(60);
    const Interval v = Interval::decimal(text, wide);
    const Interval slack = abs(v) * Interval::decimal("1e-18", wide);
    const Interval window = hull(v - slack, v + slack);
    return mpfr_lessequal_p(x.lower(), window.upper()) && mpfr_lessequal_p(window.lower(), x.upper());
}

// Largest x >= 1 with x = u + v (log x)^h, by bracketing and bisection in
// long double; 0 when there is none.
long double largest_fixed_point(long double u, long double v, long double h, long double limit)
{
    auto g = [&](long double x) { return u + v * std::pow(std::log(x), h) - x; };
    long double lo = limit;
    while (lo > 1 && g(lo) < 0)
        lo /= 1.01L;
    if (lo <= 1 && g(1) < 0)
        return 0;
    long double hi = std::min(limit, lo * 1.01L);
    if (g(hi) >= 0)
        return hi;
    for (int i = 0; i < 200; ++i) {
        const long double mid = (lo + hi) / 2;
        (g(mid) >= 0 ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

TEST_CASE("Yu structural constant")
{
    const Interval s = yu_structural_constant(2, 1, 1, prec);
    CHECK(agrees(s, "186917408232.1441243987866"));
    CHECK(s.upper_double() <= 1.87e11);
    CHECK((Interval(3, prec) * s).upper_double() <= 5.61e11);
}

TEST_CASE("Yu prime factor")
{
    const Interval f = yu_prime_factor(2, 1, prec);
    CHECK(agrees(f, "4.1627379620112155957"));
    CHECK(f.upper_double() < 4.1628);
    CHECK_THROWS_AS(yu_prime_factor(4, 1, prec), InvalidArgument);
}

TEST_CASE("Yu bound is linear in each height and monotone")
{
    YuParams base{2, 1, 1, 1, 3, {Interval(5, prec), Interval(7, prec)}, Interval(1000, prec)};
    const Interval b = yu_valuation_bound(base);

    YuParams doubled = base;
    doubled.H[0] = Interval(10, prec);
    CHECK(agrees(yu_valuation_bound(doubled) / b, "2"));

    for (int field = 0; field < 5; ++field) {
        YuParams bigger = base;
        switch (field) {
        case 0:
            bigger.p = 17;
            base.p = 11;
            break;
        case 1: bigger.D = 2; break;
        case 2: bigger.Bstar = Interval(5000, prec); break;
        case 3: bigger.H[1] = Interval(8, prec); break;
        case 4: bigger.e = 2; break;
        }
        CAPTURE(field);
        CHECK(mpfr_greaterequal_p(yu_valuation_bound(bigger).upper(), yu_valuation_bound(base).upper()));
        base.p = 3;
    }

    // p / log^2 p falls until e^2, so small primes are not monotone.
    YuParams three = base, seven = base;
    seven.p = 7;
    seven.H = {Interval(5, prec), Interval(7, prec)};
    CHECK(certainly_less(yu_valuation_bound(seven), yu_valuation_bound(three)));

    YuParams bad = base;
    bad.H.pop_back();
    CHECK_THROWS_AS(yu_valuation_bound(bad), InvalidArgument);
    bad = base;
    bad.H[0] = num("0.5");  // below log 3
    CHECK_THROWS_AS(yu_valuation_bound(bad), InvalidArgument);
    bad = base;
    bad.Bstar = Interval(2, prec);
    CHECK_THROWS_AS(yu_valuation_bound(bad), InvalidArgument);
}

TEST_CASE("Petho bound examples")
{
    const Interval a = petho_bound(Interval(2, prec), Interval(1, prec), Interval(1, prec));
    CHECK(agrees(a, "33.5562243957226009089217098423"));
    CHECK(largest_fixed_point(2, 1, 1, 1000) < a.lower_double());
    CHECK(std::abs(static_cast<double>(largest_fixed_point(2, 1, 1, 1000)) - 3.146) < 1e-3);

    const Interval b = petho_bound(Interval(0, prec), Interval(4, prec), Interval(2, prec));
    CHECK(agrees(b, "873.570400530307825249764179245774"));
    const double x = static_cast<double>(largest_fixed_point(0, 4, 2, 1e4));
    CHECK(x > 70);
    CHECK(x < 80);

    const Interval c = petho_bound(Interval(0, prec), Interval(0, prec), Interval(1, prec));
    CHECK(agrees(c / exp(Interval(2, prec)), "4"));
}

TEST_CASE("Petho bound dominates the largest fixed point")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ud(0, 100), vd(0.1, 100), hd(1, 5);
    for (int i = 0; i < 1000; ++i) {
        const double u = ud(rng), v = vd(rng), h = hd(rng);
        const Interval bound = petho_bound(Interval::from_double(u, prec), Interval::from_double(v, prec),
                                           Interval::from_double(h, prec));
        const long double limit = static_cast<long double>(bound.upper_double());
        const long double x = largest_fixed_point(u, v, h, limit);
        CAPTURE(u);
        CAPTURE(v);
        CAPTURE(h);
        REQUIRE(x < limit);
        // nothing beyond the bound solves the equation either
        REQUIRE(u + v * std::pow(std::log(limit), h) - limit < 0);
    }
}

TEST_CASE("solve_log_inequality")
{
    for (unsigned k = 1; k <= 4; ++k)
        CHECK(solve_log_inequality(Interval(1, prec), Interval(10, prec), Interval(0, prec), k) ==
              oracle::power(10, k) - 1);

    const auto rec = cullen_sequence();
    const Interval E = num("10.49") * c2_constant(rec, prec);
    const BigInt n1 = solve_log_inequality(num("1.45"), log(Interval(8, prec)), E, 2);
    CHECK(n1 == BigInt("13392045181802268133484523008698209969839"));

    // doubling C at least doubles the answer
    const BigInt n1c = solve_log_inequality(num("2.9"), log(Interval(8, prec)), E, 2);
    CHECK(n1c >= 2 * n1);

    CHECK_THROWS_AS(solve_log_inequality(Interval(0, prec), Interval(1, prec), Interval(1, prec), 1), InvalidArgument);
    CHECK_THROWS_AS(solve_log_inequality(Interval(1, prec), Interval(1, prec), Interval(1, prec), 0), InvalidArgument);
}

TEST_CASE("solve_log_inequality answers are maximal")
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 40; ++i) {
        const Interval C = Interval::from_double(0.5 + (rng() % 1000) / 100.0, prec);
        const Interval D = Interval::from_double(0.1 + (rng() % 500) / 100.0, prec);
        const Interval E = Interval::from_double((rng() % 1000) / 10.0, prec);
        const unsigned k = 1 + rng() % 3;
        const BigInt n = solve_log_inequality(C, D, E, k);
        auto rhs = [&](const BigInt& m) {
            return C * pow(D + E * pow(log(Interval::exact(m, Precision::digits(80))), 3), k);
        };
        if (n > 0) {
            CHECK(mpfr_cmp_z(rhs(n).upper(), n.get_mpz_t()) > 0);
        }
        for (BigInt m = n + 1; m <= n + 5; ++m)
            CHECK(mpfr_cmp_z(rhs(m).lower(), m.get_mpz_t()) <= 0);
        const BigInt far = 10 * (n + 3);
        CHECK(mpfr_cmp_z(rhs(far).lower(), far.get_mpz_t()) < 0);
    }
}

TEST_CASE("general constants for Cullen")
{
    const auto rec = cullen_sequence();
    const auto g1 = general_constants(1, 1, rec);
    CHECK(g1.c1 == 214358881);
    CHECK(agrees(g1.c2, "11614801513403.7192187247557719"));
    CHECK(g1.n1 == BigInt("15223667118688264702"));
    CHECK(g1.n0 == BigInt("15141397756959273325"));

    const auto g2 = general_constants(2, 1, rec);
    CHECK(g2.n1 == BigInt("13392045181802268133484523008698209969839"));
    CHECK(g2.n0 == BigInt("13319904344779087834566858537225901399604"));
    CHECK(g2.c4 == g2.n1);

    const auto g3 = general_constants(3, 1, rec);
    CHECK(g3.n1 == BigInt("62719569298279268746071580789803616571400208333080582607831570"));
    CHECK(g3.n0 == BigInt("62382316583564160066573195682166011062211617954159347011873910"));

    const Interval c3 = g2.c3(oracle::power(10, 40));
    CHECK(agrees(c3, "0.0008930478085501019595556808"));
}

TEST_CASE("constants survive a precision increase")
{
    const auto rec = cullen_sequence();
    const auto lo = sunit_constants(2, 1, 7, rec, Precision::digits(50));
    const auto hi = sunit_constants(2, 1, 7, rec, Precision::digits(100));
    CHECK(mpfr_lessequal_p(hi.c6.upper(), lo.c6.upper()));
    CHECK(mpfr_lessequal_p(hi.c7.upper(), lo.c7.upper()));
    CHECK(mpfr_lessequal_p(lo.c6.lower(), hi.c6.upper()));
    CHECK(hi.c5 <= lo.c5);
    const auto c2lo = c2_constant(rec, Precision::digits(50));
    const auto c2hi = c2_constant(rec, Precision::digits(100));
    CHECK(mpfr_lessequal_p(c2hi.upper(), c2lo.upper()));
}

TEST_CASE("S-unit constants")
{
    const auto rec = cullen_sequence();
    const auto s2 = sunit_constants(2, 1, 7, rec);
    CHECK(agrees(s2.c7, "5.697023054186820089064462e+45"));
    CHECK(agrees(s2.c6, "2.193872395826046672670398e+67"));
    CHECK(s2.c6.lower_double() > 1e65);
    CHECK(s2.c6.upper_double() < 1e68);
    CHECK(s2.c6.lower_double() > 1e66);  // above the working bound 10^66
    CHECK(s2.c5 == s2.c6.ceil_upper());

    const auto s1 = sunit_constants(1, 1, 7, rec);
    CHECK(agrees(s1.c6, "6.580258114647392794085711e+43"));
    CHECK(certainly_less(s1.c6, s2.c6));

    const auto s5 = sunit_constants(2, 1, 5, rec);
    const auto s11 = sunit_constants(2, 1, 11, rec);
    CHECK(agrees(s5.c6, "2.516910839479209947480514e+66"));
    CHECK(agrees(s11.c6, "4.006679955336672270922627e+68"));
    CHECK(certainly_less(s5.c6, s2.c6));
    CHECK(certainly_less(s2.c6, s11.c6));
}

TEST_CASE("valuation bound for u_n - t")
{
    const auto rec = cullen_sequence();
    const std::uint64_t n = 214358882;
    const Interval b0 = vp_un_minus_t_bound(rec, n, 0, 2);
    const Interval expected = Interval(2, prec) * c2_constant(rec, prec) * pow(log(Interval(static_cast<long>(n), prec)), 2);
    CHECK(agrees(b0, expected.upper_string(30).c_str()));

    // t = 1 is b for Cullen
    CHECK_THROWS_AS(vp_un_minus_t_bound(rec, n, 1, 2), PreconditionViolated);
    CHECK_THROWS_AS(vp_un_minus_t_bound(rec, 214358881, 0, 2), PreconditionViolated);

    // log+ t is 1 for small t and log |t| beyond e
    const Interval b5 = vp_un_minus_t_bound(rec, n, -5, 3);
    const Interval b5e = Interval(3, prec) * c2_constant(rec, prec) * pow(log(Interval(static_cast<long>(n), prec)), 2) *
                         log(Interval(5, prec));
    CHECK(agrees(b5, b5e.upper_string(30).c_str()));
    const Interval b2 = vp_un_minus_t_bound(rec, n, 2, 3);
    CHECK(agrees(b2 / (Interval(3, prec) * c2_constant(rec, prec) * pow(log(Interval(static_cast<long>(n), prec)), 2)),
                   "1"));
}

TEST_CASE("t = u_n is rejected")
{
    // Small recurrence stand-in: alpha = 1 branch, (X - 1)^2 (X - 3) with Y = 11
    const auto rec = make_recurrence(5, -7, 3, 1, 2, 7);
    const std::uint64_t n = large_index_threshold(rec).get_ui() + 1;
    const Rational line = rec.form().a * n + rec.form().c;
    if (line.get_den() == 1)
        CHECK_THROWS_AS(vp_un_minus_t_bound(rec, n, line.get_num(), 2), PreconditionViolated);
    CHECK_NOTHROW(vp_un_minus_t_bound(rec, n, 12345, 2));
}
