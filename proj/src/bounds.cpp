#include "cullen/bounds.hpp"

#include "cullen/errors.hpp"
#include "cullen/padic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cullen {

namespace {

Interval lit(long v, Precision prec)
{
    return Interval(v, prec);
}

Interval dec(const char* text, Precision prec)
{
    return Interval::decimal(text, prec);
}

// x^(1/h) for x >= 0.
Interval root(const Interval& x, const Interval& h)
{
    if (mpfr_sgn(x.lower()) < 0)
        throw InvalidArgument("root of a negative quantity");
    const Interval inv = lit(1, x.precision()) / h;
    if (x.certainly_positive())
        return pow(x, inv);
    if (mpfr_zero_p(x.upper()))
        return Interval(x.precision());
    return hull(Interval(x.precision()), pow(x.upper_point(), inv));
}

bool exceeds(const Interval& value, const BigInt& n)
{
    return mpfr_cmp_z(value.upper(), n.get_mpz_t()) > 0;
}

mpfr_prec_t widest(std::initializer_list<const Interval*> xs)
{
    mpfr_prec_t bits = 0;
    for (auto* x : xs)
        bits = std::max(bits, mpfr_get_prec(x->lower()));
    return bits;
}

}  // namespace

Interval yu_structural_constant(unsigned l, unsigned D, unsigned e, Precision prec)
{
    if (l == 0 || D == 0 || e == 0)
        throw InvalidArgument("Yu constant needs l, D, e >= 1");
    // (20 sqrt(l+1) D)^(2(l+1)) = (400 (l+1) D^2)^(l+1) is an integer.
    const BigInt inner = BigInt(400) * (l + 1) * D * D;
    const BigInt integral = 19 * pow(inner, l + 1) * pow(BigInt(e), l - 1);
    const Interval log_term = lit(5, prec) + log(Interval::exact(BigInt(l) * D, prec));
    return Interval::exact(integral, prec) * log_term;
}

Interval yu_prime_factor(std::uint64_t p, unsigned f, Precision prec)
{
    require_prime(p);
    if (f == 0)
        throw InvalidArgument("inertial degree must be >= 1");
    const Interval fl = lit(static_cast<long>(f), prec) * log(Interval::exact(from_u64(p), prec));
    return Interval::exact(pow(from_u64(p), f), prec) / pow(fl, 2);
}

Interval yu_valuation_bound(const YuParams& params)
{
    if (params.l == 0 || params.H.size() != params.l)
        throw InvalidArgument("Yu bound needs l >= 1 heights, got " + std::to_string(params.H.size()));
    const Precision prec = params.Bstar.precision();
    const Interval log_p = log(Interval::exact(from_u64(params.p), prec));
    for (const auto& h : params.H)
        if (certainly_less(h, log_p))
            throw InvalidArgument("every H_j must be at least log p");
    if (certainly_less(params.Bstar, lit(3, prec)))
        throw InvalidArgument("B* must be at least 3");

    Interval bound = yu_structural_constant(params.l, params.D, params.e, prec) * yu_prime_factor(params.p, params.f, prec);
    for (const auto& h : params.H)
        bound = bound * h;
    return bound * log(params.Bstar);
}

Interval petho_bound(const Interval& u, const Interval& v, const Interval& h)
{
    const Precision prec = Precision::from_bits(widest({&u, &v, &h}));
    if (mpfr_sgn(u.lower()) < 0 || mpfr_sgn(v.lower()) < 0)
        throw InvalidArgument("Petho bound needs u, v >= 0");
    if (certainly_less(h, lit(1, prec)))
        throw InvalidArgument("Petho bound needs h >= 1");

    const Interval two_h = pow(lit(2, prec), h);
    const Interval ur = root(u, h);
    const Interval e2 = exp(lit(2, prec));
    Interval best = two_h * pow(ur + lit(2, prec) * e2, h);

    if (v.certainly_positive()) {
        const Interval base = ur + root(v, h) * log(pow(h, h) * v);
        if (base.certainly_positive())
            best = max(best, two_h * pow(base, h));
        else if (mpfr_sgn(base.upper()) > 0)
            best = max(best, two_h * pow(base.upper_point(), h));
    } else if (mpfr_sgn(v.upper()) > 0) {
        throw InvalidArgument("v encloses both zero and positive values");
    }
    return best;
}

BigInt solve_log_inequality(const Interval& C, const Interval& D, const Interval& E, unsigned k)
{
    if (k == 0)
        throw InvalidArgument("k must be positive");
    if (!C.certainly_positive() || mpfr_sgn(E.lower()) < 0)
        throw InvalidArgument("need C > 0 and E >= 0");
    const mpfr_prec_t base_bits = widest({&C, &D, &E});

    auto rhs = [&](const BigInt& n) {
        const auto bits = std::max<mpfr_prec_t>(base_bits, static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 64);
        const Interval l = log(Interval::exact(n, Precision::from_bits(bits)));
        const Interval inner = D + E * pow(l, 3);
        if (!inner.certainly_positive())
            throw InvalidArgument("D + E log^3 n must stay positive");
        return C * pow(inner, k);
    };
    auto holds = [&](const BigInt& n) { return exceeds(rhs(n), n); };

    BigInt lo = 3;
    if (!holds(lo)) {
        for (BigInt n = 2; n >= 1; --n)
            if (holds(n))
                return n;
        return 0;
    }
    // Upper fixed-point iteration: increasing, stops once rhs(x) <= x.
    BigInt x = lo;
    for (int round = 0;; ++round) {
        if (round == 1000)
            throw NoConvergence("fixed-point iteration did not settle after 1000 rounds (last iterate " +
                                to_decimal(x) + ")");
        const BigInt next = rhs(x).ceil_upper();
        if (next <= x)
            break;
        lo = x;
        x = next;
    }
    // holds(lo) and !holds(x); bisect for the last n that may hold.
    BigInt hi = x;
    while (hi - lo > 1) {
        const BigInt mid = BigInt(lo + hi) / 2;
        if (holds(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Interval c2_constant(const TernaryRecurrence& rec, Precision prec)
{
    const Interval logy = log(lit(rec.Y(), prec));
    return dec("2.02e12", prec) * pow(logy, 2);
}

namespace {

BoundConstants general_at(unsigned k, std::uint64_t A, const TernaryRecurrence& rec, Precision prec)
{
    const Interval c2 = c2_constant(rec, prec);
    const Interval E = dec("10.49", prec) * c2;
    const Interval fourA = Interval::exact(4 * from_u64(A), prec);
    const BigInt n1 = solve_log_inequality(dec("1.45", prec), log(Interval::exact(4 * (from_u64(A) + 1), prec)), E, k);
    const Interval log_gamma = log(lit(rec.gamma(), prec));
    const BigInt n0 = solve_log_inequality(lit(1, prec) / log_gamma, log(fourA), E, k);
    const BigInt c1 = large_index_threshold(rec);

    auto c3 = [c2, k, fourA, prec](const BigInt& n) {
        const auto bits = std::max<mpfr_prec_t>(prec.bits(), static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 64);
        const Interval x = Interval::exact(n, Precision::from_bits(bits));
        const Interval first = pow(x / dec("1.45", prec), lit(1, prec) / lit(2 * k + 2, prec));
        const Interval second = log(fourA) / lit(4, prec) + dec("2.63", prec) * c2 * pow(log(x), 3);
        return first / sqrt(second);
    };
    return BoundConstants{k, A, c1, c2, n0, n1, std::max(c1, n1), c3};
}

}  // namespace

BoundConstants general_constants(unsigned k, std::uint64_t A, const TernaryRecurrence& rec, Precision precision)
{
    if (k == 0 || A == 0)
        throw InvalidArgument("k and A must be positive");
    BoundConstants out = general_at(k, A, rec, precision);
    // The solutions can have more digits than the working precision; redo
    // with room to spare so the integer answers are tight.
    const auto needed = static_cast<unsigned>(std::max(mpz_sizeinbase(out.n1.get_mpz_t(), 10),
                                                       mpz_sizeinbase(out.n0.get_mpz_t(), 10))) + 20;
    if (needed > precision.decimal_digits())
        out = general_at(k, A, rec, Precision::digits(needed));
    return out;
}

SUnitConstants sunit_constants(const BoundConstants& g, std::uint64_t P)
{
    require_prime(P);
    const Precision prec = g.c2.precision();
    const unsigned k = g.k;
    const Interval m = Interval::exact(from_u64(std::max(P, g.A)), prec);
    const Interval log4A = log(Interval::exact(4 * from_u64(g.A), prec));
    const Interval c7 = dec("1.45", prec) * pow(m, 2 * k + 2) * pow(lit(2, prec) * g.c2 * log4A, k + 1);
    const unsigned e = 3 * k + 3;
    const Interval inner = c7 * pow(lit(e, prec), e);
    const Interval c6 = pow(lit(2, prec), e) * c7 * pow(log(inner), e);
    return SUnitConstants{c7, c6, std::max(g.c4, c6.ceil_upper())};
}

SUnitConstants sunit_constants(unsigned k, std::uint64_t A, std::uint64_t P, const TernaryRecurrence& rec,
                               Precision precision)
{
    return sunit_constants(general_constants(k, A, rec, precision), P);
}

Interval vp_un_minus_t_bound(const TernaryRecurrence& rec, std::uint64_t n, const BigInt& t, std::uint64_t p,
                             Precision prec)
{
    require_prime(p);
    const BigInt c1 = large_index_threshold(rec);
    if (from_u64(n) <= c1)
        throw PreconditionViolated("n = " + std::to_string(n) + " must exceed Y^8 = " + to_decimal(c1));
    const ClosedForm& f = rec.form();
    if (rec.unit_root() == UnitRoot::Beta && Rational(t) == f.b)
        throw PreconditionViolated("t equals b while beta = 1");
    if (rec.unit_root() == UnitRoot::Alpha) {
        Rational linear = f.a * Rational(from_u64(n)) + f.c;
        linear.canonicalize();
        if (Rational(t) == linear)
            throw PreconditionViolated("t equals a n + c while alpha = 1");
    }
    // |u_n| exceeds growth_lower_bound, whose size we can read off without
    // forming u_n: t can only equal u_n if it is at least that large.
    const double log2_gamma = std::log2(static_cast<double>(rec.gamma()));
    const double min_bits = static_cast<double>(n) * log2_gamma - std::log2(6.0 * std::pow(rec.Y(), 3)) - 2;
    if (static_cast<double>(mpz_sizeinbase(t.get_mpz_t(), 2)) >= min_bits && eval(rec, n) == t)
        throw PreconditionViolated("t equals u_n");

    const Interval logn = log(Interval::exact(from_u64(n), prec));
    Interval bound = c2_constant(rec, prec) * Interval::exact(from_u64(p), prec) * pow(logn, 2);
    if (t != 0)
        bound = bound * max(lit(1, prec), log(Interval::exact(abs(t), prec)));
    return bound;
}

}  // namespace cullen
