#include "cullen/recurrence.hpp"

#include "cullen/errors.hpp"
#include "cullen/interval.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

namespace cullen {

namespace {

using i128 = __int128;

std::string show(i128 v)
{
    if (v == 0)
        return "0";
    const bool negative = v < 0;
    std::string digits;
    for (; v != 0; v /= 10)
        digits.insert(digits.begin(), static_cast<char>('0' + (negative ? -(v % 10) : v % 10)));
    return negative ? "-" + digits : digits;
}

std::string term(i128 coeff, const char* power, bool leading)
{
    std::string out;
    if (coeff < 0)
        out = leading ? "-" : " - ";
    else
        out = leading ? "" : " + ";
    const i128 mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1 || *power == '\0')
        out += show(mag);
    return out + power;
}

// X^3 - r1 X^2 - r2 X - r3 rendered with signs folded in.
std::string cubic_text(std::int64_t r1, std::int64_t r2, std::int64_t r3)
{
    return "X^3" + term(-static_cast<i128>(r1), "X^2", false) + term(-static_cast<i128>(r2), "X", false) +
           term(-static_cast<i128>(r3), "", false);
}

std::string linear_factor(i128 root)
{
    if (root == 0)
        return "X";
    return root > 0 ? "(X - " + show(root) + ")" : "(X + " + show(-root) + ")";
}

bool perfect_square(i128 d, i128& root)
{
    if (d < 0)
        return false;
    const BigInt big(show(d));
    if (!mpz_perfect_square_p(big.get_mpz_t()))
        return false;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), big.get_mpz_t());
    root = static_cast<i128>(r.get_si());
    return true;
}

Rational power(std::int64_t base, std::uint64_t n)
{
    return Rational(pow(BigInt(static_cast<long>(base)), n));
}

}  // namespace

Rational ClosedForm::double_root_term(std::uint64_t n) const
{
    Rational r = (a * Rational(from_u64(n)) + c) * power(alpha, n);
    r.canonicalize();
    return r;
}

Rational ClosedForm::simple_root_term(std::uint64_t n) const
{
    Rational r = b * power(beta, n);
    r.canonicalize();
    return r;
}

TernaryRecurrence make_recurrence(std::int64_t r1, std::int64_t r2, std::int64_t r3, std::int64_t u0,
                                  std::int64_t u1, std::int64_t u2)
{
    if (r1 == 0 || r2 == 0 || r3 == 0)
        throw InvalidArgument("recurrence coefficients must be nonzero");

    const std::string cubic = cubic_text(r1, r2, r3);
    const i128 at_one = 1 - static_cast<i128>(r1) - r2 - r3;
    if (at_one != 0)
        throw DegenerateRecurrence(cubic + " does not vanish at X = 1 (value " + show(at_one) + ")");

    // cubic = (X - 1)(X^2 + pX + q)
    const i128 p = 1 - static_cast<i128>(r1);
    const i128 q = r3;
    const i128 disc = p * p - 4 * q;
    i128 s = 0;
    if (!perfect_square(disc, s))
        throw DegenerateRecurrence(cubic + " = (X - 1)(X^2" + term(p, "X", false) + term(q, "", false) +
                                   "), quadratic factor has non-square discriminant " + show(disc));

    const i128 rho1 = (-p - s) / 2;
    const i128 rho2 = (-p + s) / 2;
    i128 alpha = 0;
    i128 beta = 0;
    UnitRoot unit = UnitRoot::Beta;
    if (s == 0) {
        alpha = rho1;
        beta = 1;
    } else if (rho1 == 1 || rho2 == 1) {
        alpha = 1;
        beta = rho1 == 1 ? rho2 : rho1;
        unit = UnitRoot::Alpha;
    } else {
        throw DegenerateRecurrence(cubic + " = (X - 1)" + linear_factor(rho1) + linear_factor(rho2) +
                                   " has no repeated root");
    }
    if (alpha == beta || alpha == -beta) {
        throw RatioUnit(cubic + " = " + linear_factor(alpha) + "^2" + linear_factor(beta) +
                        ", root ratio is " + (alpha == beta ? "1" : "-1"));
    }

    TernaryRecurrence rec;
    rec.coefficients_ = {r1, r2, r3};
    rec.initial_ = {u0, u1, u2};
    rec.unit_root_ = unit;
    ClosedForm& f = rec.form_;
    f.alpha = static_cast<std::int64_t>(alpha);
    f.beta = static_cast<std::int64_t>(beta);

    // Unknowns (a, c, b) from n = 0, 1, 2:
    //   c + b = u0;  alpha a + alpha c + beta b = u1;  2 alpha^2 a + alpha^2 c + beta^2 b = u2
    const Rational A(static_cast<long>(f.alpha));
    const Rational B(static_cast<long>(f.beta));
    Rational m[3][4] = {
        {Rational(0), Rational(1), Rational(1), Rational(u0)},
        {A, A, B, Rational(u1)},
        {2 * A * A, A * A, B * B, Rational(u2)},
    };
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        while (pivot < 3 && m[pivot][col] == 0)
            ++pivot;
        if (pivot == 3)
            throw InternalContradiction("closed-form system is singular for " + cubic);
        if (pivot != col)
            for (int k = 0; k < 4; ++k)
                std::swap(m[pivot][k], m[col][k]);
        for (int row = 0; row < 3; ++row) {
            if (row == col || m[row][col] == 0)
                continue;
            const Rational factor = m[row][col] / m[col][col];
            for (int k = col; k < 4; ++k)
                m[row][k] -= factor * m[col][k];
        }
    }
    f.a = m[0][3] / m[0][0];
    f.c = m[1][3] / m[1][1];
    f.b = m[2][3] / m[2][2];
    f.a.canonicalize();
    f.b.canonicalize();
    f.c.canonicalize();
    if (f.a == 0)
        throw DegenerateRecurrence(cubic + " with initial values " + std::to_string(u0) + ", " + std::to_string(u1) +
                                   ", " + std::to_string(u2) + " gives a = 0, the double root never appears");

    std::int64_t y = 11;
    for (std::int64_t v : {r1, r2, r3, u0, u1, u2}) {
        // |INT64_MIN| is not representable; such inputs cannot satisfy f(1) = 0 anyway.
        y = std::max<std::int64_t>(y, v < 0 ? -v : v);
    }
    rec.y_ = y;
    rec.gamma_ = std::max(std::abs(f.alpha), std::abs(f.beta));
    if (rec.gamma_ < 2)
        throw InternalContradiction("gamma < 2 for " + cubic);

    BigInt w0(static_cast<long>(u0)), w1(static_cast<long>(u1)), w2(static_cast<long>(u2));
    for (std::uint64_t n = 0; n <= 64; ++n) {
        const BigInt expected = n == 0 ? w0 : n == 1 ? w1 : w2;
        if (n >= 3) {
            BigInt next = r1 * w2 + r2 * w1 + r3 * w0;
            w0 = w1;
            w1 = w2;
            w2 = next;
        }
        const BigInt actual = eval(rec, n);
        if (actual != (n < 3 ? expected : w2))
            throw InternalContradiction("closed form disagrees with the recurrence at n = " + std::to_string(n));
    }
    return rec;
}

TernaryRecurrence cullen_sequence()
{
    static const TernaryRecurrence rec = make_recurrence(5, -8, 4, 1, 3, 9);
    return rec;
}

TernaryRecurrence woodall_sequence()
{
    static const TernaryRecurrence rec = make_recurrence(5, -8, 4, -1, 1, 7);
    return rec;
}

const ClosedForm& closed_form(const TernaryRecurrence& rec)
{
    return rec.form();
}

BigInt eval(const TernaryRecurrence& rec, std::uint64_t n)
{
    const ClosedForm& f = rec.form();
    Rational value = f.double_root_term(n) + f.simple_root_term(n);
    value.canonicalize();
    if (value.get_den() != 1)
        throw InternalContradiction("closed form produced a non-integer at n = " + std::to_string(n));
    return value.get_num();
}

std::uint64_t zero_index_bound(const TernaryRecurrence& rec)
{
    const Precision prec = Precision::digits(50);
    const Interval y(static_cast<long>(rec.Y()), prec);
    const Interval bound = Interval(39, prec) * y * log(y);
    return to_u64(bound.ceil_upper());
}

BigInt large_index_threshold(const TernaryRecurrence& rec)
{
    return pow(BigInt(static_cast<long>(rec.Y())), 8);
}

Rational growth_lower_bound(const TernaryRecurrence& rec, const BigInt& n)
{
    if (n <= large_index_threshold(rec))
        throw IndexTooSmall("growth bound needs n > Y^8 = " + to_decimal(large_index_threshold(rec)));
    const std::uint64_t e = to_u64(n);
    const ClosedForm& f = rec.form();
    const BigInt y3 = pow(BigInt(static_cast<long>(rec.Y())), 3);
    const BigInt abs_alpha(static_cast<long>(std::abs(f.alpha)));
    const BigInt abs_beta(static_cast<long>(std::abs(f.beta)));
    Rational bound;
    if (abs_beta > abs_alpha)
        bound = Rational(pow(abs_beta, e), 2 * y3);
    else
        bound = Rational(n * pow(abs_alpha, e), 6 * y3);
    bound.canonicalize();
    return bound;
}

}  // namespace cullen
