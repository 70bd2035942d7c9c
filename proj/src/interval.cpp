#include "cullen/interval.hpp"

#include "cullen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cullen {

namespace {

mpfr_prec_t joint(const Interval& a, const Interval& b)
{
    return std::max(mpfr_get_prec(a.lower()), mpfr_get_prec(b.lower()));
}

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Hull over the four endpoint combinations; valid for any operation that is
// monotone in each argument separately on the box.
void corner_hull(mpfr_ptr lo, mpfr_ptr hi, const Interval& a, const Interval& b, BinaryOp op)
{
    const mpfr_prec_t prec = mpfr_get_prec(lo);
    mpfr_t down, up;
    mpfr_init2(down, prec);
    mpfr_init2(up, prec);
    bool first = true;
    for (auto x : {a.lower(), a.upper()}) {
        for (auto y : {b.lower(), b.upper()}) {
            op(down, x, y, MPFR_RNDD);
            op(up, x, y, MPFR_RNDU);
            if (first || mpfr_less_p(down, lo))
                mpfr_set(lo, down, MPFR_RNDD);
            if (first || mpfr_greater_p(up, hi))
                mpfr_set(hi, up, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(down);
    mpfr_clear(up);
}

std::string format(mpfr_srcptr value, int digits, bool round_up)
{
    char* text = nullptr;
    if (round_up)
        mpfr_asprintf(&text, "%.*RUe", digits, value);
    else
        mpfr_asprintf(&text, "%.*RDe", digits, value);
    std::string result(text);
    mpfr_free_str(text);
    return result;
}

}  // namespace

Precision Precision::digits(unsigned decimal_digits)
{
    const auto bits = static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.3219280948873623)) + 8;
    return Precision(std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
}

Precision Precision::from_bits(mpfr_prec_t bits)
{
    if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX)
        throw InvalidArgument("precision out of range");
    return Precision(bits);
}

unsigned Precision::decimal_digits() const
{
    return static_cast<unsigned>(std::floor((bits_ - 8) / 3.3219280948873623));
}

Interval::Interval(Precision precision)
{
    mpfr_init2(lo_, precision.bits());
    mpfr_init2(hi_, precision.bits());
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, Precision precision) : Interval(precision)
{
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other)
{
    mpfr_init2(lo_, mpfr_get_prec(other.lo_));
    mpfr_init2(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& other)
{
    if (this != &other) {
        mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval::~Interval()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::exact(const BigInt& value, Precision precision)
{
    Interval result(precision);
    mpfr_set_z(result.lo_, value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(result.hi_, value.get_mpz_t(), MPFR_RNDU);
    return result;
}

Interval Interval::decimal(std::string_view text, Precision precision)
{
    Interval result(precision);
    const std::string literal(text);
    if (mpfr_set_str(result.lo_, literal.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(result.hi_, literal.c_str(), 10, MPFR_RNDU) != 0)
        throw InvalidArgument("malformed decimal literal '" + literal + "'");
    return result;
}

Interval Interval::from_double(double value, Precision precision)
{
    if (!std::isfinite(value))
        throw InvalidArgument("non-finite value");
    Interval result(precision);
    mpfr_set_d(result.lo_, value, MPFR_RNDD);
    mpfr_set_d(result.hi_, value, MPFR_RNDU);
    return result;
}

Precision Interval::precision() const
{
    return Precision::from_bits(mpfr_get_prec(lo_));
}

double Interval::lower_double() const
{
    return mpfr_get_d(lo_, MPFR_RNDD);
}

double Interval::upper_double() const
{
    return mpfr_get_d(hi_, MPFR_RNDU);
}

std::string Interval::upper_string(int digits) const
{
    return format(hi_, digits, true);
}

std::string Interval::lower_string(int digits) const
{
    return format(lo_, digits, false);
}

Interval Interval::lower_point() const
{
    Interval result(precision());
    mpfr_set(result.lo_, lo_, MPFR_RNDD);
    mpfr_set(result.hi_, lo_, MPFR_RNDU);
    return result;
}

Interval Interval::upper_point() const
{
    Interval result(precision());
    mpfr_set(result.lo_, hi_, MPFR_RNDD);
    mpfr_set(result.hi_, hi_, MPFR_RNDU);
    return result;
}

BigInt Interval::ceil_upper() const
{
    BigInt result;
    mpfr_get_z(result.get_mpz_t(), hi_, MPFR_RNDU);
    return result;
}

BigInt Interval::floor_lower() const
{
    BigInt result;
    mpfr_get_z(result.get_mpz_t(), lo_, MPFR_RNDD);
    return result;
}

bool Interval::contains_zero() const
{
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::certainly_positive() const
{
    return mpfr_sgn(lo_) > 0;
}

Interval Interval::operator-() const
{
    Interval result(precision());
    mpfr_neg(result.lo_, hi_, MPFR_RNDD);
    mpfr_neg(result.hi_, lo_, MPFR_RNDU);
    return result;
}

Interval operator+(const Interval& a, const Interval& b)
{
    Interval result(Precision::from_bits(joint(a, b)));
    mpfr_add(result.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(result.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return result;
}

Interval operator-(const Interval& a, const Interval& b)
{
    Interval result(Precision::from_bits(joint(a, b)));
    mpfr_sub(result.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(result.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return result;
}

Interval operator*(const Interval& a, const Interval& b)
{
    Interval result(Precision::from_bits(joint(a, b)));
    corner_hull(result.lo_, result.hi_, a, b, &mpfr_mul);
    return result;
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero())
        throw InvalidArgument("interval division by an interval containing zero");
    Interval result(Precision::from_bits(joint(a, b)));
    corner_hull(result.lo_, result.hi_, a, b, &mpfr_div);
    return result;
}

Interval log(const Interval& x)
{
    if (!x.certainly_positive())
        throw InvalidArgument("log of an interval that is not strictly positive");
    Interval result(x.precision());
    mpfr_log(const_cast<mpfr_ptr>(result.lower()), x.lower(), MPFR_RNDD);
    mpfr_log(const_cast<mpfr_ptr>(result.upper()), x.upper(), MPFR_RNDU);
    return result;
}

Interval exp(const Interval& x)
{
    Interval result(x.precision());
    mpfr_exp(const_cast<mpfr_ptr>(result.lower()), x.lower(), MPFR_RNDD);
    mpfr_exp(const_cast<mpfr_ptr>(result.upper()), x.upper(), MPFR_RNDU);
    return result;
}

Interval sqrt(const Interval& x)
{
    if (mpfr_sgn(x.lower()) < 0)
        throw InvalidArgument("sqrt of an interval with negative points");
    Interval result(x.precision());
    mpfr_sqrt(const_cast<mpfr_ptr>(result.lower()), x.lower(), MPFR_RNDD);
    mpfr_sqrt(const_cast<mpfr_ptr>(result.upper()), x.upper(), MPFR_RNDU);
    return result;
}

Interval pow(const Interval& x, unsigned long exponent)
{
    Interval result(x.precision());
    auto lo = const_cast<mpfr_ptr>(result.lower());
    auto hi = const_cast<mpfr_ptr>(result.upper());
    const bool even = exponent % 2 == 0;
    if (mpfr_sgn(x.lower()) >= 0 || !even) {
        mpfr_pow_ui(lo, x.lower(), exponent, MPFR_RNDD);
        mpfr_pow_ui(hi, x.upper(), exponent, MPFR_RNDU);
    } else if (mpfr_sgn(x.upper()) <= 0) {
        mpfr_pow_ui(lo, x.upper(), exponent, MPFR_RNDD);
        mpfr_pow_ui(hi, x.lower(), exponent, MPFR_RNDU);
    } else {
        mpfr_set_zero(lo, 1);
        const auto big = mpfr_cmpabs(x.lower(), x.upper()) > 0 ? x.lower() : x.upper();
        mpfr_pow_ui(hi, big, exponent, MPFR_RNDU);
    }
    return result;
}

Interval pow(const Interval& x, const Interval& y)
{
    if (!x.certainly_positive())
        throw InvalidArgument("real power of an interval that is not strictly positive");
    Interval result(Precision::from_bits(std::max(mpfr_get_prec(x.lower()), mpfr_get_prec(y.lower()))));
    corner_hull(const_cast<mpfr_ptr>(result.lower()), const_cast<mpfr_ptr>(result.upper()), x, y, &mpfr_pow);
    return result;
}

Interval max(const Interval& a, const Interval& b)
{
    Interval result(Precision::from_bits(joint(a, b)));
    mpfr_max(const_cast<mpfr_ptr>(result.lower()), a.lower(), b.lower(), MPFR_RNDD);
    mpfr_max(const_cast<mpfr_ptr>(result.upper()), a.upper(), b.upper(), MPFR_RNDU);
    return result;
}

Interval hull(const Interval& a, const Interval& b)
{
    Interval result(Precision::from_bits(joint(a, b)));
    mpfr_min(const_cast<mpfr_ptr>(result.lower()), a.lower(), b.lower(), MPFR_RNDD);
    mpfr_max(const_cast<mpfr_ptr>(result.upper()), a.upper(), b.upper(), MPFR_RNDU);
    return result;
}

Interval abs(const Interval& x)
{
    if (mpfr_sgn(x.lower()) >= 0)
        return x;
    if (mpfr_sgn(x.upper()) <= 0)
        return -x;
    Interval result(x.precision());
    mpfr_set_zero(const_cast<mpfr_ptr>(result.lower()), 1);
    mpfr_max(const_cast<mpfr_ptr>(result.upper()), x.upper(), x.lower(), MPFR_RNDU);
    mpfr_abs(const_cast<mpfr_ptr>(result.upper()), result.upper(), MPFR_RNDU);
    return result;
}

bool certainly_less(const Interval& a, const Interval& b)
{
    return mpfr_less_p(a.upper(), b.lower()) != 0;
}

}  // namespace cullen
