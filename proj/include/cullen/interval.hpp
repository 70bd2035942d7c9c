#pragma once

#include "cullen/bigint.hpp"

#include <mpfr.h>

#include <string>
#include <string_view>

namespace cullen {

/// Working precision for interval evaluation. Always passed explicitly;
/// nothing here reads MPFR's global default.
class Precision {
public:
    static Precision digits(unsigned decimal_digits);
    static Precision from_bits(mpfr_prec_t bits);

    mpfr_prec_t bits() const { return bits_; }
    unsigned decimal_digits() const;
    Precision doubled() const { return from_bits(2 * bits_); }

    friend bool operator==(Precision, Precision) = default;

private:
    explicit Precision(mpfr_prec_t bits) : bits_(bits) {}
    mpfr_prec_t bits_;
};

/// Closed interval [lower, upper] with outward-rounded endpoints. Every
/// operation returns an enclosure of the exact result, so `upper()` of a
/// computed constant is a rigorous upper bound and `lower()` a rigorous
/// lower bound.
class Interval {
public:
    explicit Interval(Precision precision);
    Interval(long value, Precision precision);
    Interval(const Interval& other);
    Interval& operator=(const Interval& other);
    ~Interval();

    static Interval exact(const BigInt& value, Precision precision);
    /// Encloses a decimal literal such as "2.02e12".
    static Interval decimal(std::string_view text, Precision precision);
    static Interval from_double(double value, Precision precision);

    mpfr_srcptr lower() const { return lo_; }
    mpfr_srcptr upper() const { return hi_; }
    Precision precision() const;

    double lower_double() const;
    double upper_double() const;
    /// Scientific notation with `digits` digits after the point, rounded
    /// toward +inf (upper) or -inf (lower).
    std::string upper_string(int digits = 20) const;
    std::string lower_string(int digits = 20) const;

    /// Degenerate intervals at one endpoint.
    Interval lower_point() const;
    Interval upper_point() const;

    BigInt ceil_upper() const;
    BigInt floor_lower() const;

    bool contains_zero() const;
    bool certainly_positive() const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
Interval pow(const Interval& x, unsigned long exponent);
/// x^y for x > 0.
Interval pow(const Interval& x, const Interval& y);
Interval max(const Interval& a, const Interval& b);
/// Smallest interval containing both.
Interval hull(const Interval& a, const Interval& b);
Interval abs(const Interval& x);

/// True when every point of a is below every point of b.
bool certainly_less(const Interval& a, const Interval& b);

}  // namespace cullen
