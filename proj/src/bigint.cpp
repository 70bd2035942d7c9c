#include "cullen/bigint.hpp"

#include "cullen/errors.hpp"

#include <cctype>
#include <limits>

namespace cullen {

namespace {

bool all_digits(std::string_view text)
{
    if (text.empty())
        return false;
    for (char ch : text) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    }
    return true;
}

}  // namespace

BigInt parse_integer(std::string_view text)
{
    const std::string original(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    std::string_view mantissa = text;
    std::uint64_t exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        const auto exp_text = text.substr(e + 1);
        if (!all_digits(exp_text) || exp_text.size() > 6)
            throw InvalidArgument("malformed exponent in integer literal '" + original + "'");
        exponent = std::stoull(std::string(exp_text));
    }

    std::string digits;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto whole = mantissa.substr(0, dot);
        auto fraction = mantissa.substr(dot + 1);
        while (!fraction.empty() && fraction.back() == '0')
            fraction.remove_suffix(1);
        if ((!whole.empty() && !all_digits(whole)) || (!fraction.empty() && !all_digits(fraction)) ||
            (whole.empty() && fraction.empty()))
            throw InvalidArgument("malformed integer literal '" + original + "'");
        if (fraction.size() > exponent)
            throw InvalidArgument("literal '" + original + "' is not an integer");
        digits = std::string(whole) + std::string(fraction);
        exponent -= fraction.size();
    } else {
        if (!all_digits(mantissa))
            throw InvalidArgument("malformed integer literal '" + original + "'");
        digits = std::string(mantissa);
    }
    digits.append(exponent, '0');

    BigInt value(digits, 10);
    return negative ? BigInt(-value) : value;
}

std::string to_decimal(const BigInt& value)
{
    return value.get_str(10);
}

BigInt from_u64(std::uint64_t value)
{
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return BigInt(static_cast<unsigned long>(value));
}

std::uint64_t to_u64(const BigInt& value)
{
    if (sgn(value) < 0 || !value.fits_ulong_p())
        throw InvalidArgument("value " + to_decimal(value) + " does not fit an unsigned 64-bit word");
    return value.get_ui();
}

BigInt pow(const BigInt& base, std::uint64_t exponent)
{
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

}  // namespace cullen
