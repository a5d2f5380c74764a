#include "hcube/rational.hpp"

#include "hcube/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace hcube {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

BigInt parse_integer(std::string_view s, bool allow_sign)
{
    if (s.empty())
        throw InputError("empty integer");
    std::size_t start = 0;
    bool negative = false;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        start = 1;
    }
    if (start == s.size())
        throw InputError("sign without digits");
    BigInt value = 0;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InputError("not a number: '" + std::string(s) + "'");
        value = value * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto s = trim(text);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(trim(s.substr(0, slash)), true);
        const BigInt den = parse_integer(trim(s.substr(slash + 1)), false);
        if (den == 0)
            throw InputError("zero denominator in '" + std::string(s) + "'");
        return Rational(num, den);
    }
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        bool negative = false;
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
            negative = whole[0] == '-';
            whole.remove_prefix(1);
        }
        if (whole.empty() && frac.empty())
            throw InputError("not a number: '" + std::string(s) + "'");
        const BigInt w = whole.empty() ? BigInt(0) : parse_integer(whole, false);
        const BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac, false);
        Rational value = Rational(w) + Rational(f, ipow(BigInt(10), frac.size()));
        return negative ? Rational(-value) : value;
    }
    return Rational(parse_integer(s, true));
}

std::string to_string(const Rational& value)
{
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

BigInt ipow(const BigInt& base, std::uint64_t exponent)
{
    BigInt result = 1;
    BigInt b = base;
    while (exponent) {
        if (exponent & 1U)
            result *= b;
        exponent >>= 1U;
        if (exponent)
            b *= b;
    }
    return result;
}

Rational rpow(const Rational& base, std::int64_t exponent)
{
    const std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                         : static_cast<std::uint64_t>(exponent);
    Rational p(ipow(numerator(base), e), ipow(denominator(base), e));
    if (exponent < 0) {
        if (p == 0)
            throw InputError("zero to a negative power");
        return Rational(1) / p;
    }
    return p;
}

BigInt floor(const Rational& value)
{
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    BigInt q = num / den;
    if (num % den != 0 && num < 0)
        q -= 1;
    return q;
}

BigInt ceil(const Rational& value)
{
    return -floor(Rational(-value));
}

long double log_big(const BigInt& value)
{
    if (value <= 0)
        throw InputError("log of a non-positive integer");
    const std::size_t bits = msb(value);
    if (bits < 60)
        return std::log(static_cast<long double>(value.convert_to<std::uint64_t>()));
    const std::size_t shift = bits - 60;
    const BigInt top = value >> shift;
    return std::log(static_cast<long double>(top.convert_to<std::uint64_t>())) +
           static_cast<long double>(shift) * std::log(2.0L);
}

long double log_rational(const Rational& value)
{
    if (value <= 0)
        throw InputError("log of a non-positive rational");
    return log_big(numerator(value)) - log_big(denominator(value));
}

long double log_base(const Rational& value, long double base)
{
    return log_rational(value) / std::log(base);
}

long double to_long_double(const Rational& value)
{
    if (value == 0)
        return 0.0L;
    const long double magnitude = std::exp(log_rational(value < 0 ? Rational(-value) : value));
    return value < 0 ? -magnitude : magnitude;
}

std::int64_t ceil_log(const Rational& value, const Rational& base)
{
    if (value <= 0 || base <= 1)
        throw InputError("ceil_log needs value > 0 and base > 1");
    const long double estimate = log_rational(value) / log_rational(base);
    auto k = static_cast<std::int64_t>(std::ceil(estimate));
    while (rpow(base, k - 1) >= value)
        --k;
    while (rpow(base, k) < value)
        ++k;
    return k;
}

std::int64_t floor_log(const Rational& value, const Rational& base)
{
    if (value <= 0 || base <= 1)
        throw InputError("floor_log needs value > 0 and base > 1");
    const long double estimate = log_rational(value) / log_rational(base);
    auto k = static_cast<std::int64_t>(std::floor(estimate));
    while (rpow(base, k) > value)
        --k;
    while (rpow(base, k + 1) <= value)
        ++k;
    return k;
}

bool exact_power(const Rational& value, const Rational& base, std::int64_t& j)
{
    if (value <= 0)
        return false;
    const std::int64_t k = floor_log(value, base);
    if (rpow(base, k) != value)
        return false;
    j = k;
    return true;
}

std::int64_t to_int64(const BigInt& value)
{
    if (value > std::numeric_limits<std::int64_t>::max() ||
        value < std::numeric_limits<std::int64_t>::min())
        throw TooLarge("integer does not fit in 64 bits: " + value.str());
    return value.convert_to<std::int64_t>();
}

}  // namespace hcube
