#pragma once

// Exact scalar types shared by every module, plus the handful of integer
// helpers (floor division, integer square roots, primality) they lean on.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nclocal {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed input or violated preconditions. The CLI maps it to
/// exit code 2.
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// n / d in lowest terms. Boost 1.74 rejects negative denominators, so the
/// sign is moved to the numerator first.
inline Rational make_rational(const Integer& n, const Integer& d)
{
    if (d == 0)
        throw Error("zero denominator");
    return d < 0 ? Rational(Integer(-n), Integer(-d)) : Rational(n, d);
}

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline int sign(const Integer& a) { return a.sign(); }
inline int sign(const Rational& a) { return a.sign(); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs(a / gcd(a, b) * b);
}

/// Quotient rounded toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b)
{
    if (b == 0)
        throw Error("division by zero");
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

/// Remainder in [0, |m|).
inline Integer mod_floor(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0)
        r += abs(m);
    return r;
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n)
{
    if (n < 0)
        throw Error("square root of a negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n)
{
    if (n < 0)
        return false;
    Integer r = isqrt(n);
    return r * r == n;
}

inline Integer ipow(Integer base, unsigned exp)
{
    Integer result = 1;
    while (exp) {
        if (exp & 1u)
            result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

inline Rational rpow(const Rational& base, int exp)
{
    if (exp < 0) {
        if (base == 0)
            throw Error("division by zero");
        return rpow(Rational(1) / base, -exp);
    }
    Rational result = 1, b = base;
    auto e = static_cast<unsigned>(exp);
    while (e) {
        if (e & 1u)
            result *= b;
        b *= b;
        e >>= 1u;
    }
    return result;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1u)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1u;
    }
    return result;
}

/// Deterministic Miller-Rabin; the witness set is exact for all n < 2^64.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0)
            return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline void require_prime(std::uint64_t p)
{
    if (!is_prime(p))
        throw Error(std::to_string(p) + " is not prime");
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace detail

inline Integer parse_integer(std::string_view text)
{
    auto s = detail::trim(text);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    if (i == s.size())
        throw Error("expected an integer, got '" + std::string(text) + "'");
    Integer value = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw Error("expected an integer, got '" + std::string(text) + "'");
        value = value * 10 + (s[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

/// Accepts "n" or "n/d".
inline Rational parse_rational(std::string_view text)
{
    auto s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(s));
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0)
        throw Error("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
}

} // namespace nclocal
