#include "nclocal/numeric.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace nclocal;

TEST(Numeric, FloorDivMatchesRationalFloor)
{
    for (int a = -20; a <= 20; ++a)
        for (int b = -7; b <= 7; ++b) {
            if (b == 0)
                continue;
            int q = a / b;
            if ((a % b != 0) && ((a < 0) != (b < 0)))
                --q;
            EXPECT_EQ(floor_div(a, b), q) << a << "/" << b;
            Integer r = mod_floor(a, b < 0 ? -b : b);
            EXPECT_GE(r, 0);
        }
    EXPECT_THROW(floor_div(1, 0), Error);
}

TEST(Numeric, IsqrtAgainstSquaring)
{
    for (int n = 0; n < 5000; ++n) {
        Integer s = isqrt(n);
        EXPECT_LE(s * s, n);
        EXPECT_GT((s + 1) * (s + 1), n);
        EXPECT_EQ(is_perfect_square(n), s * s == n);
    }
    Integer big = ipow(Integer(10), 40) + 12345;
    Integer s = isqrt(big * big);
    EXPECT_EQ(s, big);
}

TEST(Numeric, PrimalityAgainstSieve)
{
    const std::size_t limit = 20000;
    std::vector<bool> composite(limit, false);
    composite[0] = composite[1] = true;
    for (std::size_t i = 2; i * i < limit; ++i)
        if (!composite[i])
            for (std::size_t j = i * i; j < limit; j += i)
                composite[j] = true;
    for (std::size_t n = 0; n < limit; ++n)
        EXPECT_EQ(is_prime(n), !composite[n]) << n;
    EXPECT_TRUE(is_prime(1'000'000'007ULL));
    EXPECT_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
}

TEST(Numeric, PowmodAgainstRepeatedMultiplication)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t m = rng() % 1000 + 2;
        std::uint64_t b = rng() % m;
        unsigned e = static_cast<unsigned>(rng() % 50);
        std::uint64_t expect = 1 % m;
        for (unsigned i = 0; i < e; ++i)
            expect = expect * b % m;
        EXPECT_EQ(powmod(b, e, m), expect);
    }
}

TEST(Numeric, ParseRoundTrip)
{
    EXPECT_EQ(parse_integer("-123456789012345678901234567890").str(),
              "-123456789012345678901234567890");
    EXPECT_EQ(parse_rational("6/-4"), Rational(-3, 2));
    EXPECT_EQ(to_string(parse_rational(" -7/21 ")), "-1/3");
    EXPECT_EQ(to_string(parse_rational("5")), "5");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_integer("12a"), Error);
    EXPECT_THROW(parse_integer("-"), Error);
}

TEST(Numeric, RationalPowers)
{
    EXPECT_EQ(rpow(Rational(2, 3), 3), Rational(8, 27));
    EXPECT_EQ(rpow(Rational(2, 3), -2), Rational(9, 4));
    EXPECT_EQ(rpow(Rational(5), 0), Rational(1));
    EXPECT_EQ(lcm(4, 6), 12);
}
