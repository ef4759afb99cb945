#include "nclocal/quadratic_cf.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

using namespace nclocal;
using Float = boost::multiprecision::cpp_bin_float_100;

namespace {

// Oracle: floor iteration in 100-digit floating point.
std::vector<Integer> float_terms(const Integer& p, const Integer& d, const Integer& q, std::size_t count)
{
    Float x = (Float(p) + boost::multiprecision::sqrt(Float(d))) / Float(q);
    std::vector<Integer> out;
    for (std::size_t i = 0; i < count; ++i) {
        Float f = boost::multiprecision::floor(x);
        out.push_back(f.convert_to<Integer>());
        x = 1 / (x - f);
    }
    return out;
}

} // namespace

TEST(QuadraticIrrational, CanonicalFormIdentifiesEqualValues)
{
    QuadraticIrrational a(0, 2, 1);
    QuadraticIrrational b(0, 8, 2);  // sqrt(8)/2 = sqrt(2)
    QuadraticIrrational c(0, 18, 3); // sqrt(18)/3 = sqrt(2)
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    QuadraticIrrational d(1, 5, 2); // golden ratio, Q already divides D - P^2 after scaling
    EXPECT_EQ(d.P(), 1);
    EXPECT_EQ(d.D(), 5);
    EXPECT_EQ(d.Q(), 2);
    EXPECT_EQ((d.D() - d.P() * d.P()) % d.Q(), 0);
    QuadraticIrrational e(1, 3, 5); // needs scaling: (5 + sqrt(75)) / 25
    EXPECT_EQ((e.D() - e.P() * e.P()) % e.Q(), 0);
    EXPECT_EQ(e.value(), QuadraticIrrational(5, 75, 25).value());
    EXPECT_THROW(QuadraticIrrational(1, 9, 2), Error);
    EXPECT_THROW(QuadraticIrrational(1, 2, 0), Error);
}

TEST(QuadraticIrrational, FloorMatchesFloatOracle)
{
    for (int p = -10; p <= 10; ++p)
        for (int q = -10; q <= 10; ++q) {
            if (q == 0)
                continue;
            for (int d : {2, 3, 5, 7, 13, 99, 199}) {
                QuadraticIrrational x(p, d, q);
                Float v = (Float(p) + boost::multiprecision::sqrt(Float(d))) / Float(q);
                EXPECT_EQ(x.floor(), boost::multiprecision::floor(v).convert_to<Integer>());
            }
        }
}

TEST(ContinuedFraction, KnownExpansions)
{
    EXPECT_EQ(cf_expand(QuadraticIrrational(0, 2, 1)).str(), "[1; (2)]");
    EXPECT_EQ(cf_expand(QuadraticIrrational(1, 5, 2)).str(), "[(1)]");
    EXPECT_EQ(cf_expand(QuadraticIrrational(0, 7, 1)).str(), "[2; (1, 1, 1, 4)]");
    EXPECT_EQ(cf_expand(QuadraticIrrational(0, 3, 1)).str(), "[1; (1, 2)]");
    EXPECT_EQ(cf_expand(QuadraticIrrational(1, 2, 1)).str(), "[(2)]");
    EXPECT_EQ(cf_expand(QuadraticIrrational(0, 2, -1)).str(), "[-2; 1, 1, (2)]");
}

TEST(ContinuedFraction, TermsAgreeWithFloatOracle)
{
    for (int p = -10; p <= 10; p += 3)
        for (int q = -10; q <= 10; q += 3) {
            if (q == 0)
                continue;
            for (int d = 2; d <= 200; d += 7) {
                if (is_perfect_square(d))
                    continue;
                auto cf = cf_expand(QuadraticIrrational(p, d, q));
                auto oracle = float_terms(p, d, q, 25);
                for (std::size_t i = 0; i < oracle.size(); ++i)
                    ASSERT_EQ(cf.term(i), oracle[i]) << "(" << p << "+sqrt(" << d << "))/" << q << " term " << i;
            }
        }
}

TEST(ContinuedFraction, ValueRoundTrip)
{
    for (int d : {2, 3, 6, 7, 19, 31, 46, 94, 151}) {
        QuadraticIrrational x(3, d, 4);
        EXPECT_EQ(cf_value(cf_expand(x)), x);
    }
}

TEST(ContinuedFraction, ReducedIffPurelyPeriodic)
{
    for (int p = -6; p <= 6; ++p)
        for (int q = -6; q <= 6; ++q) {
            if (q == 0)
                continue;
            for (int d : {2, 5, 10, 21, 33, 60}) {
                QuadraticIrrational x(p, d, q);
                EXPECT_EQ(is_reduced(x), cf_expand(x).preperiod.empty()) << x.str();
            }
        }
}

TEST(ContinuedFraction, ConvergentsOfSqrtTwo)
{
    auto c = convergents(cf_expand(QuadraticIrrational(0, 2, 1)), 5);
    EXPECT_EQ(c, (std::vector<Rational>{Rational(1), Rational(3, 2), Rational(7, 5), Rational(17, 12),
                                        Rational(41, 29)}));
}

TEST(IncidenceMatrix, ProductOfFactors)
{
    EXPECT_EQ(incidence_matrix({2, 1}), (IntMatrix{{3, 2}, {1, 1}}));
    EXPECT_EQ(incidence_matrix({1}), (IntMatrix{{1, 1}, {1, 0}}));
    EXPECT_THROW(incidence_matrix({}), Error);
    EXPECT_THROW(incidence_matrix({2, 0}), Error);
}

TEST(Mobius, ShiftsAndInversions)
{
    QuadraticIrrational x(0, 2, 1);
    EXPECT_EQ(mobius(IntMatrix{{1, 1}, {0, 1}}, x), QuadraticIrrational(1, 2, 1));
    EXPECT_EQ(mobius(IntMatrix{{0, 1}, {1, 0}}, x), QuadraticIrrational(0, 2, 2));
}

TEST(Theta, BoundaryMapLandsInUnitInterval)
{
    for (int d : {2, 3, 5, 11}) {
        auto t = boundary_to_theta(QuadraticIrrational(-4, d, 3));
        EXPECT_GT(t.value().compare(0), 0);
        EXPECT_LT(t.value().compare(1), 0);
    }
}

TEST(CycleEquivalence, EquivalenceByTails)
{
    QuadraticIrrational x(0, 7, 1);
    EXPECT_TRUE(gl2z_equivalent(x, mobius(IntMatrix{{2, 3}, {1, 2}}, x)));
    EXPECT_TRUE(gl2z_equivalent(x, mobius(IntMatrix{{0, 1}, {1, 5}}, x)));
    EXPECT_FALSE(gl2z_equivalent(QuadraticIrrational(0, 2, 1), QuadraticIrrational(0, 3, 1)));
}
