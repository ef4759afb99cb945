#include "nclocal/catalog.hpp"
#include "nclocal/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace nclocal;

TEST(Parse, QuadraticForms)
{
    EXPECT_EQ(parse_quadratic("(1+sqrt(5))/2"), QuadraticIrrational(1, 5, 2));
    EXPECT_EQ(parse_quadratic("(3-sqrt(7))/2"), QuadraticIrrational(-3, 7, -2));
    EXPECT_EQ(parse_quadratic("sqrt(2)"), QuadraticIrrational(0, 2, 1));
    EXPECT_EQ(parse_quadratic("-sqrt(2)/3"), QuadraticIrrational(0, 2, -3));
    EXPECT_EQ(parse_quadratic(" ( -4 + sqrt(10) ) / -3 "), QuadraticIrrational(-4, 10, -3));
    EXPECT_THROW(parse_quadratic("(1+sqrt(5)/2"), Error);
    EXPECT_THROW(parse_quadratic("1 sqrt(5)"), Error);
    EXPECT_THROW(parse_quadratic("sqrt(4)"), Error);
    EXPECT_THROW(parse_quadratic("(1+sqrt(5))/0"), Error);
}

TEST(Parse, PeriodsMatricesModelsPrimes)
{
    EXPECT_EQ(parse_period("2,1"), (std::vector<Integer>{2, 1}));
    EXPECT_EQ(parse_period("[3, 1, 4]"), (std::vector<Integer>{3, 1, 4}));
    EXPECT_THROW(parse_period(""), Error);
    EXPECT_THROW(parse_period("1,,2"), Error);

    IntMatrix m = parse_matrix("[[0, 3], [-1, 0]]");
    EXPECT_EQ(m, (IntMatrix{{0, 3}, {-1, 0}}));
    EXPECT_EQ(format_matrix(m), "[[0,3],[-1,0]]");
    EXPECT_EQ(parse_matrix("[[123456789012345678901234567890]]")(0, 0).str(), "123456789012345678901234567890");
    EXPECT_THROW(parse_matrix("[[1,2],[3]]"), Error);
    EXPECT_THROW(parse_matrix("[1,2]"), Error);

    auto e = parse_model("[0, 0, 0, -1/2, 3]");
    EXPECT_EQ(e.a4, Rational(-1, 2));
    EXPECT_EQ(e.str(), "[0,0,0,-1/2,3]");
    EXPECT_THROW(parse_model("[0,0,0,0]"), Error);
    EXPECT_THROW(parse_model("[0,0,0,0,0]"), Error);

    EXPECT_EQ(parse_primes("2..20"), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
    EXPECT_EQ(parse_primes("3,5,29..31"), (std::vector<std::uint64_t>{3, 5, 29, 31}));
    EXPECT_THROW(parse_primes("4"), Error);
    EXPECT_THROW(parse_primes("24..28"), Error);
}

TEST(Json, IntegersStayExact)
{
    EXPECT_EQ(json_integer(Integer(-5)).dump(), "-5");
    EXPECT_EQ(json_integer(ipow(Integer(10), 30)).dump(), "\"1000000000000000000000000000000\"");
}

TEST(Json, GroupAndReport)
{
    AbelianGroupInv g{{1, 2, 6}};
    auto j = to_json(g);
    EXPECT_EQ(j["group"], "Z/2 x Z/6");
    EXPECT_EQ(j["order"], 12);
    EXPECT_EQ((AbelianGroupInv{{0}}.str()), "Z");
    EXPECT_EQ((AbelianGroupInv{{1, 1}}.str()), "0");

    RationalModel e{0, 0, 0, -1, 0};
    auto good = to_json(local_factor_report(e, 3, TraceSource::from_counting(), 3));
    EXPECT_EQ(good["verdict"], "match");
    EXPECT_FALSE(good.contains("first_mismatch"));
    EXPECT_FALSE(good.contains("torus_signed_coeffs"));
    EXPECT_EQ(good["torus_coeffs"], Json::array({"1", "4", "16", "52"}));
    auto bad = to_json(local_factor_report(e, 2, TraceSource::from_counting(), 3));
    EXPECT_EQ(bad["good"], false);
    EXPECT_EQ(bad["alpha"], 0);
    EXPECT_TRUE(bad.contains("torus_signed_coeffs"));
    EXPECT_EQ(bad["first_mismatch"], 1);
}

TEST(Catalog, BuiltinEntriesVerify)
{
    auto cat = builtin_catalog();
    ASSERT_EQ(cat.size(), 13u);
    for (const auto& entry : cat)
        EXPECT_EQ(j_invariant(entry.model), Rational(*cm_j_invariant(entry.cm_discriminant))) << entry.label;
    EXPECT_EQ(catalog_entry(cat, "cm-4").model.str(), "[0,0,0,-1,0]");
    EXPECT_THROW(catalog_entry(cat, "cm-5"), Error);
}

TEST(Catalog, FileMatchesBuiltin)
{
    auto file = load_catalog(NCLOCAL_DATA_DIR "/cm_catalog.json");
    auto builtin = builtin_catalog();
    ASSERT_EQ(file.size(), builtin.size());
    for (std::size_t i = 0; i < file.size(); ++i) {
        EXPECT_EQ(file[i].label, builtin[i].label);
        EXPECT_EQ(file[i].model, builtin[i].model);
        EXPECT_EQ(file[i].cm_discriminant, builtin[i].cm_discriminant);
    }
}

TEST(Catalog, WrongJRejected)
{
    Json doc = Json::parse(R"([{"label": "x", "coefficients": [0, 0, 0, -2, 0], "cm_discriminant": -3}])");
    EXPECT_THROW(parse_catalog(doc), Error);
    doc = Json::parse(R"([{"label": "x", "coefficients": "[0,0,0,-2,0]", "cm_discriminant": -4}])");
    EXPECT_EQ(parse_catalog(doc).size(), 1u);
    doc = Json::parse(R"([{"label": "x", "coefficients": "[0,0,0,-2,0]", "cm_discriminant": -5}])");
    EXPECT_THROW(parse_catalog(doc), Error);
    EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), Error);
}
