#pragma once

// Q-models for the thirteen class-number-one CM j-invariants.

#include "nclocal/elliptic.hpp"
#include "nclocal/io.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace nclocal {

struct CatalogEntry {
    std::string label;
    RationalModel model;
    long cm_discriminant = 0;
    std::string notes;
};

/// j(O) for the imaginary quadratic orders of class number one.
inline std::optional<Integer> cm_j_invariant(long discriminant)
{
    switch (discriminant) {
    case -3: return Integer(0);
    case -4: return Integer(1728);
    case -7: return Integer(-3375);
    case -8: return Integer(8000);
    case -11: return Integer(-32768);
    case -12: return Integer(54000);
    case -16: return Integer(287496);
    case -19: return Integer(-884736);
    case -27: return Integer(-12288000);
    case -28: return Integer(16581375);
    case -43: return Integer(-884736000);
    case -67: return Integer(-147197952000LL);
    case -163: return Integer("-262537412640768000");
    default: return std::nullopt;
    }
}

/// Throws unless the entry's model has the j-invariant of its CM order.
inline void verify_catalog_entry(const CatalogEntry& entry)
{
    auto expected = cm_j_invariant(entry.cm_discriminant);
    if (!expected)
        throw Error(entry.label + ": " + std::to_string(entry.cm_discriminant)
                    + " is not a class-number-one discriminant");
    if (discriminant(entry.model) == 0)
        throw Error(entry.label + ": singular model");
    Rational j = j_invariant(entry.model);
    if (j != Rational(*expected))
        throw Error(entry.label + ": j = " + to_string(j) + ", expected " + to_string(*expected));
}

inline std::vector<CatalogEntry> builtin_catalog()
{
    auto m = [](long a1, long a2, long a3, long a4, long long a6) {
        return RationalModel{Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)};
    };
    std::vector<CatalogEntry> out{
        {"cm-3", m(0, 0, 0, 0, 1), -3, "y^2 = x^3 + 1"},
        {"cm-4", m(0, 0, 0, -1, 0), -4, "y^2 = x^3 - x"},
        {"cm-7", m(1, -1, 0, -2, -1), -7, ""},
        {"cm-8", m(0, 4, 0, 2, 0), -8, ""},
        {"cm-11", m(0, -1, 1, -7, 10), -11, ""},
        {"cm-12", m(0, 0, 0, -15, 22), -12, "order of conductor 2 in Z[zeta_3]"},
        {"cm-16", m(0, 0, 0, -11, -14), -16, "order of conductor 2 in Z[i]"},
        {"cm-19", m(0, 0, 1, -38, 90), -19, ""},
        {"cm-27", m(0, 0, 1, -270, -1708), -27, "order of conductor 3 in Z[zeta_3]"},
        {"cm-28", m(1, -1, 0, -37, -78), -28, "order of conductor 2 in Z[(1+sqrt(-7))/2]"},
        {"cm-43", m(0, 0, 1, -860, 9707), -43, ""},
        {"cm-67", m(0, 0, 1, -7370, 243528), -67, ""},
        {"cm-163", m(0, 0, 1, -2174420, 1234136692), -163, ""},
    };
    for (const auto& e : out)
        verify_catalog_entry(e);
    return out;
}

inline Json to_json(const CatalogEntry& e)
{
    return Json{{"label", e.label},
                {"coefficients", e.model.str()},
                {"cm_discriminant", e.cm_discriminant},
                {"notes", e.notes}};
}

inline std::vector<CatalogEntry> parse_catalog(const Json& doc)
{
    if (!doc.is_array())
        throw Error("catalog must be a JSON array");
    std::vector<CatalogEntry> out;
    for (const auto& rec : doc) {
        if (!rec.is_object() || !rec.contains("label") || !rec.contains("coefficients")
            || !rec.contains("cm_discriminant"))
            throw Error("catalog records need label, coefficients and cm_discriminant");
        CatalogEntry e;
        e.label = rec["label"].get<std::string>();
        const auto& c = rec["coefficients"];
        std::string text;
        if (c.is_string()) {
            text = c.get<std::string>();
        } else if (c.is_array()) {
            text = "[";
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i)
                    text += ",";
                text += c[i].is_string() ? c[i].get<std::string>() : c[i].dump();
            }
            text += "]";
        } else {
            throw Error(e.label + ": coefficients must be a string or an array");
        }
        e.model = parse_model(text);
        e.cm_discriminant = rec["cm_discriminant"].get<long>();
        if (rec.contains("notes"))
            e.notes = rec["notes"].get<std::string>();
        verify_catalog_entry(e);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<CatalogEntry> load_catalog(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(path + ": " + ex.what());
    }
    try {
        return parse_catalog(doc);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(path + ": " + ex.what());
    }
}

inline const CatalogEntry& catalog_entry(const std::vector<CatalogEntry>& catalog,
                                         const std::string& label)
{
    for (const auto& e : catalog)
        if (e.label == label)
            return e;
    throw Error("no catalog entry " + label);
}

} // namespace nclocal
