#pragma once

// Text formats shared by the CLI and the catalog: quadratic irrationals,
// periods, matrices, Weierstrass models, prime lists, and JSON renderings of
// every report type.

#include "nclocal/ck_k0.hpp"
#include "nclocal/elliptic.hpp"
#include "nclocal/functor.hpp"
#include "nclocal/intmat.hpp"
#include "nclocal/quadratic_cf.hpp"
#include "nclocal/zeta.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace nclocal {

namespace detail {

inline std::string strip_spaces(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

/// "(P+sqrt(D))/Q", also "(P-sqrt(D))/Q", "P+sqrt(D)", "sqrt(D)", "-sqrt(D)/Q".
inline QuadraticIrrational parse_quadratic(std::string_view text)
{
    static const std::regex pattern(R"(^(\()?([+-]?\d+)?([+-]?)sqrt\((\d+)\)(\))?(?:/([+-]?\d+))?$)");
    std::string s = detail::strip_spaces(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern) || m[1].matched != m[5].matched)
        throw Error("expected a quadratic irrational like (P+sqrt(D))/Q, got '" + std::string(text) + "'");
    if (m[2].matched && m[3].length() == 0)
        throw Error("missing sign between P and sqrt(D) in '" + std::string(text) + "'");
    Integer p = m[2].matched ? parse_integer(m[2].str()) : Integer(0);
    Integer d = parse_integer(m[4].str());
    Integer q = m[6].matched ? parse_integer(m[6].str()) : Integer(1);
    if (m[3].str() == "-")
        return {-p, d, -q};
    return {p, d, q};
}

/// "2,1,3"
inline std::vector<Integer> parse_period(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    if (!s.empty() && s.front() == '[' && s.back() == ']')
        s = s.substr(1, s.size() - 2);
    if (s.empty())
        throw Error("empty period");
    std::vector<Integer> out;
    for (const auto& part : detail::split(s, ','))
        out.push_back(parse_integer(part));
    return out;
}

/// "[[a,b],[c,d]]" (any rectangular shape).
inline IntMatrix parse_matrix(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    auto bad = [&] { return Error("expected a matrix like [[a,b],[c,d]], got '" + std::string(text) + "'"); };
    if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
        throw bad();
    std::string inner = s.substr(2, s.size() - 4);
    std::vector<std::vector<Integer>> rows;
    std::size_t pos = 0;
    for (;;) {
        std::size_t end = inner.find("],[", pos);
        std::string row = inner.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        if (row.find_first_of("[]") != std::string::npos)
            throw bad();
        std::vector<Integer> entries;
        for (const auto& part : detail::split(row, ','))
            entries.push_back(parse_integer(part));
        rows.push_back(std::move(entries));
        if (end == std::string::npos)
            break;
        pos = end + 3;
    }
    return IntMatrix::from_rows(rows);
}

inline std::string format_matrix(const IntMatrix& m)
{
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out += ",";
            out += to_string(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

/// "[a1,a2,a3,a4,a6]" with integer or n/d entries.
inline RationalModel parse_model(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error("expected a model like [a1,a2,a3,a4,a6], got '" + std::string(text) + "'");
    auto parts = detail::split(s.substr(1, s.size() - 2), ',');
    if (parts.size() != 5)
        throw Error("a Weierstrass model needs exactly five coefficients");
    RationalModel e{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
                    parse_rational(parts[3]), parse_rational(parts[4])};
    if (discriminant(e) == 0)
        throw Error("model " + e.str() + " is singular over Q");
    return e;
}

/// "2..50", "3,5,7" or mixtures like "2..10,13"; only primes are kept from ranges.
inline std::vector<std::uint64_t> parse_primes(std::string_view text)
{
    std::string s = detail::strip_spaces(text);
    std::vector<std::uint64_t> out;
    for (const auto& part : detail::split(s, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            auto p = parse_integer(part);
            if (p < 2)
                throw Error("not a prime: " + part);
            auto pv = p.convert_to<std::uint64_t>();
            require_prime(pv);
            out.push_back(pv);
            continue;
        }
        auto lo = parse_integer(part.substr(0, dots)).convert_to<std::uint64_t>();
        auto hi = parse_integer(part.substr(dots + 2)).convert_to<std::uint64_t>();
        if (lo > hi)
            throw Error("empty prime range: " + part);
        for (std::uint64_t p = lo; p <= hi; ++p)
            if (is_prime(p))
                out.push_back(p);
    }
    if (out.empty())
        throw Error("no primes in '" + std::string(text) + "'");
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using Json = nlohmann::ordered_json;

/// JSON number when it fits in 64 bits, decimal string otherwise.
inline Json json_integer(const Integer& a)
{
    if (a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max())
        return a.convert_to<long long>();
    return a.str();
}

inline Json json_integers(const std::vector<Integer>& v)
{
    Json out = Json::array();
    for (const auto& a : v)
        out.push_back(json_integer(a));
    return out;
}

inline Json to_json(const AbelianGroupInv& g)
{
    return Json{{"invariant_factors", json_integers(g.invariant_factors)},
                {"order", json_integer(g.order())},
                {"finite", g.is_finite()},
                {"group", g.str()}};
}

inline Json to_json(const CFExpansion& cf)
{
    return Json{{"preperiod", json_integers(cf.preperiod)},
                {"period", json_integers(cf.period)},
                {"text", cf.str()}};
}

inline Json to_json(const ReductionType& t)
{
    Json j{{"kind", to_string(t.kind)}, {"good", t.good()}};
    if (t.alpha)
        j["alpha"] = *t.alpha;
    return j;
}

inline Json to_json(const CKDescriptor& d)
{
    Json j;
    j["kind"] = d.is_matrix() ? "matrix" : "scalar";
    j["eps"] = d.is_matrix() ? Json(format_matrix(d.matrix())) : json_integer(d.scalar());
    j["p"] = d.source.p;
    j["n"] = d.source.n;
    if (const auto* tr = std::get_if<Integer>(&d.source.data))
        j["trace_ap"] = json_integer(*tr);
    else
        j["alpha"] = std::get<int>(d.source.data);
    return j;
}

inline Json to_json(const ConjugacyVerdict& v)
{
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Conjugate>)
                return Json{{"status", "conjugate"}, {"witness", format_matrix(x.witness)}};
            else if constexpr (std::is_same_v<T, NotConjugate>)
                return Json{{"status", "not_conjugate"}, {"reason", x.reason}};
            else
                return Json{{"status", "unknown"}, {"bound", x.bound}};
        },
        v);
}

inline Json to_json(const LocalFactorReport& r)
{
    Json j;
    j["p"] = r.p;
    j["good"] = r.good();
    if (r.reduction.alpha)
        j["alpha"] = *r.reduction.alpha;
    j["reduction"] = to_string(r.reduction.kind);
    if (r.a_p)
        j["a_p"] = *r.a_p;
    j["torus_trace"] = json_integer(r.torus_trace);
    j["curve_counts"] = json_integers(r.curve_counts);
    j["torus_counts"] = json_integers(r.torus_counts);
    j["curve_coeffs"] = r.curve_series.str_coefficients();
    j["torus_coeffs"] = r.torus_series.str_coefficients();
    if (r.torus_series_signed) {
        j["torus_signed_coeffs"] = r.torus_series_signed->str_coefficients();
        j["modes_agree"] = !r.mode_first_mismatch.has_value();
        if (r.mode_first_mismatch)
            j["mode_first_mismatch"] = *r.mode_first_mismatch;
    }
    j["verdict"] = r.match() ? "match" : "mismatch";
    if (r.first_mismatch)
        j["first_mismatch"] = *r.first_mismatch;
    j["curve_lfactor_coeffs"] = r.curve_lfactor.str_coefficients();
    j["torus_lfactor_coeffs"] = r.torus_lfactor.str_coefficients();
    j["lfactor_verdict"] = r.lfactor_first_mismatch ? "mismatch" : "match";
    if (r.lfactor_first_mismatch)
        j["lfactor_first_mismatch"] = *r.lfactor_first_mismatch;
    return j;
}

inline Json to_json(const LocalizationResult& r)
{
    Json j;
    j["p"] = r.p;
    j["reduction"] = to_json(r.reduction);
    if (r.a_p)
        j["a_p"] = *r.a_p;
    if (r.lp)
        j["L_p"] = format_matrix(*r.lp);
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json lj;
        lj["n"] = l.n;
        lj["descriptor"] = to_json(l.descriptor);
        lj["k0"] = to_json(l.k0);
        lj["k0_order"] = json_integer(l.k0_order);
        if (l.curve_count)
            lj["curve_count"] = json_integer(*l.curve_count);
        if (l.curve_group)
            lj["curve_group"] = to_json(*l.curve_group);
        levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    if (r.exploration) {
        const auto& ex = *r.exploration;
        Json ej{{"period", json_integers(ex.period)},
                {"trace_A_p", json_integer(ex.trace_ap)},
                {"torus_bad", ex.torus_bad}};
        if (ex.equals_a_p)
            ej["equals_a_p"] = *ex.equals_a_p;
        j["exploration"] = std::move(ej);
    }
    return j;
}

inline Json to_json(const Theorem1Report& r)
{
    Json j;
    j["model"] = r.model.str();
    j["p"] = r.p;
    j["seed"] = r.seed;
    j["reduction"] = to_json(r.reduction);
    if (r.lp)
        j["L_p"] = format_matrix(*r.lp);
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json tj;
        tj["trial"] = t.index;
        tj["transform"] = Json{{"u", t.u}, {"r", t.r}, {"s", t.s}, {"t", t.t}};
        tj["transformed_model"] = t.transformed.str();
        tj["reduction_commutes"] = t.reduction_commutes;
        if (t.j_equal)
            tj["j_equal"] = *t.j_equal;
        if (t.lp)
            tj["L_p"] = format_matrix(*t.lp);
        if (t.alpha)
            tj["alpha"] = *t.alpha;
        tj["pass"] = t.pass;
        trials.push_back(std::move(tj));
    }
    j["trials"] = std::move(trials);
    j["passed"] = r.passed();
    j["total"] = r.trials.size();
    j["verdict"] = r.all_pass() ? "pass" : "fail";
    return j;
}

inline Json to_json(const Lemma3Report& r)
{
    Json j;
    j["A"] = format_matrix(r.a);
    j["A_prime"] = format_matrix(r.a_prime);
    j["conjugacy"] = to_json(r.verdict);
    if (r.trace_ap) {
        j["trace_A_p"] = json_integer(*r.trace_ap);
        j["trace_A_prime_p"] = json_integer(*r.trace_ap_prime);
        j["L_p"] = format_matrix(*r.lp);
        j["L_p_prime"] = format_matrix(*r.lp_prime);
        j["witness_verified"] = r.witness_verified;
        j["powers_conjugate"] = r.powers_conjugate;
    }
    j["chain_holds"] = r.chain_holds;
    return j;
}

inline Json to_json(const Footnote2Report& r)
{
    Json j;
    j["p"] = r.p;
    j["a_p"] = r.a_p;
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json lj;
        lj["n"] = l.n;
        lj["curve_order"] = json_integer(l.curve_order);
        lj["k0_order"] = json_integer(l.k0_order);
        lj["k0_group"] = to_json(l.k0_group);
        if (l.curve_group)
            lj["curve_group"] = to_json(*l.curve_group);
        if (l.isomorphic)
            lj["isomorphic"] = *l.isomorphic;
        levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    j["orders_agree"] = r.orders_agree();
    return j;
}

} // namespace nclocal
