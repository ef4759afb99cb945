#pragma once

// Local zeta factors of a curve and of the torus side, as exact truncated
// power series, and the per-prime comparison between them.

#include "nclocal/ck_k0.hpp"
#include "nclocal/elliptic.hpp"
#include "nclocal/numeric.hpp"
#include "nclocal/quadratic_cf.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nclocal {

/// Power series c0 + c1 z + ... + cK z^K over Q, truncated at order K.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : c_(order + 1) {}

    TruncatedSeries(std::size_t order, std::vector<Rational> coeffs) : c_(std::move(coeffs))
    {
        c_.resize(order + 1);
    }

    static TruncatedSeries constant(std::size_t order, const Rational& value)
    {
        TruncatedSeries s(order);
        s.c_[0] = value;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rational>& coefficients() const { return c_; }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b)
    {
        a.require_same_order(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            a.c_[i] += b.c_[i];
        return a;
    }

    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b)
    {
        a.require_same_order(b);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            a.c_[i] -= b.c_[i];
        return a;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        a.require_same_order(b);
        TruncatedSeries out(a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; i + j < a.c_.size(); ++j)
                out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }

    /// Index of the first coefficient where the series differ.
    std::optional<std::size_t> first_difference(const TruncatedSeries& other) const
    {
        require_same_order(other);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != other.c_[i])
                return i;
        return std::nullopt;
    }

    std::vector<std::string> str_coefficients() const
    {
        std::vector<std::string> out;
        for (const auto& c : c_)
            out.push_back(to_string(c));
        return out;
    }

private:
    void require_same_order(const TruncatedSeries& other) const
    {
        if (c_.size() != other.c_.size())
            throw Error("series truncation orders differ");
    }

    std::vector<Rational> c_;
};

/// exp(S) for c0 = 0, from E' = S' E: n e_n = sum_{k=1}^n k s_k e_{n-k}.
inline TruncatedSeries series_exp(const TruncatedSeries& s)
{
    if (s[0] != 0)
        throw Error("series_exp needs a zero constant term");
    TruncatedSeries e(s.order());
    e[0] = 1;
    for (std::size_t n = 1; n <= s.order(); ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += Rational(static_cast<long long>(k)) * s[k] * e[n - k];
        e[n] = acc / static_cast<long long>(n);
    }
    return e;
}

/// log(S) for c0 = 1, from L' = S' / S.
inline TruncatedSeries series_log(const TruncatedSeries& s)
{
    if (s[0] != 1)
        throw Error("series_log needs constant term 1");
    TruncatedSeries l(s.order());
    // n l_n = n s_n - sum_{k=1}^{n-1} k l_k s_{n-k}
    for (std::size_t n = 1; n <= s.order(); ++n) {
        Rational acc = Rational(static_cast<long long>(n)) * s[n];
        for (std::size_t k = 1; k < n; ++k)
            acc -= Rational(static_cast<long long>(k)) * l[k] * s[n - k];
        l[n] = acc / static_cast<long long>(n);
    }
    return l;
}

/// 1 / S for c0 != 0.
inline TruncatedSeries series_reciprocal(const TruncatedSeries& s)
{
    if (s[0] == 0)
        throw Error("series_reciprocal needs a nonzero constant term");
    TruncatedSeries r(s.order());
    r[0] = Rational(1) / s[0];
    for (std::size_t n = 1; n <= s.order(); ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += s[k] * r[n - k];
        r[n] = -acc / s[0];
    }
    return r;
}

/// A polynomial given low-degree-first, as a series of the given order.
inline TruncatedSeries series_from_polynomial(std::size_t order, const std::vector<Rational>& poly)
{
    TruncatedSeries s(order);
    for (std::size_t i = 0; i < poly.size() && i <= order; ++i)
        s[i] = poly[i];
    return s;
}

/// exp(sum_{n=1}^K counts[n-1] z^n / n).
inline TruncatedSeries exp_count_series(const std::vector<Integer>& counts, std::size_t order)
{
    TruncatedSeries s(order);
    for (std::size_t n = 1; n <= order; ++n)
        s[n] = Rational(counts.at(n - 1), Integer(static_cast<long long>(n)));
    return series_exp(s);
}

/// (1 - a z + p z^2) / ((1 - z)(1 - p z)) to the given order.
inline TruncatedSeries good_zeta_rational_function(long long a_p, std::uint64_t p, std::size_t order)
{
    Rational pr{Integer(p)};
    auto num = series_from_polynomial(order, {Rational(1), Rational(-a_p), pr});
    auto den = series_from_polynomial(order, {Rational(1), Rational(-1) - pr, pr});
    return num * series_reciprocal(den);
}

/// What a curve looks like at one prime.
struct CurveLocalData {
    std::uint64_t p = 0;
    ReductionType reduction;
    std::optional<long long> a_p; // good primes
};

inline CurveLocalData curve_local_data(const RationalModel& e, std::uint64_t p)
{
    auto reduced = reduce_mod_p(e, p);
    CurveLocalData d;
    d.p = p;
    d.reduction = classify_reduction(reduced);
    if (d.reduction.good())
        d.a_p = trace_of_frobenius(reduced);
    return d;
}

/// Point counts N_1..N_K at a good prime; #E_ns(F_{p^n}) = p^n - alpha^n at a bad one.
inline std::vector<Integer> curve_counts(const CurveLocalData& d, std::size_t order)
{
    if (d.reduction.good())
        return point_counts_via_recurrence(*d.a_p, d.p, static_cast<unsigned>(order));
    std::vector<Integer> counts;
    Integer pn = 1, an = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        pn *= d.p;
        an *= *d.reduction.alpha;
        counts.push_back(pn - an);
    }
    return counts;
}

inline TruncatedSeries curve_local_zeta(const CurveLocalData& d, std::size_t order)
{
    auto series = exp_count_series(curve_counts(d, order), order);
    if (d.reduction.good() && series != good_zeta_rational_function(*d.a_p, d.p, order))
        throw std::logic_error("exp-sum zeta disagrees with its rational form");
    return series;
}

inline TruncatedSeries curve_local_zeta(const RationalModel& e, std::uint64_t p, std::size_t order)
{
    return curve_local_zeta(curve_local_data(e, p), order);
}

enum class TorusMode { Absolute, Signed };

/// |K0(O_{eps_n})| for n = 1..K (signed mode: det(I - eps_n)).
inline std::vector<Integer> torus_counts(const Integer& trace_ap, std::uint64_t p, bool good,
                                         std::optional<int> alpha, std::size_t order,
                                         TorusMode mode)
{
    if (!good) {
        if (!alpha)
            throw Error("bad prime needs alpha");
        require_alpha(*alpha);
    }
    std::vector<Integer> counts;
    for (std::size_t n = 1; n <= order; ++n) {
        auto eps = good ? epsilon_good(p, static_cast<unsigned>(n), trace_ap)
                        : epsilon_bad(p, static_cast<unsigned>(n), *alpha);
        counts.push_back(mode == TorusMode::Absolute ? k0_order(eps) : k0_signed_order(eps));
    }
    return counts;
}

inline TruncatedSeries torus_local_zeta(const Integer& trace_ap, std::uint64_t p, bool good,
                                        std::optional<int> alpha, std::size_t order,
                                        TorusMode mode)
{
    return exp_count_series(torus_counts(trace_ap, p, good, alpha, order, mode), order);
}

/// Where tr(A^p) comes from: the curve's own a_p, or an incidence matrix A.
struct TraceSource {
    std::optional<IntMatrix> incidence; // empty: identity-verification mode

    static TraceSource from_counting() { return {}; }
    static TraceSource from_period(const std::vector<Integer>& period)
    {
        return {incidence_matrix(period)};
    }
    bool identity_mode() const { return !incidence.has_value(); }
};

struct LocalFactorReport {
    std::uint64_t p = 0;
    ReductionType reduction;
    std::optional<long long> a_p;
    Integer torus_trace; // the tr(A^p) slot of L_p
    std::vector<Integer> curve_counts;  // N_n, or #E_ns(F_{p^n}) at bad primes
    std::vector<Integer> torus_counts;  // |K0(O_{eps_n})|
    TruncatedSeries curve_series{0};
    TruncatedSeries torus_series{0};
    std::optional<TruncatedSeries> torus_series_signed; // bad primes
    std::optional<std::size_t> first_mismatch;          // curve vs torus (absolute)
    std::optional<std::size_t> mode_first_mismatch;     // absolute vs signed, bad primes
    // Local L-factors with the (1 - z)(1 - p z) part removed where present.
    TruncatedSeries curve_lfactor{0};
    TruncatedSeries torus_lfactor{0};
    std::optional<std::size_t> lfactor_first_mismatch;

    bool good() const { return reduction.good(); }
    bool match() const { return !first_mismatch.has_value(); }
};

/// Torus-side L-factor 1 / ((1 - z)(1 - p z) zeta) at a good prime.
inline TruncatedSeries good_lfactor_from_zeta(const TruncatedSeries& zeta, std::uint64_t p)
{
    Rational pr{Integer(p)};
    auto removed = series_from_polynomial(zeta.order(), {Rational(1), Rational(-1) - pr, pr});
    return series_reciprocal(zeta * removed);
}

/// Standard local L-factor of the curve: 1/(1 - a z + p z^2) or 1/(1 - alpha z).
inline TruncatedSeries curve_lfactor(const CurveLocalData& d, std::size_t order)
{
    if (d.reduction.good())
        return series_reciprocal(series_from_polynomial(
            order, {Rational(1), Rational(-*d.a_p), Rational(Integer(d.p))}));
    return series_reciprocal(series_from_polynomial(order, {Rational(1), Rational(-*d.reduction.alpha)}));
}

inline LocalFactorReport local_factor_report(const RationalModel& e, std::uint64_t p,
                                             const TraceSource& source, std::size_t order,
                                             TorusMode mode = TorusMode::Absolute)
{
    LocalFactorReport r;
    auto data = curve_local_data(e, p);
    r.p = p;
    r.reduction = data.reduction;
    r.a_p = data.a_p;
    r.curve_counts = curve_counts(data, order);
    r.curve_series = curve_local_zeta(data, order);
    r.curve_lfactor = curve_lfactor(data, order);

    if (source.identity_mode())
        r.torus_trace = data.a_p.value_or(0);
    else
        r.torus_trace = trace(mat_pow(*source.incidence, p));

    if (data.reduction.good()) {
        r.torus_counts = torus_counts(r.torus_trace, p, true, std::nullopt, order, mode);
        r.torus_series = exp_count_series(r.torus_counts, order);
        r.torus_lfactor = good_lfactor_from_zeta(r.torus_series, p);
    } else {
        auto alpha = data.reduction.alpha;
        r.torus_counts = torus_counts(0, p, false, alpha, order, mode);
        r.torus_series = exp_count_series(r.torus_counts, order);
        r.torus_series_signed = torus_local_zeta(0, p, false, alpha, order, TorusMode::Signed);
        auto absolute = torus_local_zeta(0, p, false, alpha, order, TorusMode::Absolute);
        r.mode_first_mismatch = absolute.first_difference(*r.torus_series_signed);
        r.torus_lfactor = r.torus_series;
    }
    r.first_mismatch = r.curve_series.first_difference(r.torus_series);
    r.lfactor_first_mismatch = r.curve_lfactor.first_difference(r.torus_lfactor);
    return r;
}

/// One report per prime. In identity mode every good prime must match.
inline std::vector<LocalFactorReport> lemma1_check(const RationalModel& e, const TraceSource& source,
                                                   const std::vector<std::uint64_t>& primes,
                                                   std::size_t order,
                                                   TorusMode mode = TorusMode::Absolute)
{
    std::vector<LocalFactorReport> out;
    for (std::uint64_t p : primes)
        out.push_back(local_factor_report(e, p, source, order, mode));
    return out;
}

/// c_m of the Euler product up to X, curve side and torus side.
struct DirichletComparison {
    std::vector<Integer> curve;                // index m, entry 0 unused
    std::vector<Integer> torus;                // index m; only good-prime m are meaningful
    std::vector<bool> good_support;            // all prime factors of m are good
    std::vector<std::uint64_t> skipped_primes; // bad primes without a usable model
    std::vector<std::string> warnings;

    /// First m with good support where the two sides differ.
    std::optional<std::uint64_t> first_disagreement() const
    {
        for (std::size_t m = 1; m < curve.size(); ++m)
            if (good_support[m] && curve[m] != torus[m])
                return m;
        return std::nullopt;
    }
};

inline DirichletComparison dirichlet_coefficients(const RationalModel& e, std::uint64_t bound)
{
    if (bound < 1 || bound > 10'000)
        throw Error("dirichlet bound must lie in [1, 10000]");
    const std::size_t n = bound + 1;
    DirichletComparison out;
    out.curve.assign(n, 0);
    out.torus.assign(n, 0);
    out.good_support.assign(n, true);
    out.curve[1] = out.torus[1] = 1;

    // Multiplicative assembly prime by prime, like a sieve over prime powers.
    std::vector<bool> composite(n, false);
    std::vector<bool> finished(n, false);
    finished[1] = true;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (composite[p])
            continue;
        for (std::uint64_t k = p * p; k <= bound; k += p)
            composite[k] = true;

        std::size_t max_power = 0;
        for (std::uint64_t q = p; q <= bound; q *= p)
            ++max_power;

        std::vector<Integer> curve_pp(max_power + 1), torus_pp(max_power + 1);
        bool good = true;
        try {
            auto data = curve_local_data(e, p);
            good = data.reduction.good();
            auto cl = curve_lfactor(data, max_power);
            TruncatedSeries tl(max_power);
            if (good) {
                auto zeta = torus_local_zeta(*data.a_p, p, true, std::nullopt, max_power,
                                             TorusMode::Absolute);
                tl = good_lfactor_from_zeta(zeta, p);
            } else {
                tl = torus_local_zeta(0, p, false, data.reduction.alpha, max_power,
                                      TorusMode::Absolute);
            }
            for (std::size_t k = 0; k <= max_power; ++k) {
                curve_pp[k] = numerator(cl[k]);
                torus_pp[k] = numerator(tl[k]);
            }
        } catch (const Error& err) {
            out.skipped_primes.push_back(p);
            out.warnings.push_back("p = " + std::to_string(p) + " skipped: " + err.what());
            good = false;
            curve_pp.assign(max_power + 1, 0);
            torus_pp.assign(max_power + 1, 0);
            curve_pp[0] = torus_pp[0] = 1;
        }

        // Fold in p: every finished m coprime to p gives c_{m p^k} = c_m c_{p^k}.
        for (std::uint64_t m = bound; m >= 1; --m) {
            if (m % p == 0 || !finished[m])
                continue;
            std::uint64_t mk = m;
            for (std::size_t k = 1; k <= max_power && mk <= bound / p; ++k) {
                mk *= p;
                out.curve[mk] = out.curve[m] * curve_pp[k];
                out.torus[mk] = out.torus[m] * torus_pp[k];
                out.good_support[mk] = good && out.good_support[m];
                finished[mk] = true;
            }
        }
    }
    return out;
}

} // namespace nclocal
