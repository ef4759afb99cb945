#pragma once

// The localization F(p): E(F_{p^n}) -> O_{eps_n} and the checks that it is
// well defined on isomorphism classes.

#include "nclocal/ck_k0.hpp"
#include "nclocal/elliptic.hpp"
#include "nclocal/intmat.hpp"
#include "nclocal/quadratic_cf.hpp"
#include "nclocal/zeta.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nclocal {

/// Largest field over which localize() also reports the curve's group.
inline constexpr std::uint64_t kCurveGroupGuard = 100'000;

/// Rejects periods with tr(A)^2 = 4: every prime would divide tr^2 - 4.
inline void require_nondegenerate_period(const std::vector<Integer>& period)
{
    IntMatrix a = incidence_matrix(period);
    Integer t = trace(a);
    if (t * t == 4)
        throw Error("period gives tr(A)^2 - 4 = 0, so every prime is bad; choose another period");
}

/// Exploration mode: does tr(A^p) of a user-chosen period reproduce a_p?
struct PeriodExploration {
    std::vector<Integer> period;
    Integer trace_ap;           // tr(A^p)
    bool torus_bad = false;     // p | tr(A)^2 - 4
    std::optional<bool> equals_a_p;
};

struct LocalizationLevel {
    unsigned n = 0;
    CKDescriptor descriptor;
    AbelianGroupInv k0;
    Integer k0_order;
    std::optional<Integer> curve_count;         // N_n (good) or #E_ns (bad)
    std::optional<AbelianGroupInv> curve_group; // good p, p^n <= kCurveGroupGuard
};

struct LocalizationResult {
    std::uint64_t p = 0;
    ReductionType reduction;
    std::optional<long long> a_p;
    std::optional<IntMatrix> lp;
    std::vector<LocalizationLevel> levels;
    std::optional<PeriodExploration> exploration;
};

inline LocalizationResult localize(const RationalModel& e, std::uint64_t p, unsigned n_max,
                                   const std::optional<std::vector<Integer>>& period = std::nullopt)
{
    if (n_max < 1 || n_max > 6)
        throw Error("nmax must lie in [1, 6]");
    auto reduced = reduce_mod_p(e, p);
    LocalizationResult out;
    out.p = p;
    out.reduction = classify_reduction(reduced);
    CurveLocalData data{p, out.reduction, std::nullopt};
    if (out.reduction.good()) {
        out.a_p = trace_of_frobenius(reduced);
        data.a_p = out.a_p;
        out.lp = build_lp(*out.a_p, p);
    }
    auto counts = curve_counts(data, n_max);

    for (unsigned n = 1; n <= n_max; ++n) {
        LocalizationLevel level;
        level.n = n;
        level.descriptor = out.reduction.good() ? epsilon_good(p, n, *out.a_p)
                                                : epsilon_bad(p, n, *out.reduction.alpha);
        level.k0 = k0_group(level.descriptor);
        level.k0_order = k0_order(level.descriptor);
        level.curve_count = counts[n - 1];
        if (out.reduction.good()) {
            Integer q = ipow(Integer(p), n);
            if (q <= kCurveGroupGuard)
                level.curve_group = group_structure(reduced, n);
        }
        out.levels.push_back(std::move(level));
    }

    if (period) {
        require_nondegenerate_period(*period);
        IntMatrix a = incidence_matrix(*period);
        PeriodExploration ex;
        ex.period = *period;
        ex.trace_ap = trace(mat_pow(a, p));
        Integer t = trace(a);
        ex.torus_bad = (t * t - 4) % Integer(p) == 0;
        if (out.a_p)
            ex.equals_a_p = ex.trace_ap == Integer(*out.a_p);
        out.exploration = std::move(ex);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Correctness under admissible changes of variable
// ---------------------------------------------------------------------------

struct Theorem1Trial {
    std::size_t index = 0;
    long u = 1, r = 0, s = 0, t = 0;
    RationalModel transformed;
    bool reduction_commutes = false;      // reduce(T(E)) == T mod p applied to reduce(E)
    std::optional<bool> j_equal;          // good primes
    std::optional<IntMatrix> lp;          // good primes, for the transformed curve
    std::optional<int> alpha;             // bad primes, for the transformed curve
    bool pass = false;
};

struct Theorem1Report {
    RationalModel model;
    std::uint64_t p = 0;
    std::uint64_t seed = 0;
    ReductionType reduction;
    std::optional<IntMatrix> lp;
    std::vector<Theorem1Trial> trials;

    std::size_t passed() const
    {
        std::size_t k = 0;
        for (const auto& t : trials)
            k += t.pass ? 1 : 0;
        return k;
    }
    bool all_pass() const { return passed() == trials.size(); }
};

namespace detail {

/// Draws u in {1,2,3} (coprime to p) and r, s, t in [-3, 3] from a generator
/// seeded by (seed, trial) alone, so trials are independent of each other.
inline AdmissibleTransform<Rational> random_transform(std::uint64_t seed, std::size_t trial,
                                                      std::uint64_t p, long& u, long& r, long& s,
                                                      long& t)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<long> pick_u(1, 3), pick_small(-3, 3);
    for (int attempt = 0; attempt < 64; ++attempt) {
        u = pick_u(rng);
        if (static_cast<std::uint64_t>(u) % p == 0)
            continue;
        r = pick_small(rng);
        s = pick_small(rng);
        t = pick_small(rng);
        return {Rational(u), Rational(r), Rational(s), Rational(t)};
    }
    throw Error("could not draw a p-integral transform");
}

inline AdmissibleTransform<Fp> reduce_transform(const AdmissibleTransform<Rational>& tr,
                                                std::uint64_t p)
{
    return {Fp::from_rational(tr.u(), p), Fp::from_rational(tr.r(), p),
            Fp::from_rational(tr.s(), p), Fp::from_rational(tr.t(), p)};
}

} // namespace detail

/// Applies `trials` seeded admissible transforms and checks that the reduced
/// curves stay isomorphic over the closure and that F(p) returns the same L_p
/// (good p) or the same alpha (bad p).
inline Theorem1Report theorem1_check(const RationalModel& e, std::uint64_t p, std::size_t trials,
                                     std::uint64_t seed)
{
    if (trials < 1)
        throw Error("trials must be positive");
    auto reduced = reduce_mod_p(e, p);
    Theorem1Report report;
    report.model = e;
    report.p = p;
    report.seed = seed;
    report.reduction = classify_reduction(reduced);
    if (report.reduction.good())
        report.lp = build_lp(trace_of_frobenius(reduced), p);

    for (std::size_t i = 0; i < trials; ++i) {
        Theorem1Trial trial;
        trial.index = i;
        auto tr = detail::random_transform(seed, i, p, trial.u, trial.r, trial.s, trial.t);
        trial.transformed = transform(e, tr);
        auto reduced2 = reduce_mod_p(trial.transformed, p);
        trial.reduction_commutes
            = transform(reduced, detail::reduce_transform(tr, p)) == reduced2;
        auto type2 = classify_reduction(reduced2);
        bool same;
        if (report.reduction.good()) {
            trial.j_equal = type2.good() && isomorphic_over_closure(reduced, reduced2);
            if (type2.good())
                trial.lp = build_lp(trace_of_frobenius(reduced2), p);
            same = *trial.j_equal && trial.lp && *trial.lp == *report.lp;
        } else {
            trial.alpha = type2.alpha;
            same = type2 == report.reduction;
        }
        trial.pass = same && trial.reduction_commutes;
        report.trials.push_back(std::move(trial));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Similar incidence matrices give the same L_p
// ---------------------------------------------------------------------------

struct Lemma3Report {
    IntMatrix a, a_prime;
    ConjugacyVerdict verdict;
    std::optional<Integer> trace_ap, trace_ap_prime;
    std::optional<IntMatrix> lp, lp_prime;
    bool witness_verified = false;  // B A = A' B, det B = +-1
    bool powers_conjugate = false;  // B A^p = A'^p B
    bool chain_holds = false;       // conjugate => equal traces => equal L_p

    bool conjugate() const { return std::holds_alternative<Conjugate>(verdict); }
};

inline Lemma3Report lemma3_bridge(const std::vector<Integer>& period,
                                  const std::vector<Integer>& period_prime, std::uint64_t p,
                                  long bound = 5)
{
    require_prime(p);
    Lemma3Report r{incidence_matrix(period), incidence_matrix(period_prime),
                   UnknownConjugacy{bound}, {}, {}, {}, {}, false, false, false};
    r.verdict = conjugacy_test(r.a, r.a_prime, bound);
    if (const auto* c = std::get_if<Conjugate>(&r.verdict)) {
        const IntMatrix& b = c->witness;
        Integer det = determinant(b);
        r.witness_verified = (det == 1 || det == -1) && b * r.a == r.a_prime * b;
        IntMatrix ap = mat_pow(r.a, p);
        IntMatrix ap_prime = mat_pow(r.a_prime, p);
        r.powers_conjugate = b * ap == ap_prime * b;
        r.trace_ap = trace(ap);
        r.trace_ap_prime = trace(ap_prime);
        r.lp = build_lp(*r.trace_ap, p);
        r.lp_prime = build_lp(*r.trace_ap_prime, p);
        r.chain_holds = r.witness_verified && r.powers_conjugate && *r.trace_ap == *r.trace_ap_prime
            && *r.lp == *r.lp_prime;
    } else {
        // Nothing to chain; a non-conjugate pair makes no claim about L_p.
        r.chain_holds = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// E(F_{p^n}) versus K0(O_{eps_n}) as groups
// ---------------------------------------------------------------------------

struct Footnote2Level {
    unsigned n = 0;
    Integer curve_order;
    Integer k0_order;
    std::optional<AbelianGroupInv> curve_group;
    AbelianGroupInv k0_group;
    std::optional<bool> isomorphic; // only when curve_group is known
};

struct Footnote2Report {
    std::uint64_t p = 0;
    long long a_p = 0;
    std::vector<Footnote2Level> levels;

    bool orders_agree() const
    {
        for (const auto& l : levels)
            if (l.curve_order != l.k0_order)
                return false;
        return true;
    }
};

/// Reports both factor lists per n. Only the orders are expected to agree.
inline Footnote2Report footnote2_experiment(const RationalModel& e, std::uint64_t p, unsigned n_max)
{
    auto reduced = reduce_mod_p(e, p);
    if (!classify_reduction(reduced).good())
        throw Error("group comparison needs a good prime");
    Footnote2Report r;
    r.p = p;
    r.a_p = trace_of_frobenius(reduced);
    auto counts = point_counts_via_recurrence(r.a_p, p, n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        Footnote2Level level;
        level.n = n;
        level.curve_order = counts[n - 1];
        auto eps = epsilon_good(p, n, r.a_p);
        level.k0_group = k0_group(eps);
        level.k0_order = k0_order(eps);
        if (ipow(Integer(p), n) <= 1'000'000) {
            level.curve_group = group_structure(reduced, n);
            level.isomorphic = *level.curve_group == level.k0_group;
        }
        r.levels.push_back(std::move(level));
    }
    return r;
}

} // namespace nclocal
