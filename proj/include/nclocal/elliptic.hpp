#pragma once

// Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q,
// F_p and F_{p^n}: invariants, admissible changes of variable, reduction,
// reduction types, point counts and group structure.

#include "nclocal/ffield.hpp"
#include "nclocal/group.hpp"
#include "nclocal/numeric.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nclocal {

inline Rational scalar_like(const Rational&, long long k) { return Rational(k); }
inline Fp scalar_like(const Fp& like, long long k) { return Fp(k, like.modulus()); }
inline Fq scalar_like(const Fq& like, long long k) { return like.field().constant(k); }

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline bool is_zero(const Fq& x) { return x.is_zero(); }

inline std::string to_string(const Fp& x) { return x.str(); }
inline std::string to_string(const Fq& x) { return x.str(); }

template <typename T>
struct WeierstrassModel {
    T a1, a2, a3, a4, a6;

    friend bool operator==(const WeierstrassModel& x, const WeierstrassModel& y)
    {
        return x.a1 == y.a1 && x.a2 == y.a2 && x.a3 == y.a3 && x.a4 == y.a4 && x.a6 == y.a6;
    }

    /// "[a1,a2,a3,a4,a6]"
    std::string str() const
    {
        using nclocal::to_string;
        return "[" + to_string(a1) + "," + to_string(a2) + "," + to_string(a3) + ","
            + to_string(a4) + "," + to_string(a6) + "]";
    }

    /// y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)
    T evaluate(const T& x, const T& y) const
    {
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6);
    }
};

using RationalModel = WeierstrassModel<Rational>;

template <typename T>
struct Invariants {
    T b2, b4, b6, b8, c4, c6, discriminant;
};

template <typename T>
Invariants<T> invariants(const WeierstrassModel<T>& e)
{
    Invariants<T> inv;
    inv.b2 = e.a1 * e.a1 + 4 * e.a2;
    inv.b4 = 2 * e.a4 + e.a1 * e.a3;
    inv.b6 = e.a3 * e.a3 + 4 * e.a6;
    inv.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3
        - e.a4 * e.a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -(inv.b2 * inv.b2 * inv.b2) + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.discriminant = -(inv.b2 * inv.b2 * inv.b8) - 8 * inv.b4 * inv.b4 * inv.b4
        - 27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
    return inv;
}

/// c4 written directly in the a-coefficients: (a1^2 + 4a2)^2 - 24(a1 a3 + 2 a4).
template <typename T>
T c4_direct(const WeierstrassModel<T>& e)
{
    T s = e.a1 * e.a1 + 4 * e.a2;
    return s * s - 24 * (e.a1 * e.a3 + 2 * e.a4);
}

template <typename T>
T discriminant(const WeierstrassModel<T>& e)
{
    return invariants(e).discriminant;
}

template <typename T>
T j_invariant(const WeierstrassModel<T>& e)
{
    auto inv = invariants(e);
    if (is_zero(inv.discriminant))
        throw Error("singular model");
    return inv.c4 * inv.c4 * inv.c4 / inv.discriminant;
}

template <typename T>
bool is_singular(const WeierstrassModel<T>& e)
{
    return is_zero(discriminant(e));
}

// ---------------------------------------------------------------------------
// Admissible changes of variable x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
// ---------------------------------------------------------------------------

template <typename T>
class AdmissibleTransform {
public:
    AdmissibleTransform(T u, T r, T s, T t)
        : u_(std::move(u)), r_(std::move(r)), s_(std::move(s)), t_(std::move(t))
    {
        if (is_zero(u_))
            throw Error("admissible transform needs u != 0");
    }

    static AdmissibleTransform identity(const T& like)
    {
        T zero = scalar_like(like, 0);
        return {scalar_like(like, 1), zero, zero, zero};
    }

    const T& u() const { return u_; }
    const T& r() const { return r_; }
    const T& s() const { return s_; }
    const T& t() const { return t_; }

    /// Applying *this and then `next` equals applying then(next) once.
    AdmissibleTransform then(const AdmissibleTransform& next) const
    {
        T u2 = u_ * u_;
        return {u_ * next.u_, u2 * next.r_ + r_, u_ * next.s_ + s_,
                u2 * u_ * next.t_ + s_ * u2 * next.r_ + t_};
    }

    AdmissibleTransform inverse() const
    {
        T ui = scalar_like(u_, 1) / u_;
        T ui2 = ui * ui;
        return {ui, -(r_ * ui2), -(s_ * ui), (r_ * s_ - t_) * ui2 * ui};
    }

    friend bool operator==(const AdmissibleTransform& a, const AdmissibleTransform& b)
    {
        return a.u_ == b.u_ && a.r_ == b.r_ && a.s_ == b.s_ && a.t_ == b.t_;
    }

private:
    T u_, r_, s_, t_;
};

/// The model satisfied by (x', y').
template <typename T>
WeierstrassModel<T> transform(const WeierstrassModel<T>& e, const AdmissibleTransform<T>& tr)
{
    const T &u = tr.u(), &r = tr.r(), &s = tr.s(), &t = tr.t();
    T u2 = u * u;
    T u3 = u2 * u;
    T u4 = u2 * u2;
    T u6 = u3 * u3;
    WeierstrassModel<T> out;
    out.a1 = (e.a1 + 2 * s) / u;
    out.a2 = (e.a2 - s * e.a1 + 3 * r - s * s) / u2;
    out.a3 = (e.a3 + r * e.a1 + 2 * t) / u3;
    out.a4 = (e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t) / u4;
    out.a6 = (e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1) / u6;
    return out;
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

inline bool is_p_integral(const RationalModel& e, std::uint64_t p)
{
    Integer pp = p;
    for (const Rational* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6})
        if (denominator(*a) % pp == 0)
            return false;
    return true;
}

inline WeierstrassModel<Fp> reduce_mod_p(const RationalModel& e, std::uint64_t p)
{
    require_prime(p);
    if (!is_p_integral(e, p))
        throw Error("model not p-integral at p = " + std::to_string(p)
                    + "; apply an admissible transform clearing denominators first");
    return {Fp::from_rational(e.a1, p), Fp::from_rational(e.a2, p), Fp::from_rational(e.a3, p),
            Fp::from_rational(e.a4, p), Fp::from_rational(e.a6, p)};
}

inline WeierstrassModel<Fq> extend(const WeierstrassModel<Fp>& e, const ExtField& field)
{
    return {field.embed(e.a1), field.embed(e.a2), field.embed(e.a3), field.embed(e.a4),
            field.embed(e.a6)};
}

enum class ReductionKind { Good, SplitMultiplicative, NonSplitMultiplicative, Additive };

inline const char* to_string(ReductionKind kind)
{
    switch (kind) {
    case ReductionKind::Good: return "good";
    case ReductionKind::SplitMultiplicative: return "split_multiplicative";
    case ReductionKind::NonSplitMultiplicative: return "nonsplit_multiplicative";
    case ReductionKind::Additive: return "additive";
    }
    return "unknown";
}

struct ReductionType {
    ReductionKind kind = ReductionKind::Good;
    std::optional<int> alpha; // 1 split node, -1 non-split node, 0 cusp

    bool good() const { return kind == ReductionKind::Good; }
    friend bool operator==(const ReductionType&, const ReductionType&) = default;
};

namespace detail {

inline std::uint64_t characteristic_of(const Fp& x) { return x.modulus(); }
inline std::uint64_t characteristic_of(const Fq& x) { return x.field().characteristic(); }

inline std::uint64_t trace_to_prime_field(const Fp& w) { return w.value(); }
inline std::uint64_t trace_to_prime_field(const Fq& w) { return absolute_trace(w); }

/// Number of y with (x, y) on the curve.
template <typename T>
unsigned count_y(const WeierstrassModel<T>& e, const T& x)
{
    T b = e.a1 * x + e.a3;
    T c = x * x * x + e.a2 * x * x + e.a4 * x + e.a6;
    if (characteristic_of(x) == 2) {
        if (is_zero(b))
            return 1; // squaring is bijective
        // y = b z turns y^2 + b y = c into z^2 + z = c / b^2.
        return trace_to_prime_field(c / (b * b)) == 0 ? 2 : 0;
    }
    T disc = b * b + 4 * c;
    if (is_zero(disc))
        return 1;
    return is_square(disc) ? 2 : 0;
}

} // namespace detail

/// Affine points plus the point at infinity, over F_p.
inline std::uint64_t count_projective(const WeierstrassModel<Fp>& e)
{
    const std::uint64_t p = e.a1.modulus();
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < p; ++x)
        n += detail::count_y(e, Fp::from_unsigned(x, p));
    return n;
}

/// Affine points plus the point at infinity, over the model's field.
inline std::uint64_t count_projective(const WeierstrassModel<Fq>& e)
{
    const ExtField& f = e.a1.field();
    std::uint64_t n = 1;
    for (std::uint64_t k = 0; k < f.order(); ++k)
        n += detail::count_y(e, f.element(k));
    return n;
}

/// #E(F_{p^n}) by enumerating x in F_{p^n}. The model must be nonsingular.
inline std::uint64_t count_points(const WeierstrassModel<Fp>& e, unsigned n)
{
    if (is_singular(e))
        throw Error("singular model; use count_nonsingular");
    if (n == 1) {
        checked_field_size(e.a1.modulus(), 1);
        return count_projective(e);
    }
    ExtField field(e.a1.modulus(), n);
    return count_projective(extend(e, field));
}

struct SingularPoint {
    Fp x, y;
};

/// The singular point of a model over F_p, by exhaustive search.
inline std::optional<SingularPoint> find_singular_point(const WeierstrassModel<Fp>& e)
{
    const std::uint64_t p = e.a1.modulus();
    if (p > 10'000)
        throw Error("singular-point search limited to p <= 10000");
    auto check = [&](const Fp& x, const Fp& y) {
        Fp fx = e.a1 * y - 3 * (x * x) - 2 * (e.a2 * x) - e.a4;
        Fp fy = 2 * y + e.a1 * x + e.a3;
        return e.evaluate(x, y).is_zero() && fx.is_zero() && fy.is_zero();
    };
    for (std::uint64_t xv = 0; xv < p; ++xv) {
        Fp x = Fp::from_unsigned(xv, p);
        if (p != 2) {
            Fp y = -(e.a1 * x + e.a3) / Fp(2, p);
            if (check(x, y))
                return SingularPoint{x, y};
            continue;
        }
        for (std::uint64_t yv = 0; yv < p; ++yv) {
            Fp y = Fp::from_unsigned(yv, p);
            if (check(x, y))
                return SingularPoint{x, y};
        }
    }
    return std::nullopt;
}

/// #E_ns(F_p): points other than the singular one, including infinity.
inline std::uint64_t count_nonsingular(const WeierstrassModel<Fp>& e)
{
    std::uint64_t n = count_projective(e);
    if (is_singular(e) && find_singular_point(e))
        --n;
    return n;
}

/// Classification together with the evidence behind it.
struct ReductionAnalysis {
    ReductionType type;
    std::optional<SingularPoint> singular_point;
    std::optional<Fp> tangent_discriminant; // slope method only (p > 3)
    bool slope_method = false;
    std::optional<int> alpha_from_count;    // p - #E_ns(F_p)
    std::optional<int> alpha_from_slope;
    std::uint64_t nonsingular_count = 0;
    bool methods_agree = true;
};

inline ReductionAnalysis analyze_reduction(const WeierstrassModel<Fp>& e)
{
    ReductionAnalysis out;
    auto inv = invariants(e);
    if (!inv.discriminant.is_zero())
        return out;

    const std::uint64_t p = e.a1.modulus();
    out.singular_point = find_singular_point(e);
    if (!out.singular_point)
        throw std::logic_error("singular model without a singular point");
    out.nonsingular_count = count_nonsingular(e);
    const auto ns = static_cast<long long>(out.nonsingular_count);
    const int alpha_count = static_cast<int>(static_cast<long long>(p) - ns);
    out.alpha_from_count = alpha_count;

    int alpha = 0;
    if (p > 3) {
        // Move the singular point to the origin; the tangent cone is then
        // Y^2 + a1 XY - a2 X^2 with slopes beta solving b^2 + a1 b - a2 = 0.
        Fp zero(0, p);
        auto moved = transform(e, AdmissibleTransform<Fp>(Fp(1, p), out.singular_point->x, zero,
                                                          out.singular_point->y));
        if (!moved.a3.is_zero() || !moved.a4.is_zero() || !moved.a6.is_zero())
            throw std::logic_error("translated singular point is not at the origin");
        Fp disc = moved.a1 * moved.a1 + 4 * moved.a2;
        out.tangent_discriminant = disc;
        out.slope_method = true;
        if (disc.is_zero())
            alpha = 0;
        else
            alpha = is_square(disc) ? 1 : -1;
        out.alpha_from_slope = alpha;
        out.methods_agree = alpha == alpha_count;
    } else {
        // Node vs cusp from c4; split vs non-split from the count.
        alpha = inv.c4.is_zero() ? 0 : alpha_count;
        out.methods_agree = inv.c4.is_zero() == (alpha_count == 0);
    }
    out.type.alpha = alpha;
    out.type.kind = alpha == 0 ? ReductionKind::Additive
        : alpha == 1           ? ReductionKind::SplitMultiplicative
                               : ReductionKind::NonSplitMultiplicative;
    return out;
}

inline ReductionType classify_reduction(const WeierstrassModel<Fp>& e)
{
    auto analysis = analyze_reduction(e);
    if (!analysis.methods_agree)
        throw std::logic_error("geometric and counting classifications disagree");
    return analysis.type;
}

/// a_p = p + 1 - #E(F_p), with the Hasse bound checked.
inline long long trace_of_frobenius(const WeierstrassModel<Fp>& e)
{
    const auto p = static_cast<long long>(e.a1.modulus());
    const long long a = p + 1 - static_cast<long long>(count_points(e, 1));
    if (a * a > 4 * p)
        throw std::logic_error("count bug: Hasse bound violated");
    return a;
}

/// N_k = p^k + 1 - s_k with s_0 = 2, s_1 = a_p, s_{k+1} = a_p s_k - p s_{k-1}.
inline std::vector<Integer> point_counts_via_recurrence(long long a_p, std::uint64_t p,
                                                        unsigned n_max)
{
    if (Integer(a_p) * a_p > 4 * Integer(p))
        throw Error("|a_p| exceeds the Hasse bound");
    std::vector<Integer> counts;
    Integer s_prev = 2, s = a_p, pk = p;
    for (unsigned k = 1; k <= n_max; ++k) {
        counts.push_back(pk + 1 - s);
        Integer next = a_p * s - Integer(p) * s_prev;
        s_prev = s;
        s = next;
        pk *= p;
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Group law and group structure
// ---------------------------------------------------------------------------

template <typename T>
struct Point {
    T x, y;
    bool infinity = false;

    friend bool operator==(const Point& a, const Point& b)
    {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

template <typename T>
Point<T> negate(const WeierstrassModel<T>& e, const Point<T>& pt)
{
    if (pt.infinity)
        return pt;
    return {pt.x, -pt.y - e.a1 * pt.x - e.a3, false};
}

template <typename T>
Point<T> add(const WeierstrassModel<T>& e, const Point<T>& p1, const Point<T>& p2)
{
    if (p1.infinity)
        return p2;
    if (p2.infinity)
        return p1;
    T lambda, nu;
    if (p1.x == p2.x) {
        if (p1.y + p2.y + e.a1 * p2.x + e.a3 == scalar_like(p1.x, 0))
            return {p1.x, p1.y, true};
        T den = 2 * p1.y + e.a1 * p1.x + e.a3;
        lambda = (3 * (p1.x * p1.x) + 2 * (e.a2 * p1.x) + e.a4 - e.a1 * p1.y) / den;
        nu = (-(p1.x * p1.x * p1.x) + e.a4 * p1.x + 2 * e.a6 - e.a3 * p1.y) / den;
    } else {
        lambda = (p2.y - p1.y) / (p2.x - p1.x);
        nu = (p1.y * p2.x - p2.y * p1.x) / (p2.x - p1.x);
    }
    T x3 = lambda * lambda + e.a1 * lambda - e.a2 - p1.x - p2.x;
    T y3 = -(lambda + e.a1) * x3 - nu - e.a3;
    return {x3, y3, false};
}

template <typename T>
Point<T> multiply(const WeierstrassModel<T>& e, Point<T> pt, std::uint64_t k)
{
    Point<T> result{pt.x, pt.y, true};
    while (k) {
        if (k & 1u)
            result = add(e, result, pt);
        pt = add(e, pt, pt);
        k >>= 1u;
    }
    return result;
}

/// All points of E(F_q), infinity first. Requires q <= 10^6.
inline std::vector<Point<Fq>> enumerate_points(const WeierstrassModel<Fq>& e)
{
    const ExtField& f = e.a1.field();
    if (f.order() > 1'000'000)
        throw Error("field too large");
    const bool char2 = f.characteristic() == 2;
    // Root tables: z -> z^2 (odd) or z -> z^2 + z (char 2).
    std::unordered_map<std::uint64_t, std::vector<Fq>> roots;
    for (std::uint64_t k = 0; k < f.order(); ++k) {
        Fq z = f.element(k);
        Fq key = char2 ? z * z + z : z * z;
        roots[key.index()].push_back(z);
    }
    std::vector<Point<Fq>> pts;
    pts.push_back({f.zero(), f.zero(), true});
    const Fq two_inv = char2 ? f.one() : f.constant(2).inverse();
    for (std::uint64_t k = 0; k < f.order(); ++k) {
        Fq x = f.element(k);
        Fq b = e.a1 * x + e.a3;
        Fq c = x * x * x + e.a2 * x * x + e.a4 * x + e.a6;
        if (!char2) {
            // (2y + b)^2 = b^2 + 4c
            auto it = roots.find((b * b + 4 * c).index());
            if (it == roots.end())
                continue;
            for (const Fq& w : it->second)
                pts.push_back({x, (w - b) * two_inv, false});
        } else if (b.is_zero()) {
            // Squaring is bijective; its inverse is c -> c^{q/2}.
            pts.push_back({x, c.pow(f.order() / 2), false});
        } else {
            auto it = roots.find((c / (b * b)).index());
            if (it == roots.end())
                continue;
            for (const Fq& z : it->second)
                pts.push_back({x, b * z, false});
        }
    }
    return pts;
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d)
            continue;
        out.push_back(d);
        while (n % d == 0)
            n /= d;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

} // namespace detail

template <typename T>
std::uint64_t point_order(const WeierstrassModel<T>& e, const Point<T>& pt, std::uint64_t group_order,
                          const std::vector<std::uint64_t>& primes)
{
    std::uint64_t m = group_order;
    for (std::uint64_t l : primes)
        while (m % l == 0 && multiply(e, pt, m / l).infinity)
            m /= l;
    return m;
}

/// E(F_q) = Z/d1 x Z/d2 with d2 the group exponent. Requires q <= 10^6.
inline AbelianGroupInv group_structure(const WeierstrassModel<Fq>& e)
{
    if (is_singular(e))
        throw Error("singular model");
    auto pts = enumerate_points(e);
    const std::uint64_t n = pts.size();
    const auto primes = detail::prime_factors(n);
    std::uint64_t exponent = 1;
    for (const auto& pt : pts) {
        if (multiply(e, pt, exponent).infinity)
            continue;
        std::uint64_t ord = point_order(e, pt, n, primes);
        exponent = exponent / detail::gcd_u64(exponent, ord) * ord;
    }
    const std::uint64_t d1 = n / exponent;
    const std::uint64_t q = e.a1.field().order();
    if (exponent % d1 != 0 || (q - 1) % d1 != 0)
        throw std::logic_error("group structure violates d1 | gcd(d2, q - 1)");
    return AbelianGroupInv{{Integer(d1), Integer(exponent)}};
}

inline AbelianGroupInv group_structure(const WeierstrassModel<Fp>& e, unsigned n)
{
    ExtField field(e.a1.modulus(), n);
    return group_structure(extend(e, field));
}

// ---------------------------------------------------------------------------
// Isomorphism over the algebraic closure
// ---------------------------------------------------------------------------

/// Over an algebraically closed field two nonsingular models are isomorphic
/// iff their j-invariants agree.
template <typename T>
bool isomorphic_over_closure(const WeierstrassModel<T>& e, const WeierstrassModel<T>& e2)
{
    if (is_singular(e) || is_singular(e2))
        throw Error("singular model");
    return j_invariant(e) == j_invariant(e2);
}

/// An explicit isomorphism defined over F_{p^degree}.
struct IsomorphismWitness {
    std::shared_ptr<const ExtField> field;
    AdmissibleTransform<Fq> transform;
};

namespace detail {

/// Transform to y^2 = x^3 + A x + B (characteristic > 3).
inline AdmissibleTransform<Fq> to_short_form(const WeierstrassModel<Fq>& e)
{
    const ExtField& f = e.a1.field();
    Fq half = f.constant(2).inverse();
    Fq zero = f.zero();
    AdmissibleTransform<Fq> first(f.one(), zero, -(e.a1 * half), -(e.a3 * half));
    auto mid = transform(e, first);
    AdmissibleTransform<Fq> second(f.one(), -(mid.a2 / f.constant(3)), zero, zero);
    return first.then(second);
}

} // namespace detail

/// Searches F_{p^k}, k = 1 .. max_degree (fields beyond the enumeration guard
/// are skipped), for (u, r, s, t) carrying e onto e2. Only p > 3.
inline std::optional<IsomorphismWitness> find_isomorphism(const WeierstrassModel<Fp>& e,
                                                          const WeierstrassModel<Fp>& e2,
                                                          unsigned max_degree)
{
    const std::uint64_t p = e.a1.modulus();
    if (p <= 3)
        throw Error("explicit isomorphism search needs p > 3");
    if (!isomorphic_over_closure(e, e2))
        return std::nullopt;
    for (unsigned k = 1; k <= max_degree; ++k) {
        std::shared_ptr<const ExtField> field;
        try {
            field = std::make_shared<const ExtField>(p, k);
        } catch (const Error&) {
            break;
        }
        auto ek = extend(e, *field);
        auto ek2 = extend(e2, *field);
        auto to_short = detail::to_short_form(ek);
        auto to_short2 = detail::to_short_form(ek2);
        auto short1 = transform(ek, to_short);
        auto short2 = transform(ek2, to_short2);
        // Short models match under (u, 0, 0, 0) iff A2 u^4 = A1 and B2 u^6 = B1.
        for (std::uint64_t idx = 1; idx < field->order(); ++idx) {
            Fq u = field->element(idx);
            Fq u2 = u * u;
            Fq u4 = u2 * u2;
            if (!(short2.a4 * u4 == short1.a4) || !(short2.a6 * u4 * u2 == short1.a6))
                continue;
            Fq zero = field->zero();
            auto scale = AdmissibleTransform<Fq>(u, zero, zero, zero);
            auto total = to_short.then(scale).then(to_short2.inverse());
            if (!(transform(ek, total) == ek2))
                throw std::logic_error("isomorphism witness failed verification");
            return IsomorphismWitness{field, total};
        }
    }
    return std::nullopt;
}

} // namespace nclocal
