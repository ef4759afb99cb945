#pragma once

// Quadratic irrationals (P + sqrt(D)) / Q, their periodic continued
// fractions, and the 2x2 incidence matrix of a period.

#include "nclocal/intmat.hpp"
#include "nclocal/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nclocal {

/// a + b*sqrt(radicand) with rational a, b. Arithmetic is only defined between
/// numbers sharing the same radicand.
class QuadraticNumber {
public:
    QuadraticNumber(Rational a, Rational b, Integer radicand)
        : a_(std::move(a)), b_(std::move(b)), radicand_(std::move(radicand))
    {
        if (radicand_ <= 0 || is_perfect_square(radicand_))
            throw Error("radicand must be a positive nonsquare");
    }

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt_coefficient() const { return b_; }
    const Integer& radicand() const { return radicand_; }

    QuadraticNumber conjugate() const { return {a_, -b_, radicand_}; }

    /// a^2 - d b^2
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(radicand_); }

    int sign() const
    {
        int sa = a_.sign(), sb = b_.sign();
        if (sa == 0)
            return sb;
        if (sb == 0 || sa == sb)
            return sa;
        // Opposite signs; sqrt(d) is irrational so the magnitudes never tie.
        return a_ * a_ > b_ * b_ * Rational(radicand_) ? sa : sb;
    }

    friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y)
    {
        x.require_same_field(y);
        return {x.a_ + y.a_, x.b_ + y.b_, x.radicand_};
    }
    friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y)
    {
        x.require_same_field(y);
        return {x.a_ - y.a_, x.b_ - y.b_, x.radicand_};
    }
    friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y)
    {
        x.require_same_field(y);
        return {x.a_ * y.a_ + x.b_ * y.b_ * Rational(x.radicand_), x.a_ * y.b_ + x.b_ * y.a_,
                x.radicand_};
    }
    friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y)
    {
        x.require_same_field(y);
        Rational n = y.norm();
        if (n == 0)
            throw Error("division by zero");
        QuadraticNumber num = x * y.conjugate();
        return {num.a_ / n, num.b_ / n, x.radicand_};
    }
    friend QuadraticNumber operator+(const QuadraticNumber& x, const Rational& r)
    {
        return {x.a_ + r, x.b_, x.radicand_};
    }
    friend QuadraticNumber operator*(const Rational& r, const QuadraticNumber& x)
    {
        return {r * x.a_, r * x.b_, x.radicand_};
    }
    friend QuadraticNumber operator-(const QuadraticNumber& x)
    {
        return {-x.a_, -x.b_, x.radicand_};
    }

    friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y)
    {
        // Values, not representations: compare a and b^2 d with signs of b.
        return x.a_ == y.a_ && x.b_.sign() == y.b_.sign()
            && x.b_ * x.b_ * Rational(x.radicand_) == y.b_ * y.b_ * Rational(y.radicand_);
    }

    /// Exact comparison against a rational.
    int compare(const Rational& r) const { return (*this + Rational(-r)).sign(); }

    long double approx() const
    {
        return static_cast<long double>(a_)
            + static_cast<long double>(b_) * sqrtl(static_cast<long double>(radicand_));
    }

private:
    void require_same_field(const QuadraticNumber& other) const
    {
        if (radicand_ != other.radicand_)
            throw Error("quadratic numbers over different radicands");
    }

    Rational a_;
    Rational b_;
    Integer radicand_;
};

/// (P + sqrt(D)) / Q with D > 0 nonsquare, kept in the canonical form with
/// Q | D - P^2 and |Q| minimal. Equal values have equal triples.
class QuadraticIrrational {
public:
    QuadraticIrrational(Integer p, Integer d, Integer q)
    {
        if (q == 0)
            throw Error("Q must be nonzero");
        if (d <= 0)
            throw Error("D must be positive");
        if (is_perfect_square(d))
            throw Error("D = " + to_string(d) + " is a perfect square; value is rational");
        // Smallest t > 0 with tP/Q, t^2 D/Q^2 and t(D - P^2)/Q^2 all integral.
        Integer aq = abs(q);
        Integer qq = q * q;
        Integer t = lcm(aq / gcd(p, aq), qq / gcd(qq, d - p * p));
        p_ = t * p / aq;
        d_ = t * t * d / qq;
        q_ = q < 0 ? Integer(-t) : t;
    }

    /// Builds the canonical triple from a + b sqrt(d), b != 0.
    static QuadraticIrrational from_number(const QuadraticNumber& x)
    {
        const Rational& a = x.rational_part();
        const Rational& b = x.sqrt_coefficient();
        if (b == 0)
            throw Error("value is rational");
        // a + b sqrt(d) = (aQ + sqrt(b^2 d Q^2)) / Q with sign(Q) = sign(b).
        Integer q = lcm(denominator(a), denominator(b));
        if (b < 0)
            q = -q;
        Rational pq = a * Rational(q);
        Rational dq = b * b * Rational(x.radicand()) * Rational(q * q);
        return {numerator(pq), numerator(dq), q};
    }

    const Integer& P() const { return p_; }
    const Integer& D() const { return d_; }
    const Integer& Q() const { return q_; }

    QuadraticNumber value() const { return {make_rational(p_, q_), make_rational(1, q_), d_}; }
    QuadraticNumber conjugate_value() const { return value().conjugate(); }
    long double approx() const { return value().approx(); }

    Integer floor() const
    {
        Integer s = isqrt(d_);
        if (q_ > 0)
            return floor_div(p_ + s, q_);
        // sqrt(D) is irrational, so ceil(y) = floor(y) + 1.
        return -floor_div(p_ + s, -q_) - 1;
    }

    QuadraticIrrational operator-() const { return {p_, d_, -q_}; }

    friend bool operator==(const QuadraticIrrational&, const QuadraticIrrational&) = default;

    std::string str() const
    {
        return "(" + to_string(p_) + "+sqrt(" + to_string(d_) + "))/" + to_string(q_);
    }

private:
    Integer p_;
    Integer d_;
    Integer q_;
};

/// Eventually periodic continued fraction [pre..., (period...)].
struct CFExpansion {
    std::vector<Integer> preperiod;
    std::vector<Integer> period;

    friend bool operator==(const CFExpansion&, const CFExpansion&) = default;

    Integer term(std::size_t i) const
    {
        if (i < preperiod.size())
            return preperiod[i];
        return period[(i - preperiod.size()) % period.size()];
    }

    /// "[a0; a1, ..., (ak, ..., am)]"
    std::string str() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < preperiod.size(); ++i) {
            out += to_string(preperiod[i]);
            out += i == 0 ? "; " : ", ";
        }
        out += "(";
        for (std::size_t i = 0; i < period.size(); ++i) {
            if (i)
                out += ", ";
            out += to_string(period[i]);
        }
        out += ")]";
        return out;
    }
};

namespace detail {

/// Shortest m dividing the cycle length with period[i] == period[i + m].
inline std::vector<Integer> minimal_period(std::vector<Integer> cycle)
{
    const std::size_t n = cycle.size();
    for (std::size_t m = 1; m < n; ++m) {
        if (n % m != 0)
            continue;
        bool repeats = true;
        for (std::size_t i = m; i < n && repeats; ++i)
            repeats = cycle[i] == cycle[i - m];
        if (repeats) {
            cycle.resize(m);
            return cycle;
        }
    }
    return cycle;
}

} // namespace detail

/// Complete-quotient recurrence a = floor((P + sqrt D)/Q), P' = aQ - P,
/// Q' = (D - P'^2)/Q, stopped at the first repeated (P, Q) state.
inline CFExpansion cf_expand(const QuadraticIrrational& x)
{
    const Integer& d = x.D();
    const Integer root = isqrt(d);
    Integer p = x.P(), q = x.Q();
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    std::vector<Integer> terms;
    for (;;) {
        auto [it, inserted] = seen.emplace(std::make_pair(p, q), terms.size());
        if (!inserted) {
            std::size_t start = it->second;
            CFExpansion result;
            result.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
            result.period = detail::minimal_period(
                std::vector<Integer>(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end()));
            return result;
        }
        Integer a = q > 0 ? floor_div(p + root, q) : Integer(-floor_div(p + root, -q) - 1);
        terms.push_back(a);
        p = a * q - p;
        q = (d - p * p) / q;
    }
}

/// x > 1 and its conjugate lies in (-1, 0).
inline bool is_reduced(const QuadraticIrrational& x)
{
    QuadraticNumber conj = x.conjugate_value();
    return x.value().compare(1) > 0 && conj.sign() < 0 && conj.compare(-1) > 0;
}

/// Left-to-right product of (a_i, 1; 1, 0) over the period.
inline IntMatrix incidence_matrix(const std::vector<Integer>& period)
{
    if (period.empty())
        throw Error("empty period");
    IntMatrix a = IntMatrix::identity(2);
    for (const auto& term : period) {
        if (term < 1)
            throw Error("period entries must be positive");
        a = a * cf_factor(term);
    }
    return a;
}

/// (a x + b) / (c x + d) for an integer matrix (a, b; c, d).
inline QuadraticIrrational mobius(const IntMatrix& m, const QuadraticIrrational& x)
{
    if (m.rows() != 2 || m.cols() != 2)
        throw Error("2x2 matrix required");
    QuadraticNumber v = x.value();
    QuadraticNumber num = Rational(m(0, 0)) * v + Rational(m(0, 1));
    QuadraticNumber den = Rational(m(1, 0)) * v + Rational(m(1, 1));
    return QuadraticIrrational::from_number(num / den);
}

/// Exact value of an eventually periodic continued fraction.
inline QuadraticIrrational cf_value(const CFExpansion& cf)
{
    if (cf.period.empty())
        throw Error("empty period");
    // The purely periodic tail y is the fixed point > 1 of its incidence
    // matrix (p, p'; q, q'): q y^2 + (q' - p) y - p' = 0.
    IntMatrix a = incidence_matrix(cf.period);
    const Integer &p = a(0, 0), &pp = a(0, 1), &q = a(1, 0), &qq = a(1, 1);
    Integer disc = (qq - p) * (qq - p) + 4 * q * pp;
    QuadraticIrrational tail(p - qq, disc, 2 * q);
    if (cf.preperiod.empty())
        return tail;
    IntMatrix prefix = IntMatrix::identity(2);
    for (const auto& term : cf.preperiod)
        prefix = prefix * cf_factor(term);
    return mobius(prefix, tail);
}

/// The first `count` convergents p_k / q_k.
inline std::vector<Rational> convergents(const CFExpansion& cf, std::size_t count)
{
    std::vector<Rational> out;
    Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    for (std::size_t i = 0; i < count; ++i) {
        Integer a = cf.term(i);
        Integer h = a * h_prev + h_prev2;
        Integer k = a * k_prev + k_prev2;
        out.push_back(make_rational(h, k));
        h_prev2 = std::exchange(h_prev, h);
        k_prev2 = std::exchange(k_prev, k);
    }
    return out;
}

/// |x| / (1 + |x|), always in (0, 1).
inline QuadraticIrrational boundary_to_theta(const QuadraticIrrational& x)
{
    QuadraticNumber v = x.value();
    if (v.sign() < 0)
        v = -v;
    QuadraticNumber one_plus = v + Rational(1);
    return QuadraticIrrational::from_number(v / one_plus);
}

/// GL(2,Z)-equivalence via Serret's criterion: equal continued-fraction tails,
/// i.e. minimal periods that are cyclic shifts of one another.
inline bool gl2z_equivalent(const QuadraticIrrational& x, const QuadraticIrrational& y)
{
    if (x == y)
        return true;
    return is_cyclic_shift(cf_expand(x).period, cf_expand(y).period);
}

} // namespace nclocal
