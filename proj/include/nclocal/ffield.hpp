#pragma once

// Prime fields F_p and small extension fields F_{p^n} = F_p[x]/(f).
//
// Fp is a self-contained element (value + modulus). Fq elements point at their
// ExtField, which must outlive them.

#include "nclocal/numeric.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nclocal {

/// Upper bound on p^n for anything that enumerates a field.
inline constexpr std::uint64_t kFieldGuard = 10'000'000;

class Fp {
public:
    Fp() = default;
    Fp(long long value, std::uint64_t p) : p_(p)
    {
        long long r = value % static_cast<long long>(p);
        v_ = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
    }
    static Fp from_unsigned(std::uint64_t value, std::uint64_t p)
    {
        Fp x;
        x.p_ = p;
        x.v_ = value % p;
        return x;
    }
    /// Reduction of a p-integral rational.
    static Fp from_rational(const Rational& r, std::uint64_t p)
    {
        Integer pp = p;
        Integer den = mod_floor(denominator(r), pp);
        if (den == 0)
            throw Error("model not p-integral");
        Integer num = mod_floor(numerator(r), pp);
        Fp n = from_unsigned(num.convert_to<std::uint64_t>(), p);
        Fp d = from_unsigned(den.convert_to<std::uint64_t>(), p);
        return n / d;
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp pow(std::uint64_t e) const { return from_unsigned(powmod(v_, e, p_), p_); }

    Fp inverse() const
    {
        if (v_ == 0)
            throw Error("inverse of zero");
        return pow(p_ - 2);
    }

    friend Fp operator+(Fp a, const Fp& b)
    {
        a.v_ += b.v_;
        if (a.v_ >= a.p_)
            a.v_ -= a.p_;
        return a;
    }
    friend Fp operator-(Fp a, const Fp& b)
    {
        a.v_ = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_;
        return a;
    }
    friend Fp operator-(Fp a)
    {
        a.v_ = a.v_ == 0 ? 0 : a.p_ - a.v_;
        return a;
    }
    friend Fp operator*(Fp a, const Fp& b)
    {
        a.v_ = mulmod(a.v_, b.v_, a.p_);
        return a;
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    friend Fp operator*(long long k, const Fp& a) { return Fp(k, a.p_) * a; }

    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }

    std::string str() const { return std::to_string(v_); }

private:
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 2;
};

/// Euler's criterion; 0 counts as a square and every element of F_2 is one.
inline bool is_square(const Fp& a)
{
    if (a.is_zero() || a.modulus() == 2)
        return true;
    return a.pow((a.modulus() - 1) / 2).value() == 1;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficient vectors in ascending degree
// ---------------------------------------------------------------------------

namespace poly {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline Poly mod(Poly a, const Poly& m, std::uint64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        std::uint64_t c = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
        trim(a);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + nclocal::mulmod(a[i], b[j], p)) % p;
    return mod(std::move(c), m, p);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p)
{
    Poly result{1};
    base = mod(std::move(base), m, p);
    while (e) {
        if (e & 1u)
            result = mulmod(result, base, m, p);
        base = mulmod(base, base, m, p);
        e >>= 1u;
    }
    return result;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Ben-Or: a degree-n polynomial is irreducible iff gcd(x^{p^k} - x, f) = 1
/// for k = 1 .. n/2.
inline bool is_irreducible(const Poly& f, std::uint64_t p)
{
    if (f.size() < 2)
        return false;
    const std::size_t n = f.size() - 1;
    if (n == 1)
        return true;
    Poly x{0, 1};
    Poly xp = x;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        xp = powmod(xp, p, f, p);
        Poly g = gcd(f, sub(xp, x, p), p);
        if (g.size() != 1)
            return false;
    }
    return true;
}

} // namespace poly

inline std::uint64_t checked_field_size(std::uint64_t p, unsigned n)
{
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (q > kFieldGuard / p)
            throw Error("field too large");
        q *= p;
    }
    return q;
}

/// Lexicographically smallest monic irreducible of degree n over F_p
/// (coefficients compared from x^{n-1} down to the constant term).
inline poly::Poly find_irreducible(std::uint64_t p, unsigned n)
{
    require_prime(p);
    if (n == 0)
        throw Error("degree must be positive");
    const std::uint64_t count = checked_field_size(p, n);
    for (std::uint64_t k = 0; k < count; ++k) {
        poly::Poly f(n + 1, 0);
        f[n] = 1;
        std::uint64_t digits = k;
        for (unsigned i = 0; i < n; ++i) {
            f[i] = digits % p;
            digits /= p;
        }
        if (poly::is_irreducible(f, p))
            return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

class Fq;

/// F_{p^n} as F_p[x]/(modulus). Requires p^n <= kFieldGuard.
class ExtField {
public:
    static constexpr unsigned kMaxDegree = 24;

    ExtField(std::uint64_t p, unsigned n) : ExtField(p, n, find_irreducible(p, n)) {}

    ExtField(std::uint64_t p, unsigned n, poly::Poly modulus)
        : p_(p), n_(n), modulus_(std::move(modulus))
    {
        require_prime(p);
        if (n == 0 || n >= kMaxDegree)
            throw Error("unsupported extension degree");
        q_ = checked_field_size(p, n);
        if (modulus_.size() != n + 1 || modulus_.back() != 1)
            throw Error("modulus must be monic of degree n");
        if (!poly::is_irreducible(modulus_, p))
            throw Error("modulus is not irreducible");
    }

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return n_; }
    std::uint64_t order() const { return q_; }
    const poly::Poly& modulus() const { return modulus_; }

    Fq zero() const;
    Fq one() const;
    Fq constant(long long k) const;
    Fq embed(const Fp& a) const;
    /// The k-th element in enumeration order: coefficient i is base-p digit i.
    Fq element(std::uint64_t k) const;
    /// Every element exactly once, index order.
    std::vector<Fq> enumerate() const;

private:
    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
    poly::Poly modulus_;
};

class Fq {
public:
    using Coeffs = std::array<std::uint32_t, ExtField::kMaxDegree>;

    Fq() = default;
    Fq(const ExtField& field, const Coeffs& c) : field_(&field), c_(c) {}

    const ExtField& field() const { return *field_; }
    std::uint32_t coeff(unsigned i) const { return c_[i]; }

    /// Inverse of ExtField::element.
    std::uint64_t index() const
    {
        std::uint64_t k = 0;
        for (unsigned i = field_->degree(); i-- > 0;)
            k = k * field_->characteristic() + c_[i];
        return k;
    }

    bool is_zero() const
    {
        for (unsigned i = 0; i < field_->degree(); ++i)
            if (c_[i])
                return false;
        return true;
    }

    friend Fq operator+(Fq a, const Fq& b)
    {
        const std::uint64_t p = a.field_->characteristic();
        for (unsigned i = 0; i < a.field_->degree(); ++i) {
            std::uint64_t s = std::uint64_t{a.c_[i]} + b.c_[i];
            a.c_[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
        }
        return a;
    }
    friend Fq operator-(Fq a, const Fq& b)
    {
        const std::uint64_t p = a.field_->characteristic();
        for (unsigned i = 0; i < a.field_->degree(); ++i)
            a.c_[i] = static_cast<std::uint32_t>(a.c_[i] >= b.c_[i] ? a.c_[i] - b.c_[i]
                                                                    : a.c_[i] + p - b.c_[i]);
        return a;
    }
    friend Fq operator-(const Fq& a) { return a.field_->zero() - a; }

    friend Fq operator*(const Fq& a, const Fq& b)
    {
        const ExtField& f = *a.field_;
        const std::uint64_t p = f.characteristic();
        const unsigned n = f.degree();
        std::array<std::uint64_t, 2 * ExtField::kMaxDegree> prod{};
        for (unsigned i = 0; i < n; ++i) {
            if (!a.c_[i])
                continue;
            for (unsigned j = 0; j < n; ++j)
                prod[i + j] = (prod[i + j] + std::uint64_t{a.c_[i]} * b.c_[j]) % p;
        }
        const auto& m = f.modulus();
        for (unsigned d = 2 * n - 2; d >= n && d < 2 * n; --d) {
            std::uint64_t c = prod[d];
            if (!c)
                continue;
            prod[d] = 0;
            for (unsigned i = 0; i < n; ++i)
                prod[d - n + i] = (prod[d - n + i] + (p - c) * m[i]) % p;
        }
        Fq r(f, Coeffs{});
        for (unsigned i = 0; i < n; ++i)
            r.c_[i] = static_cast<std::uint32_t>(prod[i]);
        return r;
    }
    friend Fq operator*(long long k, const Fq& a) { return a.field_->constant(k) * a; }
    friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inverse(); }

    Fq pow(std::uint64_t e) const
    {
        Fq result = field_->one();
        Fq base = *this;
        while (e) {
            if (e & 1u)
                result = result * base;
            base = base * base;
            e >>= 1u;
        }
        return result;
    }

    Fq inverse() const
    {
        if (is_zero())
            throw Error("inverse of zero");
        return pow(field_->order() - 2);
    }

    Fq frobenius() const { return pow(field_->characteristic()); }

    friend bool operator==(const Fq& a, const Fq& b)
    {
        for (unsigned i = 0; i < a.field_->degree(); ++i)
            if (a.c_[i] != b.c_[i])
                return false;
        return true;
    }

    /// "(c0,c1,...,c_{n-1})"
    std::string str() const
    {
        std::string out = "(";
        for (unsigned i = 0; i < field_->degree(); ++i) {
            if (i)
                out += ",";
            out += std::to_string(c_[i]);
        }
        return out + ")";
    }

private:
    const ExtField* field_ = nullptr;
    Coeffs c_{};
};

inline Fq ExtField::zero() const { return Fq(*this, Fq::Coeffs{}); }

inline Fq ExtField::one() const { return constant(1); }

inline Fq ExtField::constant(long long k) const
{
    Fq::Coeffs c{};
    long long r = k % static_cast<long long>(p_);
    c[0] = static_cast<std::uint32_t>(r < 0 ? r + static_cast<long long>(p_) : r);
    return Fq(*this, c);
}

inline Fq ExtField::embed(const Fp& a) const
{
    if (a.modulus() != p_)
        throw Error("characteristic mismatch");
    Fq::Coeffs c{};
    c[0] = static_cast<std::uint32_t>(a.value());
    return Fq(*this, c);
}

inline Fq ExtField::element(std::uint64_t k) const
{
    Fq::Coeffs c{};
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = static_cast<std::uint32_t>(k % p_);
        k /= p_;
    }
    return Fq(*this, c);
}

inline std::vector<Fq> ExtField::enumerate() const
{
    std::vector<Fq> out;
    out.reserve(q_);
    for (std::uint64_t k = 0; k < q_; ++k)
        out.push_back(element(k));
    return out;
}

inline bool is_square(const Fq& a)
{
    const ExtField& f = a.field();
    if (a.is_zero() || f.characteristic() == 2)
        return true;
    return a.pow((f.order() - 1) / 2) == f.one();
}

/// Absolute trace F_q -> F_p, returned as its F_p value.
inline std::uint64_t absolute_trace(const Fq& a)
{
    Fq sum = a;
    Fq power = a;
    for (unsigned i = 1; i < a.field().degree(); ++i) {
        power = power.frobenius();
        sum = sum + power;
    }
    return sum.coeff(0);
}

} // namespace nclocal
