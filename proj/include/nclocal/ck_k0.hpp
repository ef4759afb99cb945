#pragma once

// Cuntz-Krieger data attached to a prime: the matrix L_p = (tr, p; -1, 0),
// the family eps_n, and K0(O_eps) = coker(I - eps^T) as invariant factors.

#include "nclocal/group.hpp"
#include "nclocal/intmat.hpp"
#include "nclocal/numeric.hpp"

#include <cstdint>
#include <variant>

namespace nclocal {

/// L_p = (trace, p; -1, 0); det L_p = p, tr L_p = trace.
inline IntMatrix build_lp(const Integer& trace_ap, std::uint64_t p)
{
    require_prime(p);
    return IntMatrix{{trace_ap, Integer(p)}, {-1, 0}};
}

/// How eps_n was produced: (p, n, tr(A^p)) at good primes, (p, n, alpha) at bad ones.
struct CKSource {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::variant<Integer, int> data; // trace_ap or alpha
};

/// eps_n: a matrix L_p^n at good primes, the integer 1 - alpha^n at bad ones.
struct CKDescriptor {
    std::variant<IntMatrix, Integer> eps;
    CKSource source;

    bool is_matrix() const { return std::holds_alternative<IntMatrix>(eps); }
    const IntMatrix& matrix() const { return std::get<IntMatrix>(eps); }
    const Integer& scalar() const { return std::get<Integer>(eps); }

    /// eps as a square matrix (1x1 in the scalar case).
    IntMatrix as_matrix() const
    {
        if (is_matrix())
            return matrix();
        return IntMatrix{{scalar()}};
    }
};

inline void require_alpha(int alpha)
{
    if (alpha < -1 || alpha > 1)
        throw Error("alpha must be -1, 0 or 1");
}

inline CKDescriptor epsilon_good(std::uint64_t p, unsigned n, const Integer& trace_ap)
{
    if (n == 0)
        throw Error("n must be positive");
    return {mat_pow(build_lp(trace_ap, p), n), {p, n, trace_ap}};
}

inline CKDescriptor epsilon_bad(std::uint64_t p, unsigned n, int alpha)
{
    require_prime(p);
    require_alpha(alpha);
    if (n == 0)
        throw Error("n must be positive");
    Integer power = (alpha == -1 && n % 2 == 1) ? -1 : (alpha == 0 ? 0 : 1);
    return {Integer(1 - power), {p, n, alpha}};
}

/// eps_n = L_p^n when `good`, 1 - alpha^n otherwise; `data` is tr(A^p) or alpha.
inline CKDescriptor epsilon(std::uint64_t p, unsigned n, bool good, const Integer& data)
{
    if (good)
        return epsilon_good(p, n, data);
    if (data < -1 || data > 1)
        throw Error("alpha must be -1, 0 or 1");
    return epsilon_bad(p, n, data.convert_to<int>());
}

/// K0(O_eps) = Z^k / (I - eps^T) Z^k.
inline AbelianGroupInv k0_group(const CKDescriptor& eps)
{
    IntMatrix e = eps.as_matrix();
    IntMatrix presentation = IntMatrix::identity(e.rows()) - e.transpose();
    return AbelianGroupInv{smith_normal_form(presentation).diagonal()};
}

/// |det(I - eps)|, which is 0 exactly when K0 is infinite.
inline Integer k0_order(const CKDescriptor& eps)
{
    IntMatrix e = eps.as_matrix();
    return abs(determinant(IntMatrix::identity(e.rows()) - e));
}

/// det(I - eps) without the absolute value.
inline Integer k0_signed_order(const CKDescriptor& eps)
{
    IntMatrix e = eps.as_matrix();
    return determinant(IntMatrix::identity(e.rows()) - e);
}

} // namespace nclocal
