#pragma once

#include "nclocal/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nclocal {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols)
    {
        if (rows == 0 || cols == 0)
            throw Error("matrix dimensions must be positive");
    }

    IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0)
            throw Error("matrix dimensions must be positive");
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw Error("ragged matrix literal");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows)
    {
        if (rows.empty() || rows.front().empty())
            throw Error("matrix dimensions must be positive");
        IntMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw Error("ragged matrix");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Integer>& entries() const { return entries_; }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        a.require_same_shape(b);
        IntMatrix c = a;
        for (std::size_t k = 0; k < c.entries_.size(); ++k)
            c.entries_[k] += b.entries_[k];
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
    {
        a.require_same_shape(b);
        IntMatrix c = a;
        for (std::size_t k = 0; k < c.entries_.size(); ++k)
            c.entries_[k] -= b.entries_[k];
        return c;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw Error("matrix dimension mismatch in product");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend IntMatrix operator*(const Integer& s, const IntMatrix& a)
    {
        IntMatrix c = a;
        for (auto& e : c.entries_)
            e *= s;
        return c;
    }

private:
    void require_same_shape(const IntMatrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw Error("matrix dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

inline void require_square(const IntMatrix& a)
{
    if (!a.is_square())
        throw Error("square matrix required");
}

inline Integer trace(const IntMatrix& a)
{
    require_square(a);
    Integer t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        t += a(i, i);
    return t;
}

/// Fraction-free Bareiss elimination.
inline Integer determinant(const IntMatrix& a)
{
    require_square(a);
    const std::size_t n = a.rows();
    IntMatrix m = a;
    Integer previous = 1;
    int sign_flip = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(swap_row, j));
            sign_flip = -sign_flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
            m(i, k) = 0;
        }
        previous = m(k, k);
    }
    return sign_flip * m(n - 1, n - 1);
}

/// Exact A^n by binary exponentiation; A^0 is the identity.
inline IntMatrix mat_pow(IntMatrix base, unsigned long long n)
{
    require_square(base);
    IntMatrix result = IntMatrix::identity(base.rows());
    while (n) {
        if (n & 1u)
            result = result * base;
        n >>= 1u;
        if (n)
            base = base * base;
    }
    return result;
}

/// Inverse of a unimodular 2x2 matrix.
inline IntMatrix inverse_unimodular_2x2(const IntMatrix& b)
{
    if (b.rows() != 2 || b.cols() != 2)
        throw Error("2x2 matrix required");
    Integer det = determinant(b);
    if (det != 1 && det != -1)
        throw Error("matrix is not unimodular");
    return IntMatrix{{det * b(1, 1), -det * b(0, 1)}, {-det * b(1, 0), det * b(0, 0)}};
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithDecomposition {
    IntMatrix U; // rows x rows, unimodular
    IntMatrix S; // rows x cols, diagonal d1 | d2 | ... >= 0
    IntMatrix V; // cols x cols, unimodular

    std::vector<Integer> diagonal() const
    {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
            d.push_back(S(i, i));
        return d;
    }
};

namespace detail {

class SmithReducer {
public:
    explicit SmithReducer(const IntMatrix& m)
        : S_(m), U_(IntMatrix::identity(m.rows())), V_(IntMatrix::identity(m.cols()))
    {
    }

    SmithDecomposition run()
    {
        const std::size_t rank_bound = std::min(S_.rows(), S_.cols());
        for (std::size_t t = 0; t < rank_bound; ++t) {
            if (!reduce_block(t))
                break;
        }
        return {std::move(U_), std::move(S_), std::move(V_)};
    }

private:
    // Returns false once the trailing block is entirely zero.
    bool reduce_block(std::size_t t)
    {
        for (;;) {
            auto pivot = smallest_entry(t);
            if (!pivot)
                return false;
            swap_rows(t, pivot->first);
            swap_cols(t, pivot->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < S_.rows(); ++i) {
                if (S_(i, t) == 0)
                    continue;
                Integer q = floor_div(S_(i, t), S_(t, t));
                add_row(i, t, -q);
                if (S_(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < S_.cols(); ++j) {
                if (S_(t, j) == 0)
                    continue;
                Integer q = floor_div(S_(t, j), S_(t, t));
                add_col(j, t, -q);
                if (S_(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Row and column t are clear; enforce divisibility on the block.
            auto offender = non_multiple(t);
            if (!offender) {
                if (S_(t, t) < 0)
                    negate_row(t);
                return true;
            }
            add_row(t, *offender, 1);
        }
    }

    std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        for (std::size_t i = t; i < S_.rows(); ++i)
            for (std::size_t j = t; j < S_.cols(); ++j) {
                if (S_(i, j) == 0)
                    continue;
                Integer a = abs(S_(i, j));
                if (!best || a < best_abs) {
                    best = {i, j};
                    best_abs = a;
                }
            }
        return best;
    }

    std::optional<std::size_t> non_multiple(std::size_t t) const
    {
        for (std::size_t i = t + 1; i < S_.rows(); ++i)
            for (std::size_t j = t + 1; j < S_.cols(); ++j)
                if (S_(i, j) % S_(t, t) != 0)
                    return i;
        return std::nullopt;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < S_.cols(); ++j)
            std::swap(S_(a, j), S_(b, j));
        for (std::size_t j = 0; j < U_.cols(); ++j)
            std::swap(U_(a, j), U_(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < S_.rows(); ++i)
            std::swap(S_(i, a), S_(i, b));
        for (std::size_t i = 0; i < V_.rows(); ++i)
            std::swap(V_(i, a), V_(i, b));
    }

    // row[target] += factor * row[source]
    void add_row(std::size_t target, std::size_t source, const Integer& factor)
    {
        for (std::size_t j = 0; j < S_.cols(); ++j)
            S_(target, j) += factor * S_(source, j);
        for (std::size_t j = 0; j < U_.cols(); ++j)
            U_(target, j) += factor * U_(source, j);
    }

    // col[target] += factor * col[source]
    void add_col(std::size_t target, std::size_t source, const Integer& factor)
    {
        for (std::size_t i = 0; i < S_.rows(); ++i)
            S_(i, target) += factor * S_(i, source);
        for (std::size_t i = 0; i < V_.rows(); ++i)
            V_(i, target) += factor * V_(i, source);
    }

    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < S_.cols(); ++j)
            S_(r, j) = -S_(r, j);
        for (std::size_t j = 0; j < U_.cols(); ++j)
            U_(r, j) = -U_(r, j);
    }

    IntMatrix S_;
    IntMatrix U_;
    IntMatrix V_;
};

} // namespace detail

/// U * M * V = S with U, V unimodular and S = diag(d1, d2, ...), d1 | d2 | ...,
/// all di >= 0. Pivots are the smallest nonzero absolute value, first in
/// row-major order, so the transforms are reproducible.
inline SmithDecomposition smith_normal_form(const IntMatrix& m)
{
    return detail::SmithReducer(m).run();
}

// ---------------------------------------------------------------------------
// GL(2,Z) conjugacy
// ---------------------------------------------------------------------------

/// The elementary continued-fraction matrix (a, 1; 1, 0).
inline IntMatrix cf_factor(const Integer& a) { return IntMatrix{{a, 1}, {1, 0}}; }

namespace detail {

inline bool peel_cf_word(const IntMatrix& rest, std::vector<Integer>& word)
{
    for (const auto& e : rest.entries())
        if (e < 0)
            return false;
    if (rest(0, 1) == 1 && rest(1, 0) == 1 && rest(1, 1) == 0 && rest(0, 0) >= 1) {
        word.push_back(rest(0, 0));
        return true;
    }
    if (rest(1, 0) == 0)
        return false;
    // Peeling (a,1;1,0) from the left: its inverse is (0,1;1,-a). The entry sum
    // drops by at least rest(1,0) per step, so the recursion is finite.
    Integer head = rest(0, 0) / rest(1, 0);
    for (Integer candidate : {head, Integer(head - 1)}) {
        if (candidate < 1)
            continue;
        IntMatrix next{{rest(1, 0), rest(1, 1)},
                       {rest(0, 0) - candidate * rest(1, 0), rest(0, 1) - candidate * rest(1, 1)}};
        word.push_back(candidate);
        if (peel_cf_word(next, word))
            return true;
        word.pop_back();
    }
    return false;
}

} // namespace detail

/// Writes a nonnegative 2x2 matrix as a product (a1,1;1,0)...(an,1;1,0) with
/// every ai >= 1, if such a factorization exists.
inline std::optional<std::vector<Integer>> cf_word(const IntMatrix& a)
{
    if (a.rows() != 2 || a.cols() != 2)
        return std::nullopt;
    std::vector<Integer> word;
    if (!detail::peel_cf_word(a, word))
        return std::nullopt;
    return word;
}

template <typename T>
bool is_cyclic_shift(const std::vector<T>& a, const std::vector<T>& b)
{
    if (a.size() != b.size())
        return false;
    if (a.empty())
        return true;
    for (std::size_t shift = 0; shift < a.size(); ++shift) {
        if (std::equal(a.begin() + static_cast<std::ptrdiff_t>(shift), a.end(), b.begin())
            && std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(shift),
                          b.begin() + static_cast<std::ptrdiff_t>(a.size() - shift)))
            return true;
    }
    return false;
}

/// Product of cf_factor over the rotation that moves word position `shift` to
/// the front; it conjugates the word's matrix into the rotated word's matrix.
inline IntMatrix rotation_conjugator(const std::vector<Integer>& word, std::size_t shift)
{
    IntMatrix prefix = IntMatrix::identity(2);
    for (std::size_t i = 0; i < shift; ++i)
        prefix = prefix * cf_factor(word[i]);
    // A = P * Q and A' = Q * P, so A' = P^{-1} A P; B = P^{-1}.
    return inverse_unimodular_2x2(prefix);
}

/// Exhaustive search for B with entries in [-bound, bound], det B = +-1 and
/// B * A = A' * B (equivalently B A B^{-1} = A').
inline std::optional<IntMatrix> find_conjugator(const IntMatrix& a, const IntMatrix& a_prime,
                                                long bound)
{
    if (a.rows() != 2 || a.cols() != 2 || a_prime.rows() != 2 || a_prime.cols() != 2)
        throw Error("2x2 matrices required");
    const Integer limit = Integer(1) << 40;
    bool small = bound <= (1L << 20);
    for (const auto* m : {&a, &a_prime})
        for (const auto& e : m->entries())
            small = small && abs(e) < limit;
    if (small) {
        // Same search in machine integers; every product stays below 2^62.
        auto at = [](const IntMatrix& m, std::size_t i, std::size_t j) {
            return m(i, j).convert_to<long long>();
        };
        const long long a00 = at(a, 0, 0), a01 = at(a, 0, 1), a10 = at(a, 1, 0), a11 = at(a, 1, 1);
        const long long c00 = at(a_prime, 0, 0), c01 = at(a_prime, 0, 1), c10 = at(a_prime, 1, 0),
                        c11 = at(a_prime, 1, 1);
        for (long long b00 = -bound; b00 <= bound; ++b00)
            for (long long b01 = -bound; b01 <= bound; ++b01)
                for (long long b10 = -bound; b10 <= bound; ++b10)
                    for (long long b11 = -bound; b11 <= bound; ++b11) {
                        long long det = b00 * b11 - b01 * b10;
                        if (det != 1 && det != -1)
                            continue;
                        if (b00 * a00 + b01 * a10 == c00 * b00 + c01 * b10
                            && b00 * a01 + b01 * a11 == c00 * b01 + c01 * b11
                            && b10 * a00 + b11 * a10 == c10 * b00 + c11 * b10
                            && b10 * a01 + b11 * a11 == c10 * b01 + c11 * b11)
                            return IntMatrix{{b00, b01}, {b10, b11}};
                    }
        return std::nullopt;
    }
    for (long b00 = -bound; b00 <= bound; ++b00)
        for (long b01 = -bound; b01 <= bound; ++b01)
            for (long b10 = -bound; b10 <= bound; ++b10)
                for (long b11 = -bound; b11 <= bound; ++b11) {
                    long det = b00 * b11 - b01 * b10;
                    if (det != 1 && det != -1)
                        continue;
                    IntMatrix b{{b00, b01}, {b10, b11}};
                    if (b * a == a_prime * b)
                        return b;
                }
    return std::nullopt;
}

struct Conjugate {
    IntMatrix witness;
};

struct NotConjugate {
    std::string reason;
};

struct UnknownConjugacy {
    long bound;
};

using ConjugacyVerdict = std::variant<Conjugate, NotConjugate, UnknownConjugacy>;

/// Decides GL(2,Z)-conjugacy of A and A'. Trace and determinant are checked
/// first; matrices that factor as continued-fraction words are decided exactly
/// by cyclic equivalence of the words; anything else falls back to a bounded
/// search and may come back Unknown.
inline ConjugacyVerdict conjugacy_test(const IntMatrix& a, const IntMatrix& a_prime, long bound)
{
    if (a.rows() != 2 || a.cols() != 2 || a_prime.rows() != 2 || a_prime.cols() != 2)
        throw Error("conjugacy_test expects 2x2 matrices");
    if (a == a_prime)
        return Conjugate{IntMatrix::identity(2)};
    if (trace(a) != trace(a_prime))
        return NotConjugate{"trace " + to_string(trace(a)) + " != " + to_string(trace(a_prime))};
    if (determinant(a) != determinant(a_prime))
        return NotConjugate{"determinant " + to_string(determinant(a))
                            + " != " + to_string(determinant(a_prime))};

    auto word = cf_word(a);
    auto word_prime = cf_word(a_prime);
    if (word && word_prime) {
        if (!is_cyclic_shift(*word, *word_prime))
            return NotConjugate{"continued-fraction periods are not cyclic shifts"};
        for (std::size_t shift = 0; shift < word->size(); ++shift) {
            IntMatrix b = rotation_conjugator(*word, shift);
            if (b * a == a_prime * b)
                return Conjugate{std::move(b)};
        }
        throw std::logic_error("cyclic shift found without a matching conjugator");
    }

    if (auto b = find_conjugator(a, a_prime, bound))
        return Conjugate{std::move(*b)};
    return UnknownConjugacy{bound};
}

} // namespace nclocal
