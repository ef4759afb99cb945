#pragma once

#include "nclocal/numeric.hpp"

#include <string>
#include <vector>

namespace nclocal {

/// Finitely generated abelian group Z/d1 x Z/d2 x ... with d1 | d2 | ...;
/// a factor 0 stands for an infinite cyclic summand.
struct AbelianGroupInv {
    std::vector<Integer> invariant_factors;

    bool is_finite() const
    {
        for (const auto& d : invariant_factors)
            if (d == 0)
                return false;
        return true;
    }

    /// Product of the factors; 0 for an infinite group.
    Integer order() const
    {
        Integer n = 1;
        for (const auto& d : invariant_factors) {
            if (d == 0)
                return 0;
            n *= d;
        }
        return n;
    }

    bool divisibility_chain_holds() const
    {
        for (std::size_t i = 1; i < invariant_factors.size(); ++i) {
            const Integer& prev = invariant_factors[i - 1];
            const Integer& next = invariant_factors[i];
            if (prev == 0 ? next != 0 : next % prev != 0)
                return false;
        }
        return true;
    }

    /// Same group, trivial factors dropped.
    std::vector<Integer> nontrivial_factors() const
    {
        std::vector<Integer> out;
        for (const auto& d : invariant_factors)
            if (d != 1)
                out.push_back(d);
        return out;
    }

    /// "Z/2 x Z/2", "Z", or "0" for the trivial group.
    std::string str() const
    {
        auto factors = nontrivial_factors();
        if (factors.empty())
            return "0";
        std::string out;
        for (const auto& d : factors) {
            if (!out.empty())
                out += " x ";
            out += d == 0 ? std::string("Z") : "Z/" + to_string(d);
        }
        return out;
    }

    friend bool operator==(const AbelianGroupInv& a, const AbelianGroupInv& b)
    {
        return a.nontrivial_factors() == b.nontrivial_factors();
    }
};

} // namespace nclocal
