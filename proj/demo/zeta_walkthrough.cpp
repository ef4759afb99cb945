// Walks y^2 = x^3 - x through F(p) at the first few primes and prints the
// point counts next to the K0 orders they should equal.

#include "nclocal/nclocal.hpp"

#include <iostream>

int main()
{
    using namespace nclocal;
    const auto& entry = catalog_entry(builtin_catalog(), "cm-4");
    std::cout << entry.label << "  " << entry.model.str() << "\n";

    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        auto result = localize(entry.model, p, 3);
        std::cout << "p = " << p << "  a_p = " << *result.a_p << "  L_p = " << format_matrix(*result.lp)
                  << "\n";
        for (const auto& level : result.levels) {
            std::cout << "  n = " << level.n << "  #E = " << to_string(*level.curve_count)
                      << "  K0 = " << level.k0.str();
            if (level.curve_group)
                std::cout << "  E = " << level.curve_group->str();
            std::cout << "\n";
        }
    }

    // p = 2 divides the discriminant: the model reduces to a cusp.
    auto bad = localize(entry.model, 2, 2);
    std::cout << "p = 2  " << to_string(bad.reduction.kind) << "  K0 = " << bad.levels[0].k0.str()
              << "\n";
}
