#pragma once

#include <optional>

#include "e33.hpp"
#include "efactor.hpp"

namespace epoly {

enum class EmnMethod { d_polygons, regular };

/// Certified realization of E_mn = E(C_m x C_n). The d_polygons method
/// combines D(m, r) with D(n, 1-r) (triangle factors fall back to the
/// regular construction); the regular method uses regular_pair. Factors are
/// rescaled about their interior points before assembly, which keeps the
/// intersection ratios and improves the float margins.
inline EProduct<double> build_emn(int m, int n, std::optional<double> ratio = {},
                                  EmnMethod method = EmnMethod::d_polygons) {
    if (m < 3 || n < 3) throw std::invalid_argument("build_emn: m,n >= 3 required");
    if (method == EmnMethod::regular) {
        auto rp = regular_pair(m, n, ratio);
        if (!rp) throw std::domain_error("build_emn: no regular realization for this (m,n)");
        auto f0 = to_efactor(rp->first);
        auto f1 = to_efactor(rp->second);
        return assemble_e_product(f0, f1);
    }
    double r = ratio.value_or(0.5);
    auto make = [](int k, double rr) {
        return to_efactor(k >= 4 ? build_polygon_d(k, rr) : build_regular_d(3, rr));
    };
    auto f0 = make(m, r);
    auto f1 = make(n, 1.0 - r);
    normalize_factor(f0);
    normalize_factor(f1);
    return assemble_e_product(f0, f1);
}

} // namespace epoly
