#pragma once

#include <deque>
#include <sstream>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "lattice.hpp"

namespace epoly {

template <class K>
struct FacetEvidence {
    Hyperplane<K> plane;
    K min_margin;    // smallest strict-beneath margin over the non-facet points
    K max_residual;  // largest on-plane residual over the facet points
};

// Per-facet supporting-hyperplane evidence that a point configuration
// realizes a claimed lattice. In the exact backend a certificate is a proof;
// in the float backend it is a numerical certificate at tolerance eps.
template <class K>
struct HullCertificate {
    bool certified = false;
    std::string reason;  // empty when certified
    std::vector<FacetEvidence<K>> facet_evidence;
    K global_min_margin = scalar_traits<K>::zero();
    K global_max_residual = scalar_traits<K>::zero();
    static constexpr bool exact_backend = scalar_traits<K>::exact;
};

/// Certifies that the convex hull of `config` realizes the claimed lattice:
/// every claimed facet spans a supporting hyperplane whose on-plane points
/// are exactly the facet's vertices (residual <= eps), all other points are
/// strictly beneath (margin > eps), every claimed ridge lies in exactly two
/// claimed facets, and the facet-ridge graph is connected.
template <class K>
HullCertificate<K> certify_realization(const PointConfig<K>& config, const FaceLattice& claimed) {
    using st = scalar_traits<K>;
    if (claimed.n_vertices() != config.size())
        throw std::invalid_argument("certify_realization: label count mismatch");
    if (claimed.dim() != config.dim)
        throw std::invalid_argument("certify_realization: dimension mismatch");

    const int d = config.dim;
    HullCertificate<K> cert;
    auto fail = [&](const std::string& why) {
        cert.certified = false;
        cert.reason = why;
        return cert;
    };

    if (affine_rank(config) != d) return fail("configuration is not full-dimensional");

    const K eps = [] {
        if constexpr (st::exact)
            return st::zero();
        else
            return float_eps();
    }();

    bool first = true;
    for (size_t fi = 0; fi < claimed.facets().size(); ++fi) {
        const Bitset& F = claimed.facets()[fi];
        auto mem = F.members();
        if (int(mem.size()) < d) return fail("facet " + std::to_string(fi) + " has too few vertices");

        Mat<K> M(int(mem.size()) - 1, d);
        for (size_t i = 1; i < mem.size(); ++i)
            for (int j = 0; j < d; ++j)
                M(int(i) - 1, j) = config.pts[size_t(mem[i])][j] - config.pts[size_t(mem[0])][j];
        auto ns = nullspace_of(M);
        if (ns.size() != 1)
            return fail("facet " + std::to_string(fi) +
                        (ns.empty() ? " is not flat (affine rank d)" : " is degenerate (affine rank < d-1)"));

        Hyperplane<K> h;
        h.normal = ns[0];
        h.offset = dot(h.normal, config.pts[size_t(mem[0])]);
        normalize_inf(h);

        bool above = false, below = false;
        for (int i = 0; i < config.size(); ++i) {
            if (F.test(i)) continue;
            K s = h.side(config.pts[size_t(i)]);
            if (s > eps) above = true;
            if (s < -eps) below = true;
        }
        if (above && below)
            return fail("facet " + std::to_string(fi) + " is not supporting (points on both sides)");
        if (above) {
            for (K& v : h.normal) v = -v;
            h.offset = -h.offset;
        }

        FacetEvidence<K> ev;
        ev.plane = h;
        ev.max_residual = st::zero();
        for (int v : mem) {
            K r = st::abs(h.side(config.pts[size_t(v)]));
            if (r > ev.max_residual) ev.max_residual = r;
        }
        if (ev.max_residual > eps)
            return fail("facet " + std::to_string(fi) + " vertices are not coplanar (residual " +
                        st::str(ev.max_residual) + ")");

        bool have_margin = false;
        int worst_label = -1;
        ev.min_margin = st::zero();
        for (int i = 0; i < config.size(); ++i) {
            if (F.test(i)) continue;
            K m = h.beneath_margin(config.pts[size_t(i)]);
            if (!have_margin || m < ev.min_margin) {
                ev.min_margin = m;
                worst_label = i;
                have_margin = true;
            }
        }
        if (have_margin && !(ev.min_margin > eps)) {
            std::ostringstream os;
            os << "point " << worst_label << " is not strictly beneath facet " << fi << " (margin "
               << st::str(ev.min_margin) << ")";
            return fail(os.str());
        }

        if (first || ev.min_margin < cert.global_min_margin) cert.global_min_margin = ev.min_margin;
        if (ev.max_residual > cert.global_max_residual) cert.global_max_residual = ev.max_residual;
        first = false;
        cert.facet_evidence.push_back(std::move(ev));
    }

    if (d >= 2) {
        const auto& ridges = claimed.ridges();
        const auto& facets = claimed.facets();
        std::vector<std::vector<int>> ridge_facets(ridges.size());
        for (size_t ri = 0; ri < ridges.size(); ++ri) {
            for (size_t fi = 0; fi < facets.size(); ++fi)
                if (ridges[ri].subset_of(facets[fi])) ridge_facets[ri].push_back(int(fi));
            if (ridge_facets[ri].size() != 2)
                return fail("ridge " + std::to_string(ri) + " lies in " +
                            std::to_string(ridge_facets[ri].size()) + " facets, expected 2");
        }
        std::vector<char> seen(facets.size(), 0);
        std::deque<int> work{0};
        seen[0] = 1;
        int reached = 1;
        while (!work.empty()) {
            int f = work.front();
            work.pop_front();
            for (const auto& rf : ridge_facets) {
                if (rf[0] != f && rf[1] != f) continue;
                int g = rf[0] == f ? rf[1] : rf[0];
                if (!seen[size_t(g)]) {
                    seen[size_t(g)] = 1;
                    ++reached;
                    work.push_back(g);
                }
            }
        }
        if (reached != int(facets.size())) return fail("facet-ridge graph is not connected");
    }

    cert.certified = true;
    return cert;
}

} // namespace epoly
