#pragma once

#include <random>

#include "epoly/epoly.hpp"

namespace epoly::testing {

template <class K>
PointConfig<K> unit_square() {
    using st = scalar_traits<K>;
    PointConfig<K> c;
    c.dim = 2;
    K one = st::one();
    c.pts = {{one, one}, {-one, one}, {-one, -one}, {one, -one}};
    return c;
}

template <class K>
PointConfig<K> cube3() {
    using st = scalar_traits<K>;
    PointConfig<K> c;
    c.dim = 3;
    for (int v = 0; v < 8; ++v) {
        Vec<K> p;
        for (int k = 0; k < 3; ++k) p.push_back(((v >> k) & 1) ? st::one() : -st::one());
        c.pts.push_back(p);
    }
    return c;
}

inline FaceLattice square_lattice_ccw() {
    // matches unit_square vertex order
    std::vector<Bitset> facets{Bitset::of(4, {0, 1}), Bitset::of(4, {1, 2}), Bitset::of(4, {2, 3}),
                               Bitset::of(4, {3, 0})};
    return FaceLattice::from_incidence(4, facets, 2);
}

// convex hull of 2D points, indices in ccw order (testing oracle)
inline std::vector<int> hull2d(const std::vector<Vec<double>>& pts, double eps = 1e-9) {
    std::vector<int> idx;
    for (size_t i = 0; i < pts.size(); ++i) idx.push_back(int(i));
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[size_t(a)][0] != pts[size_t(b)][0]) return pts[size_t(a)][0] < pts[size_t(b)][0];
        return pts[size_t(a)][1] < pts[size_t(b)][1];
    });
    auto cross = [&](int o, int a, int b) {
        return (pts[size_t(a)][0] - pts[size_t(o)][0]) * (pts[size_t(b)][1] - pts[size_t(o)][1]) -
               (pts[size_t(a)][1] - pts[size_t(o)][1]) * (pts[size_t(b)][0] - pts[size_t(o)][0]);
    };
    std::vector<int> h;
    for (int pass = 0; pass < 2; ++pass) {
        size_t start = h.size();
        for (int i : idx) {
            while (h.size() >= start + 2 && cross(h[h.size() - 2], h.back(), i) <= eps) h.pop_back();
            h.push_back(i);
        }
        h.pop_back();
        std::reverse(idx.begin(), idx.end());
    }
    return h;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240117u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

} // namespace epoly::testing
