#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "efactor.hpp"

namespace epoly {

// Recovered product structure of an assembled E-polytope of two polygons,
// given only its (exact) coordinate rows: which rows are product vertices
// (v_i, w_j), which are apexes of either factor, and the induced claimed
// lattice on the row labels.
template <class K>
struct EProductStructure {
    int m = 0, n = 0;
    EFactor<K> f0, f1;           // recovered factors (general beta form)
    std::vector<int> row_of_label;  // e_lattice label -> row index
    std::vector<int> label_of_row;  // inverse
    FaceLattice claimed;            // e_lattice(C_m x C_n) relabeled to row indices
};

namespace detail {

template <class K>
struct VecLess {
    bool operator()(const Vec<K>& a, const Vec<K>& b) const {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return false;
    }
};

// Sorts 2D points in convex position counterclockwise around their centroid.
template <class K>
std::vector<int> cyclic_order(const std::vector<Vec<K>>& pts) {
    using st = scalar_traits<K>;
    const int n = int(pts.size());
    Vec<K> c{st::zero(), st::zero()};
    for (const auto& p : pts) {
        c[0] += p[0];
        c[1] += p[1];
    }
    K inv = st::one() / st::from_int(n);
    c[0] *= inv;
    c[1] *= inv;
    auto half = [&](const Vec<K>& p) {  // 0: angle in [0, pi), 1: [pi, 2 pi)
        K dy = p[1] - c[1], dx = p[0] - c[0];
        if (st::is_zero(dy)) return dx > st::zero() ? 0 : 1;
        return dy > st::zero() ? 0 : 1;
    };
    std::vector<int> idx;
    idx.resize(size_t(n));
    for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        int ha = half(pts[size_t(a)]), hb = half(pts[size_t(b)]);
        if (ha != hb) return ha < hb;
        K cr = (pts[size_t(a)][0] - c[0]) * (pts[size_t(b)][1] - c[1]) -
               (pts[size_t(a)][1] - c[1]) * (pts[size_t(b)][0] - c[0]);
        return cr > st::zero();
    });
    return idx;
}

} // namespace detail

/// Reconstructs the product/apex roles of the rows of an assembled E(C_m x
/// C_n) configuration from coordinates alone: the product rows are the pairs
/// (v, w) whose first half runs over a set V0 all of whose members share the
/// same set of second halves V1. Exact backend only.
template <class K>
EProductStructure<K> detect_e_product_structure(const PointConfig<K>& config) {
    static_assert(scalar_traits<K>::exact, "structure detection expects exact coordinates");
    if (config.dim != 4) throw std::invalid_argument("detect_e_product_structure: ambient dimension must be 4");
    const int N = config.size();

    auto first2 = [&](int row) { return Vec<K>{config.pts[size_t(row)][0], config.pts[size_t(row)][1]}; };
    auto last2 = [&](int row) { return Vec<K>{config.pts[size_t(row)][2], config.pts[size_t(row)][3]}; };

    std::map<Vec<K>, std::vector<int>, detail::VecLess<K>> by_first;
    for (int r = 0; r < N; ++r) by_first[first2(r)].push_back(r);

    // group first-halves by their (sorted) sets of second halves
    std::vector<std::pair<Vec<K>, std::vector<Vec<K>>>> groups;
    for (const auto& [v, rows] : by_first) {
        std::vector<Vec<K>> ws;
        for (int r : rows) ws.push_back(last2(r));
        std::sort(ws.begin(), ws.end(), detail::VecLess<K>{});
        groups.push_back({v, ws});
    }
    std::vector<Vec<K>> V0, V1;
    for (size_t i = 0; i < groups.size(); ++i) {
        std::vector<Vec<K>> members{groups[i].first};
        for (size_t j = 0; j < groups.size(); ++j)
            if (j != i && groups[j].second == groups[i].second) members.push_back(groups[j].first);
        if (int(members.size()) >= 3 && int(groups[i].second.size()) >= 3 &&
            int(members.size()) > int(V0.size())) {
            V0 = members;
            V1 = groups[i].second;
        }
    }
    const int m = int(V0.size()), n = int(V1.size());
    if (m < 3 || n < 3 || N != m * n + m + n)
        throw std::domain_error("detect_e_product_structure: no product structure found");

    auto ord0 = detail::cyclic_order(V0);
    auto ord1 = detail::cyclic_order(V1);

    EProductStructure<K> out;
    out.m = m;
    out.n = n;
    out.f0.dim = out.f1.dim = 2;
    out.f0.body.dim = out.f1.body.dim = 2;
    for (int i : ord0) out.f0.body.pts.push_back(V0[size_t(i)]);
    for (int j : ord1) out.f1.body.pts.push_back(V1[size_t(j)]);
    out.f0.lattice = polygon_lattice(m);
    out.f1.lattice = polygon_lattice(n);
    out.f0.facet_planes = polygon_edge_planes(out.f0.body);
    out.f1.facet_planes = polygon_edge_planes(out.f1.body);

    std::map<Vec<K>, int, detail::VecLess<K>> idx0, idx1;
    for (int i = 0; i < m; ++i) idx0[out.f0.body.pts[size_t(i)]] = i;
    for (int j = 0; j < n; ++j) idx1[out.f1.body.pts[size_t(j)]] = j;

    out.row_of_label.assign(size_t(m * n + m + n), -1);
    out.f0.apexes.assign(size_t(m), {});
    out.f0.beta.assign(size_t(m), {});
    out.f1.apexes.assign(size_t(n), {});
    out.f1.beta.assign(size_t(n), {});

    auto beyond_edge = [&](const std::vector<Hyperplane<K>>& planes, const Vec<K>& p) {
        int beyond = -1;
        for (size_t k = 0; k < planes.size(); ++k) {
            if (planes[k].side(p).sign() > 0) {
                if (beyond >= 0) return -2;  // beyond two edges: not an apex
                beyond = int(k);
            }
        }
        return beyond;
    };

    for (int r = 0; r < N; ++r) {
        Vec<K> a = first2(r), b = last2(r);
        auto i0 = idx0.find(a);
        auto j1 = idx1.find(b);
        if (i0 != idx0.end() && j1 != idx1.end()) {
            out.row_of_label[size_t(n * i0->second + j1->second)] = r;
            continue;
        }
        int e0 = beyond_edge(out.f0.facet_planes, a);
        int e1 = beyond_edge(out.f1.facet_planes, b);
        if (e0 >= 0 && e1 == -1) {  // factor-0 apex with image b inside P1
            out.f0.apexes[size_t(e0)] = a;
            out.f0.beta[size_t(e0)] = b;
            out.row_of_label[size_t(m * n + e0)] = r;
        } else if (e1 >= 0 && e0 == -1) {
            out.f1.apexes[size_t(e1)] = b;
            out.f1.beta[size_t(e1)] = a;
            out.row_of_label[size_t(m * n + m + e1)] = r;
        } else {
            throw std::domain_error("detect_e_product_structure: row " + std::to_string(r) +
                                    " fits neither a product vertex nor an apex");
        }
    }
    for (int l = 0; l < N; ++l)
        if (out.row_of_label[size_t(l)] < 0)
            throw std::domain_error("detect_e_product_structure: missing label " + std::to_string(l));

    out.label_of_row.assign(size_t(N), -1);
    for (int l = 0; l < N; ++l) out.label_of_row[size_t(out.row_of_label[size_t(l)])] = l;

    FaceLattice E = e_lattice(product_lattice(out.f0.lattice, out.f1.lattice));
    out.claimed = E.relabel(out.row_of_label);
    validate_efactor(out.f0);
    validate_efactor(out.f1);
    return out;
}

} // namespace epoly
