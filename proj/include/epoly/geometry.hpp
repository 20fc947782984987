#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"

namespace epoly {

template <class K>
struct PointConfig {
    int dim = 0;
    std::vector<Vec<K>> pts;  // labels are positions 0..N-1

    int size() const { return int(pts.size()); }
    const Vec<K>& operator[](int i) const { return pts[size_t(i)]; }
};

// Points x with <normal,x> = offset lie on the plane, <normal,x> < offset is
// "beneath" (interior side). The normal is kept with |n|_inf = 1.
template <class K>
struct Hyperplane {
    Vec<K> normal;
    K offset = scalar_traits<K>::zero();

    K side(const Vec<K>& x) const { return dot(normal, x) - offset; }
    K beneath_margin(const Vec<K>& x) const { return offset - dot(normal, x); }
};

template <class K>
Vec<K> vsub(const Vec<K>& a, const Vec<K>& b) {
    Vec<K> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class K>
Vec<K> vadd(const Vec<K>& a, const Vec<K>& b) {
    Vec<K> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class K>
Vec<K> vscale(const K& c, const Vec<K>& a) {
    Vec<K> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

template <class K>
Vec<K> concat(const Vec<K>& a, const Vec<K>& b) {
    Vec<K> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

/// Solves A x = b. Returns nullopt when the system is inconsistent. For
/// underdetermined systems the float backend returns the minimum-norm
/// solution; the exact backend returns the pivot-based particular solution
/// with free variables set to zero.
template <class K>
std::optional<Vec<K>> solve_linear_system(const Mat<K>& A, const Vec<K>& b) {
    Mat<K> B(A.rows, 1);
    for (int i = 0; i < A.rows; ++i) B(i, 0) = b[i];
    auto g = gauss_solve(A, B);
    if (!g.consistent) return std::nullopt;
    Vec<K> x(A.cols);
    for (int j = 0; j < A.cols; ++j) x[j] = g.particular(j, 0);
    if constexpr (!scalar_traits<K>::exact) {
        if (!g.nullspace.empty()) {
            // project the particular solution orthogonally to the nullspace
            const int k = int(g.nullspace.size());
            Mat<K> G(k, k);
            Vec<K> rhs(k);
            for (int i = 0; i < k; ++i) {
                rhs[i] = -dot(g.nullspace[i], x);
                for (int j = 0; j < k; ++j) G(i, j) = dot(g.nullspace[i], g.nullspace[j]);
            }
            auto c = gauss_solve(G, [&] {
                Mat<K> R(k, 1);
                for (int i = 0; i < k; ++i) R(i, 0) = rhs[i];
                return R;
            }());
            if (c.consistent)
                for (int i = 0; i < k; ++i)
                    for (size_t j = 0; j < x.size(); ++j) x[j] += c.particular(i, 0) * g.nullspace[i][j];
        }
    }
    return x;
}

/// Dimension of the affine hull of the given points (0 for a single point).
template <class K>
int affine_rank(const std::vector<Vec<K>>& pts) {
    if (pts.empty()) throw std::invalid_argument("affine_rank: empty input");
    const int d = int(pts[0].size());
    Mat<K> M(int(pts.size()) - 1, d);
    for (size_t i = 1; i < pts.size(); ++i)
        for (int j = 0; j < d; ++j) M(int(i) - 1, j) = pts[i][j] - pts[0][j];
    return rank_of(M);
}

template <class K>
int affine_rank(const PointConfig<K>& config) {
    return affine_rank(config.pts);
}

template <class K>
int affine_rank(const PointConfig<K>& config, const std::vector<int>& labels) {
    std::vector<Vec<K>> sel;
    sel.reserve(labels.size());
    for (int l : labels) sel.push_back(config.pts[size_t(l)]);
    return affine_rank(sel);
}

template <class K>
void normalize_inf(Hyperplane<K>& h) {
    using st = scalar_traits<K>;
    K mx = st::zero();
    for (const K& v : h.normal)
        if (st::abs(v) > mx) mx = st::abs(v);
    if (st::is_zero(mx)) throw std::domain_error("hyperplane: zero normal");
    K inv = st::one() / mx;
    for (K& v : h.normal) v *= inv;
    h.offset *= inv;
}

/// Hyperplane through the selected points, oriented so that all remaining
/// points of the configuration are beneath or on it. Returns nullopt when
/// some remaining point lies strictly beyond on both orientations.
template <class K>
std::optional<Hyperplane<K>> supporting_hyperplane(const PointConfig<K>& config,
                                                   const std::vector<int>& face_labels) {
    using st = scalar_traits<K>;
    if (face_labels.empty()) throw std::invalid_argument("supporting_hyperplane: empty face");
    const int d = config.dim;
    const Vec<K>& p0 = config.pts[size_t(face_labels[0])];
    Mat<K> M(int(face_labels.size()) - 1, d);
    for (size_t i = 1; i < face_labels.size(); ++i)
        for (int j = 0; j < d; ++j) M(int(i) - 1, j) = config.pts[size_t(face_labels[i])][j] - p0[j];
    auto ns = nullspace_of(M);
    if (int(ns.size()) != 1)
        throw std::domain_error("supporting_hyperplane: selected points do not span a hyperplane");

    Hyperplane<K> h;
    h.normal = ns[0];
    h.offset = dot(h.normal, p0);
    normalize_inf(h);

    std::vector<char> in_face(size_t(config.size()), 0);
    for (int l : face_labels) in_face[size_t(l)] = 1;
    bool above = false, below = false;
    for (int i = 0; i < config.size(); ++i) {
        if (in_face[size_t(i)]) continue;
        K s = h.side(config.pts[size_t(i)]);
        if constexpr (st::exact) {
            if (s.sign() > 0) above = true;
            if (s.sign() < 0) below = true;
        } else {
            if (s > float_eps()) above = true;
            if (s < -float_eps()) below = true;
        }
    }
    if (above && below) return std::nullopt;
    if (above) {
        for (K& v : h.normal) v = -v;
        h.offset = -h.offset;
    }
    return h;
}

/// Fraction r in (0,1) of the segment s->v that lies inside the body bounded
/// by the given facet hyperplanes, i.e. r*|s,v| = |s,q| with q the nearest
/// boundary crossing. s must be strictly interior and v strictly beyond at
/// least one facet.
template <class K>
K segment_boundary_ratio(const Vec<K>& s, const Vec<K>& v, const std::vector<Hyperplane<K>>& facets) {
    using st = scalar_traits<K>;
    bool have = false;
    K tmin = st::one();
    for (const auto& h : facets) {
        K hs = h.side(s);
        bool interior;
        if constexpr (st::exact)
            interior = hs.sign() < 0;
        else
            interior = hs < -float_eps();
        if (!interior) throw std::domain_error("segment_boundary_ratio: s is not interior");
    }
    for (const auto& h : facets) {
        K hv = h.side(v);
        bool beyond = false;
        if constexpr (st::exact)
            beyond = hv.sign() > 0;
        else
            beyond = hv > float_eps();
        if (!beyond) continue;
        K hs = h.side(s);
        K t = -hs / (hv - hs);
        if (!have || t < tmin) {
            tmin = t;
            have = true;
        }
    }
    if (!have) throw std::domain_error("segment_boundary_ratio: v is not beyond any facet");
    return tmin;
}

/// Coordinate projection onto [lo, hi); labels are preserved.
template <class K>
PointConfig<K> project(const PointConfig<K>& config, int lo, int hi) {
    if (lo < 0 || hi > config.dim || lo >= hi) throw std::invalid_argument("project: bad range");
    PointConfig<K> out;
    out.dim = hi - lo;
    out.pts.reserve(config.pts.size());
    for (const auto& p : config.pts) out.pts.push_back(Vec<K>(p.begin() + lo, p.begin() + hi));
    return out;
}

} // namespace epoly
