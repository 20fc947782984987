#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "efactor.hpp"

namespace epoly {

// The nine intersection ratios r[x][y] in (0,1) of an E33 realization:
// x indexes the edges of the first triangle, y those of the second, and
// r[x][y] is the inside fraction (w.r.t. the first triangle) of the segment
// between the apex over edge x and the image point of the apex over edge y.
template <class K>
struct RatioMatrix {
    std::array<std::array<K, 3>, 3> r;

    K R(int x, int y) const { return r[size_t(x)][size_t(y)] / (scalar_traits<K>::one() - r[size_t(x)][size_t(y)]); }

    bool in_range() const {
        for (const auto& row : r)
            for (const K& v : row)
                if (!(v > scalar_traits<K>::zero() && v < scalar_traits<K>::one())) return false;
        return true;
    }
};

// Solution of the 18-equation system: w[x] is the image (inside the second
// triangle) of the apex over edge x of the first, wp[y] the image (inside the
// first triangle) of the apex over edge y of the second; delta/deltap are the
// offsets of the apex-carrying lines g_x / g_y in the |n|_inf = 1 edge-normal
// normalization.
template <class K>
struct TriangleSystemSolution {
    std::array<Vec<K>, 3> w;
    std::array<Vec<K>, 3> wp;
    std::array<K, 3> delta;
    std::array<K, 3> deltap;
};

enum class E33Status { feasible, infeasible, degenerate };

template <class K>
struct E33SystemResult {
    E33Status status = E33Status::infeasible;
    TriangleSystemSolution<K> solution;  // valid when feasible
    std::string witness;                 // which constraint failed otherwise
};

namespace detail {

template <class K>
bool strictly_inside(const Vec<K>& p, const std::vector<Hyperplane<K>>& planes) {
    using st = scalar_traits<K>;
    for (const auto& h : planes) {
        K s = h.side(p);
        if constexpr (st::exact) {
            if (!(s.sign() < 0)) return false;
        } else {
            if (!(s < -float_eps())) return false;
        }
    }
    return true;
}

} // namespace detail

/// Solves the square linear system (18 equations, 18 unknowns) coupling the
/// six beta-image points and six line offsets through the ratio parameters:
///   lambda_x = <n_x, wp_y> + R_xy delta_x
///   lambda_y = <n_y, w_x>  + (1/R_xy) deltap_y
/// Feasible iff the solution has all offsets positive and all image points
/// strictly inside their triangles.
template <class K>
E33SystemResult<K> solve_triangle_ratio_system(const PointConfig<K>& tri, const PointConfig<K>& tri2,
                                               const RatioMatrix<K>& ratios) {
    using st = scalar_traits<K>;
    if (tri.size() != 3 || tri2.size() != 3 || tri.dim != 2 || tri2.dim != 2)
        throw std::invalid_argument("solve_triangle_ratio_system: expects two planar triangles");
    if (affine_rank(tri) != 2 || affine_rank(tri2) != 2)
        throw std::invalid_argument("solve_triangle_ratio_system: degenerate triangle");
    if (!ratios.in_range()) throw std::domain_error("solve_triangle_ratio_system: ratios outside (0,1)");

    auto planes0 = polygon_edge_planes(tri);
    auto planes1 = polygon_edge_planes(tri2);

    // unknowns: w[0],w[1],w[2] (2 each), wp[0..2] (2 each), delta[0..2], deltap[0..2]
    auto wcol = [](int x, int c) { return 2 * x + c; };
    auto wpcol = [](int y, int c) { return 6 + 2 * y + c; };
    auto dcol = [](int x) { return 12 + x; };
    auto dpcol = [](int y) { return 15 + y; };

    Mat<K> A(18, 18);
    Mat<K> b(18, 1);
    int row = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y, ++row) {
            A(row, wpcol(y, 0)) = planes0[size_t(x)].normal[0];
            A(row, wpcol(y, 1)) = planes0[size_t(x)].normal[1];
            A(row, dcol(x)) = ratios.R(x, y);
            b(row, 0) = planes0[size_t(x)].offset;
        }
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y, ++row) {
            A(row, wcol(x, 0)) = planes1[size_t(y)].normal[0];
            A(row, wcol(x, 1)) = planes1[size_t(y)].normal[1];
            A(row, dpcol(y)) = st::one() / ratios.R(x, y);
            b(row, 0) = planes1[size_t(y)].offset;
        }

    auto g = gauss_solve(A, b);
    E33SystemResult<K> out;
    if (g.rank < 18) {
        out.status = E33Status::degenerate;
        out.witness = "system rank " + std::to_string(g.rank) + " of 18";
        return out;
    }
    if (!g.consistent) {
        out.status = E33Status::infeasible;
        out.witness = "inconsistent system";
        return out;
    }

    TriangleSystemSolution<K>& s = out.solution;
    for (int x = 0; x < 3; ++x) {
        s.w[size_t(x)] = {g.particular(wcol(x, 0), 0), g.particular(wcol(x, 1), 0)};
        s.wp[size_t(x)] = {g.particular(wpcol(x, 0), 0), g.particular(wpcol(x, 1), 0)};
        s.delta[size_t(x)] = g.particular(dcol(x), 0);
        s.deltap[size_t(x)] = g.particular(dpcol(x), 0);
    }
    for (int x = 0; x < 3; ++x) {
        bool dpos;
        if constexpr (st::exact)
            dpos = s.delta[size_t(x)].sign() > 0 && s.deltap[size_t(x)].sign() > 0;
        else
            dpos = s.delta[size_t(x)] > float_eps() && s.deltap[size_t(x)] > float_eps();
        if (!dpos) {
            out.status = E33Status::infeasible;
            out.witness = "offset " + std::to_string(x) + " not positive";
            return out;
        }
    }
    for (int x = 0; x < 3; ++x) {
        if (!detail::strictly_inside(s.w[size_t(x)], planes1)) {
            out.status = E33Status::infeasible;
            out.witness = "image point w[" + std::to_string(x) + "] not interior";
            return out;
        }
        if (!detail::strictly_inside(s.wp[size_t(x)], planes0)) {
            out.status = E33Status::infeasible;
            out.witness = "image point wp[" + std::to_string(x) + "] not interior";
            return out;
        }
    }
    out.status = E33Status::feasible;
    return out;
}

enum class Branch { plus, minus };

namespace detail {

template <class K>
K cross2(const Vec<K>& a, const Vec<K>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// Moebius transform t' = (m00 t + m01) / (m10 t + m11)
template <class K>
using Moebius = std::array<std::array<K, 2>, 2>;

template <class K>
Moebius<K> moebius_mul(const Moebius<K>& a, const Moebius<K>& b) {
    Moebius<K> c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            c[size_t(i)][size_t(j)] = a[size_t(i)][0] * b[0][size_t(j)] + a[size_t(i)][1] * b[1][size_t(j)];
    return c;
}

template <class K>
K moebius_apply(const Moebius<K>& m, const K& t) {
    using st = scalar_traits<K>;
    K den = m[1][0] * t + m[1][1];
    if (st::is_zero(den)) throw std::domain_error("circumscribe: apex at infinity");
    return (m[0][0] * t + m[0][1]) / den;
}

template <class K>
K quadratic_root(const K& a, const K& b, const K& c, Branch branch) {
    // a t^2 + b t + c = 0
    using st = scalar_traits<K>;
    if (st::is_zero(a)) {
        if (st::is_zero(b)) throw std::domain_error("circumscribe: degenerate equation");
        return -c / b;
    }
    K disc = b * b - st::from_int(4) * a * c;
    K root = st::zero();
    if constexpr (st::exact) {
        if (disc.sign() < 0) throw std::domain_error("circumscribe: deltas too large (no real solution)");
        auto r = disc.sqrt_if_square();
        if (!r) throw std::domain_error("circumscribe: discriminant is not a rational square");
        root = *r;
    } else {
        if (disc < 0) throw std::domain_error("circumscribe: deltas too large (no real solution)");
        root = std::sqrt(disc);
    }
    K two_a = st::from_int(2) * a;
    return branch == Branch::plus ? (-b + root) / two_a : (-b - root) / two_a;
}

} // namespace detail

/// Circumscribes an E-triangle about `tri`: one apex on each line parallel to
/// edge x at offset deltas[x] beyond it (offsets in the |n|_inf = 1 edge
/// normalization), such that each apex-triangle edge passes through the
/// corresponding vertex of `tri`. The two branches are the two solutions of
/// the reduced quadratic; apex k of the result lies beyond edge k.
template <class K>
PointConfig<K> circumscribe_e_triangle(const PointConfig<K>& tri, const std::array<K, 3>& deltas, Branch branch) {
    using st = scalar_traits<K>;
    if (tri.size() != 3 || tri.dim != 2) throw std::invalid_argument("circumscribe_e_triangle: not a triangle");
    for (const K& d : deltas)
        if (!(d > st::zero())) throw std::domain_error("circumscribe_e_triangle: offsets must be positive");

    auto planes = polygon_edge_planes(tri);
    // base point on g_x and direction of edge x
    std::array<Vec<K>, 3> base, dir;
    for (int x = 0; x < 3; ++x) {
        const Vec<K>& a = tri[x];
        const Vec<K>& bp = tri[(x + 1) % 3];
        const auto& n = planes[size_t(x)].normal;
        K nn = dot(n, n);
        base[size_t(x)] = {a[0] + deltas[size_t(x)] * n[0] / nn, a[1] + deltas[size_t(x)] * n[1] / nn};
        dir[size_t(x)] = {bp[0] - a[0], bp[1] - a[1]};
    }

    // edge [V_x, V_{x+1}] of the apex triangle must contain tri vertex x+1:
    // cross(V_x - A, V_{x+1} - A) = 0 is bilinear in (t_x, t_{x+1})
    std::array<detail::Moebius<K>, 3> step;
    for (int x = 0; x < 3; ++x) {
        int xn = (x + 1) % 3;
        const Vec<K>& A = tri[xn];
        Vec<K> p = vsub(base[size_t(x)], A);
        Vec<K> q = vsub(base[size_t(xn)], A);
        K alpha = detail::cross2(p, q);
        K beta = detail::cross2(dir[size_t(x)], q);
        K gamma = detail::cross2(p, dir[size_t(xn)]);
        K eta = detail::cross2(dir[size_t(x)], dir[size_t(xn)]);
        // alpha + beta t_x + gamma t_{x+1} + eta t_x t_{x+1} = 0
        step[size_t(x)] = {{{-beta, -alpha}, {eta, gamma}}};
    }
    auto M = detail::moebius_mul(step[2], detail::moebius_mul(step[1], step[0]));
    // fixed point: m10 t^2 + (m11 - m00) t - m01 = 0
    K t0 = detail::quadratic_root(M[1][0], M[1][1] - M[0][0], -M[0][1], branch);
    K t1 = detail::moebius_apply(step[0], t0);
    K t2 = detail::moebius_apply(step[1], t1);

    PointConfig<K> out;
    out.dim = 2;
    std::array<K, 3> ts{t0, t1, t2};
    for (int x = 0; x < 3; ++x)
        out.pts.push_back(vadd(base[size_t(x)], vscale(ts[size_t(x)], dir[size_t(x)])));
    return out;
}

template <class K>
K triangle_orientation(const PointConfig<K>& tri) {
    return detail::cross2(vsub(tri[1], tri[0]), vsub(tri[2], tri[0]));
}

/// Recovers the nine ratios realized by a pair of general-form factors:
/// r[x][y] = inside fraction in P0 of the segment from the apex over edge x
/// to the image of the apex over edge y.
template <class K>
RatioMatrix<K> measure_e33_ratios(const EFactor<K>& f0, const EFactor<K>& f1) {
    RatioMatrix<K> rm;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            rm.r[size_t(x)][size_t(y)] =
                segment_boundary_ratio(f1.beta[size_t(y)], f0.apexes[size_t(x)], f0.facet_planes);
    return rm;
}

template <class K>
struct E33Realization {
    EFactor<K> f0, f1;
    EProduct<K> product;
};

/// Builds a certified E33 realization with the prescribed intersection
/// ratios: solves the linear system, circumscribes both E-triangles, pairs
/// apex x with image w[x] (and apex y with wp[y]), and assembles. When no
/// branch is given, the branch whose apex triangle matches the orientation
/// of its base triangle is used.
template <class K>
E33Realization<K> e33_realization(const PointConfig<K>& tri, const PointConfig<K>& tri2,
                                  const RatioMatrix<K>& ratios, std::optional<Branch> branch0 = {},
                                  std::optional<Branch> branch1 = {}) {
    using st = scalar_traits<K>;
    auto sys = solve_triangle_ratio_system(tri, tri2, ratios);
    if (sys.status != E33Status::feasible)
        throw std::domain_error("e33_from_ratios: system " +
                                std::string(sys.status == E33Status::degenerate ? "degenerate" : "infeasible") +
                                " (" + sys.witness + ")");

    auto pick = [&](const PointConfig<K>& t, const std::array<K, 3>& ds, std::optional<Branch> br) {
        if (br) return circumscribe_e_triangle(t, ds, *br);
        auto plus = circumscribe_e_triangle(t, ds, Branch::plus);
        bool same;
        K want = triangle_orientation(t);
        K got = triangle_orientation(plus);
        if constexpr (st::exact)
            same = want.sign() == got.sign();
        else
            same = (want > 0) == (got > 0);
        return same ? plus : circumscribe_e_triangle(t, ds, Branch::minus);
    };

    EFactor<K> f0, f1;
    f0.dim = f1.dim = 2;
    f0.body = tri;
    f1.body = tri2;
    f0.lattice = polygon_lattice(3);
    f1.lattice = polygon_lattice(3);
    f0.facet_planes = polygon_edge_planes(tri);
    f1.facet_planes = polygon_edge_planes(tri2);
    f0.apexes = pick(tri, sys.solution.delta, branch0).pts;
    f1.apexes = pick(tri2, sys.solution.deltap, branch1).pts;
    f0.beta.assign(sys.solution.w.begin(), sys.solution.w.end());
    f1.beta.assign(sys.solution.wp.begin(), sys.solution.wp.end());
    validate_efactor(f0);
    validate_efactor(f1);
    E33Realization<K> out;
    out.product = assemble_e_product(f0, f1);
    out.f0 = std::move(f0);
    out.f1 = std::move(f1);
    return out;
}

template <class K>
EProduct<K> e33_from_ratios(const PointConfig<K>& tri, const PointConfig<K>& tri2, const RatioMatrix<K>& ratios,
                            std::optional<Branch> branch0 = {}, std::optional<Branch> branch1 = {}) {
    return e33_realization(tri, tri2, ratios, branch0, branch1).product;
}

} // namespace epoly
