#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"

namespace epoly {

// A k-gon with a distinguished interior point s and a vertex-preserving
// E-polygon such that every segment from s to an apex crosses the k-gon's
// boundary at the same fraction r (measured from s). Float backend.
struct DPolygonRealization {
    int m = 0;
    double r = 0.0;
    PointConfig<double> polygon;    // cyclic vertex order; edge k = {k, k+1 mod m}
    PointConfig<double> e_polygon;  // apex k lies beyond edge k
    Vec<double> s;
};

/// Outward-oriented supporting lines of a polygon given in cyclic order.
template <class K>
std::vector<Hyperplane<K>> polygon_edge_planes(const PointConfig<K>& poly) {
    const int m = poly.size();
    std::vector<Hyperplane<K>> out;
    out.reserve(size_t(m));
    for (int k = 0; k < m; ++k) {
        const Vec<K>& a = poly[k];
        const Vec<K>& b = poly[(k + 1) % m];
        Hyperplane<K> h;
        h.normal = {b[1] - a[1], a[0] - b[0]};  // right normal of a->b
        h.offset = dot(h.normal, a);
        const Vec<K>& c = poly[(k + 2) % m];  // any further vertex decides orientation
        if (h.side(c) > scalar_traits<K>::zero()) {
            h.normal[0] = -h.normal[0];
            h.normal[1] = -h.normal[1];
            h.offset = -h.offset;
        }
        normalize_inf(h);
        out.push_back(std::move(h));
    }
    return out;
}

namespace detail {

inline Vec<double> line_intersect_2d(const Hyperplane<double>& a, const Hyperplane<double>& b) {
    double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
    if (std::fabs(det) < 1e-14) throw std::domain_error("line_intersect_2d: parallel lines");
    return {(a.offset * b.normal[1] - b.offset * a.normal[1]) / det,
            (a.normal[0] * b.offset - b.normal[0] * a.offset) / det};
}

// Tangent to the parabola y = x^2 at abscissa a: y = 2a x - a^2.
inline Hyperplane<double> parabola_tangent(double a) {
    Hyperplane<double> h;
    h.normal = {-2.0 * a, 1.0};
    h.offset = -a * a;
    return h;
}

inline double checked_sqrt(double v, const char* where) {
    if (v < 0) throw std::domain_error(std::string(where) + ": negative discriminant");
    return std::sqrt(v);
}

} // namespace detail

/// Abscissa of the next polygon vertex on the parabola so that the apex over
/// the new edge keeps the inside fraction r from s = (0,1).
inline double d_next_abscissa(double x, double r) {
    return (x + detail::checked_sqrt((1 - r) * (2 * r + r * x * x + x * x), "d_next_abscissa")) / r;
}

/// Height of the closing top vertex over abscissa x.
inline double d_top_height(double x, double r) {
    double s = detail::checked_sqrt(x * x + 2 * r * r * x * x - 2 * r * x * x - 2 * r + 2 * r * r, "d_top_height");
    return x * (x + s - r * x) / r;
}

/// Abscissa of the apex on the horizontal top edge.
inline double d_top_apex_abscissa(double x, double r) {
    double s =
        detail::checked_sqrt(x * x + 2 * r * r * x * x - 2 * r * x * x - 2 * r + 2 * r * r, "d_top_apex_abscissa");
    return (x + s) / (2 * r);
}

/// Iterative construction of D(m,r) for m >= 4 and 0 < r < 2/3: all polygon
/// vertices except the top one lie on the parabola y = x^2, the E-polygon
/// edges are the tangents there plus the horizontal line through the top
/// vertex, and s = (0,1).
inline DPolygonRealization build_polygon_d(int m, double r) {
    if (m < 4) throw std::invalid_argument("build_polygon_d: m < 4");
    if (!(r > 0 && r < 2.0 / 3.0)) throw std::domain_error("build_polygon_d: r outside (0, 2/3)");

    std::vector<double> xs;  // plus-side abscissas, ascending
    if (m % 2 == 0) {
        xs.push_back(0.0);
        for (int k = 0; k < (m - 2) / 2; ++k) xs.push_back(d_next_abscissa(xs.back(), r));
    } else {
        xs.push_back(std::sqrt((1 - r) / (1 + r)));
        for (int k = 0; k < (m - 3) / 2; ++k) xs.push_back(d_next_abscissa(xs.back(), r));
    }
    const double a = xs.back();
    const double top = d_top_height(a, r);

    DPolygonRealization D;
    D.m = m;
    D.r = r;
    D.s = {0.0, 1.0};
    D.polygon.dim = 2;

    std::vector<Hyperplane<double>> edge_lines;  // E-polygon edge through polygon vertex k
    for (double x : xs) {
        D.polygon.pts.push_back({x, x * x});
        edge_lines.push_back(detail::parabola_tangent(x));
    }
    D.polygon.pts.push_back({0.0, top});
    {
        Hyperplane<double> h;
        h.normal = {0.0, 1.0};
        h.offset = top;
        edge_lines.push_back(h);
    }
    for (size_t i = xs.size(); i-- > (m % 2 == 0 ? 1 : 0);) {
        D.polygon.pts.push_back({-xs[i], xs[i] * xs[i]});
        edge_lines.push_back(detail::parabola_tangent(-xs[i]));
    }

    D.e_polygon.dim = 2;
    for (int k = 0; k < m; ++k)
        D.e_polygon.pts.push_back(detail::line_intersect_2d(edge_lines[size_t(k)], edge_lines[size_t((k + 1) % m)]));
    return D;
}

/// Minimum achievable inside fraction of a regular construction, attained
/// with the polygon vertices at the edge midpoints of E(C_m).
inline double regular_min_fraction(int m) {
    double c = std::cos(M_PI / m);
    return c * c;
}

/// Regular E(C_m) (circumradius 1, centred at the origin) with the C_m
/// vertices at equal parameter t along its edges; t is found by bisection so
/// that the inside fraction of the segments from the origin to the apexes
/// equals `inside_fraction`.
inline DPolygonRealization build_regular_d(int m, double inside_fraction) {
    if (m < 3) throw std::invalid_argument("build_regular_d: m < 3");
    const double fmin = regular_min_fraction(m);
    if (inside_fraction < fmin - 1e-12 || inside_fraction >= 1.0)
        throw std::domain_error("build_regular_d: fraction outside [cos^2(pi/m), 1)");
    const double target = std::max(inside_fraction, fmin);

    std::vector<Vec<double>> u;
    u.resize(size_t(m));
    for (int k = 0; k < m; ++k) u[size_t(k)] = {std::cos(2 * M_PI * k / m), std::sin(2 * M_PI * k / m)};

    auto polygon_at = [&](double t) {
        PointConfig<double> poly;
        poly.dim = 2;
        for (int k = 0; k < m; ++k) {
            const auto& a = u[size_t(k)];
            const auto& b = u[size_t((k + 1) % m)];
            poly.pts.push_back({(1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1]});
        }
        return poly;
    };
    Vec<double> origin{0.0, 0.0};
    auto fraction_at = [&](double t) {
        auto poly = polygon_at(t);
        auto planes = polygon_edge_planes(poly);
        return segment_boundary_ratio(origin, u[1], planes);
    };

    // the fraction has its quadratic minimum at t = 1/2, so snap to the exact
    // midpoint when the target is the minimum itself
    double lo = 0.5, hi = 1.0 - 1e-9;
    double t = lo;
    if (fraction_at(lo) < target - 1e-12) {
        for (int it = 0; it < 200; ++it) {
            t = 0.5 * (lo + hi);
            (fraction_at(t) < target ? lo : hi) = t;
        }
        t = 0.5 * (lo + hi);
    }

    DPolygonRealization D;
    D.m = m;
    D.polygon = polygon_at(t);
    D.e_polygon.dim = 2;
    for (int k = 0; k < m; ++k) D.e_polygon.pts.push_back(u[size_t((k + 1) % m)]);
    D.s = origin;
    D.r = fraction_at(t);
    return D;
}

struct RegularPair {
    DPolygonRealization first, second;
    double fraction;  // inside fraction of the first factor
};

/// Regular-polygon factors for E_mn. Feasible iff
/// 1 - sin^2(pi/m) <= sin^2(pi/n); the first factor gets inside fraction f,
/// the second 1-f, with f the given value or the feasible-interval midpoint.
inline std::optional<RegularPair> regular_pair(int m, int n, std::optional<double> inside_fraction_m = {}) {
    if (m < 3 || n < 3) throw std::invalid_argument("regular_pair: m,n >= 3 required");
    const double tol = float_eps();
    double lo = regular_min_fraction(m);
    double sn = std::sin(M_PI / n);
    double hi = sn * sn;  // = 1 - regular_min_fraction(n)
    if (lo > hi + tol) return std::nullopt;
    double f;
    if (inside_fraction_m) {
        f = *inside_fraction_m;
        if (f < lo - tol || f > hi + tol)
            throw std::domain_error("regular_pair: requested fraction outside the feasible interval");
    } else {
        f = 0.5 * (lo + hi);
    }
    f = std::min(std::max(f, lo), hi);
    RegularPair p;
    p.first = build_regular_d(m, f);
    p.second = build_regular_d(n, 1.0 - f);
    p.fraction = f;
    return p;
}

} // namespace epoly
