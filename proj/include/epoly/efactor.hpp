#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "certify.hpp"
#include "dpolygon.hpp"
#include "flags.hpp"
#include "geometry.hpp"
#include "lattice.hpp"

namespace epoly {

// One factor of the product construction: a realized polytope P, the apexes
// of a vertex-preserving E-realization (one per facet, beyond it), and the
// data assigning each apex its point in the other factor. Constant-point
// factors carry an interior point s and the inside fraction r of all
// segments s->apex; general factors carry an explicit image per apex.
template <class K>
struct EFactor {
    int dim = 0;
    PointConfig<K> body;
    FaceLattice lattice;                      // lattice of P; facet k <-> apexes[k]
    std::vector<Vec<K>> apexes;               // apex k is beyond facet k
    std::vector<Hyperplane<K>> facet_planes;  // supporting planes of the body facets
    std::optional<Vec<K>> interior;           // s (constant-point form)
    std::optional<K> ratio;                   // r (constant-point form)
    std::vector<Vec<K>> beta;                 // per-apex image in the other factor (general form)

    bool constant_form() const { return interior.has_value(); }
    int n_apexes() const { return int(apexes.size()); }
};

template <class K>
std::vector<Hyperplane<K>> facet_planes_of(const PointConfig<K>& body, const FaceLattice& L) {
    std::vector<Hyperplane<K>> planes;
    planes.reserve(L.facets().size());
    for (const auto& F : L.facets()) {
        auto h = supporting_hyperplane(body, F.members());
        if (!h) throw std::domain_error("facet_planes_of: claimed facet is not supporting");
        planes.push_back(*h);
    }
    return planes;
}

/// Checks the vertex-preserving invariants of a factor: apex k is strictly
/// beyond facet k and strictly beneath every other facet; in constant form
/// every apex keeps the inside fraction r from s. Throws on violation.
template <class K>
void validate_efactor(const EFactor<K>& f) {
    using st = scalar_traits<K>;
    const K eps = [] {
        if constexpr (st::exact)
            return st::zero();
        else
            return float_eps();
    }();
    if (int(f.apexes.size()) != int(f.lattice.facets().size()))
        throw std::invalid_argument("validate_efactor: one apex per facet required");
    for (size_t k = 0; k < f.apexes.size(); ++k) {
        for (size_t j = 0; j < f.facet_planes.size(); ++j) {
            K s = f.facet_planes[j].side(f.apexes[k]);
            if (j == k ? !(s > eps) : !(s < -eps))
                throw std::domain_error("validate_efactor: apex " + std::to_string(k) +
                                        (j == k ? " is not beyond its facet" : " pokes beyond a foreign facet"));
        }
    }
    if (f.constant_form()) {
        for (size_t k = 0; k < f.apexes.size(); ++k) {
            K t = segment_boundary_ratio(*f.interior, f.apexes[k], f.facet_planes);
            if (st::abs(t - *f.ratio) > eps)
                throw std::domain_error("validate_efactor: apex " + std::to_string(k) + " has ratio " + st::str(t) +
                                        ", expected " + st::str(*f.ratio));
        }
    }
}

/// Wraps a D(m,r) polygon as a constant-point factor; apexes are re-matched
/// to the polygon edges geometrically.
inline EFactor<double> to_efactor(const DPolygonRealization& D) {
    EFactor<double> f;
    f.dim = 2;
    f.body = D.polygon;
    f.lattice = polygon_lattice(D.m);
    f.facet_planes = polygon_edge_planes(D.polygon);
    f.apexes.assign(size_t(D.m), {});
    for (const auto& apex : D.e_polygon.pts) {
        int beyond = -1;
        for (int k = 0; k < D.m; ++k)
            if (f.facet_planes[size_t(k)].side(apex) > float_eps()) {
                if (beyond >= 0) throw std::domain_error("to_efactor: apex beyond two edges");
                beyond = k;
            }
        if (beyond < 0) throw std::domain_error("to_efactor: apex not beyond any edge");
        f.apexes[size_t(beyond)] = apex;
    }
    f.interior = D.s;
    f.ratio = D.r;
    validate_efactor(f);
    return f;
}

/// Standard +-1 cube with apexes at +-2 e_i and s at the origin (r = 1/2).
/// Vertex label bit k encodes the sign of coordinate k.
template <class K>
EFactor<K> build_cube_factor(int d) {
    using st = scalar_traits<K>;
    if (d < 1) throw std::invalid_argument("build_cube_factor: d < 1");
    EFactor<K> f;
    f.dim = d;
    f.body.dim = d;
    for (int v = 0; v < (1 << d); ++v) {
        Vec<K> p(static_cast<size_t>(d));
        for (int k = 0; k < d; ++k) p[size_t(k)] = ((v >> k) & 1) ? st::one() : -st::one();
        f.body.pts.push_back(std::move(p));
    }
    f.lattice = cube_lattice(d);
    for (const auto& F : f.lattice.facets()) {
        // all vertices of a cube facet share one coordinate; the apex sits at
        // twice that coordinate on the axis
        int v0 = F.members()[0];
        int axis = -1, sign = 0;
        for (int k = 0; k < d; ++k) {
            bool shared = true;
            for (int v : F.members()) shared = shared && (((v >> k) & 1) == ((v0 >> k) & 1));
            if (shared) {
                axis = k;
                sign = ((v0 >> k) & 1) ? 1 : -1;
                break;
            }
        }
        if (axis < 0) throw std::logic_error("build_cube_factor: facet without a shared coordinate");
        Vec<K> a(size_t(d), st::zero());
        a[size_t(axis)] = st::from_int(2 * sign);
        f.apexes.push_back(std::move(a));
    }
    f.facet_planes = facet_planes_of(f.body, f.lattice);
    f.interior = Vec<K>(size_t(d), st::zero());
    f.ratio = st::from_fraction(1, 2);
    validate_efactor(f);
    return f;
}

namespace detail {

// Vertices of the regular d-simplex centred at the origin, circumradius 1.
inline std::vector<Vec<double>> regular_simplex_vertices(int d) {
    // start from e_0..e_d in R^{d+1}, shift by the centroid, then express in
    // an orthonormal basis of the sum-zero subspace
    std::vector<Vec<double>> shifted(size_t(d) + 1, Vec<double>(size_t(d) + 1, -1.0 / (d + 1)));
    for (int i = 0; i <= d; ++i) shifted[size_t(i)][size_t(i)] += 1.0;
    std::vector<Vec<double>> basis;
    for (int i = 0; i < d; ++i) {
        Vec<double> b = shifted[size_t(i)];
        for (const auto& q : basis) {
            double c = dot(b, q);
            for (size_t j = 0; j < b.size(); ++j) b[j] -= c * q[j];
        }
        double n = std::sqrt(dot(b, b));
        for (auto& x : b) x /= n;
        basis.push_back(std::move(b));
    }
    double scale = std::sqrt(double(d + 1) / d);  // |e_i - centroid| -> 1
    std::vector<Vec<double>> u(size_t(d) + 1, Vec<double>(size_t(d)));
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j < d; ++j) u[size_t(i)][size_t(j)] = scale * dot(shifted[size_t(i)], basis[size_t(j)]);
    return u;
}

} // namespace detail

/// Regular d-simplex with barycentre at the origin and a vertex-preserving
/// E-realization for any ratio 1/2 <= r < 1: the first apex sits at the
/// barycentre of the chosen facet of the scaled copy (1/r)*Delta, the rest
/// come from the same construction one dimension lower inside the cutting
/// hyperplane H. Facet k of the lattice is opposite vertex k.
inline EFactor<double> build_simplex_factor(int d, double r) {
    if (d < 2) throw std::invalid_argument("build_simplex_factor: d < 2");
    if (!(r >= 0.5 && r < 1.0)) throw std::domain_error("build_simplex_factor: r outside [1/2, 1)");

    EFactor<double> f;
    f.dim = d;
    f.body.dim = d;

    if (d == 2) {
        DPolygonRealization D = build_regular_d(3, r);
        f.body = D.polygon;
        f.lattice = simplex_lattice(2);
        // lattice facet k = {0,1,2} \ {k} = polygon edge k+1
        for (int k = 0; k < 3; ++k) f.apexes.push_back(D.e_polygon.pts[size_t((k + 1) % 3)]);
        f.facet_planes = facet_planes_of(f.body, f.lattice);
        f.interior = D.s;
        f.ratio = D.r;
        validate_efactor(f);
        return f;
    }

    auto u = detail::regular_simplex_vertices(d);
    f.body.pts = u;
    f.lattice = simplex_lattice(d);

    const double eta = (d - r - 2 * r * d) / (r * d * (1 + r * d));
    const double t = d * (1.0 - eta) / (d + 1);
    const double rsub = r * (1.0 - eta) / (1.0 - r * eta);

    EFactor<double> sub = build_simplex_factor(d - 1, rsub);

    // affine map of the standard (d-1)-simplex onto the H-slice of this one
    std::vector<Vec<double>> slice;
    slice.resize(size_t(d));
    for (int i = 1; i <= d; ++i)
        for (int j = 0; j < d; ++j)
            slice[size_t(i) - 1].push_back(u[0][size_t(j)] + t * (u[size_t(i)][size_t(j)] - u[0][size_t(j)]));
    Mat<double> S(d, d), U(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d - 1; ++j) S(i, j) = sub.body.pts[size_t(i)][size_t(j)];
        S(i, d - 1) = 1.0;
        for (int j = 0; j < d; ++j) U(i, j) = slice[size_t(i)][size_t(j)];
    }
    auto g = gauss_solve(S, U);
    if (!g.consistent || g.rank < d) throw std::domain_error("build_simplex_factor: degenerate slice map");
    auto lift = [&](const Vec<double>& x) {
        Vec<double> y(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            double acc = g.particular(d - 1, j);
            for (int i = 0; i < d - 1; ++i) acc += x[size_t(i)] * g.particular(i, j);
            y[size_t(j)] = acc;
        }
        return y;
    };

    f.apexes.assign(size_t(d) + 1, {});
    f.apexes[0] = vscale(-1.0 / (r * d), u[0]);  // barycentre of the scaled facet opposite u_0
    for (int j = 1; j <= d; ++j) f.apexes[size_t(j)] = lift(sub.apexes[size_t(j) - 1]);

    f.facet_planes = facet_planes_of(f.body, f.lattice);
    f.interior = Vec<double>(size_t(d), 0.0);
    f.ratio = r;
    validate_efactor(f);
    return f;
}

/// Rescales a constant-point factor about its interior point (the inside
/// fractions are invariant under this) so that coordinates stay O(1), and
/// translates s to the origin.
inline void normalize_factor(EFactor<double>& f) {
    if (!f.constant_form()) throw std::invalid_argument("normalize_factor: constant-point factors only");
    Vec<double> s = *f.interior;
    double mx = 1.0;
    auto reach = [&](const Vec<double>& p) {
        for (size_t j = 0; j < p.size(); ++j) mx = std::max(mx, std::fabs(p[j] - s[j]));
    };
    for (const auto& p : f.body.pts) reach(p);
    for (const auto& p : f.apexes) reach(p);
    auto xform = [&](Vec<double>& p) {
        for (size_t j = 0; j < p.size(); ++j) p[j] = (p[j] - s[j]) / mx;
    };
    for (auto& p : f.body.pts) xform(p);
    for (auto& p : f.apexes) xform(p);
    f.interior = Vec<double>(s.size(), 0.0);
    f.facet_planes = facet_planes_of(f.body, f.lattice);
}

template <class K>
struct ConditionBReport {
    K max_gap = scalar_traits<K>::zero();
    bool pass = false;
    int worst_apex0 = -1, worst_apex1 = -1;
};

namespace detail {

template <class K>
Vec<K> beta_image(const EFactor<K>& f, const EFactor<K>& other, int apex) {
    if (f.constant_form()) return *other.interior;
    return f.beta[size_t(apex)];
}

} // namespace detail

/// For every apex pair (v0, v1) compares the fraction of |v0, beta1(v1)|
/// outside P0 with the fraction of |v1, beta0(v0)| inside P1 and reports the
/// largest difference. Passing means the product construction applies.
template <class K>
ConditionBReport<K> check_condition_b(const EFactor<K>& f0, const EFactor<K>& f1) {
    using st = scalar_traits<K>;
    ConditionBReport<K> rep;
    for (int a0 = 0; a0 < f0.n_apexes(); ++a0) {
        Vec<K> b0 = detail::beta_image(f0, f1, a0);  // point inside P1
        for (int a1 = 0; a1 < f1.n_apexes(); ++a1) {
            Vec<K> b1 = detail::beta_image(f1, f0, a1);  // point inside P0
            K inside0 = segment_boundary_ratio(b1, f0.apexes[size_t(a0)], f0.facet_planes);
            K outside0 = st::one() - inside0;
            K inside1 = segment_boundary_ratio(b0, f1.apexes[size_t(a1)], f1.facet_planes);
            K gap = st::abs(outside0 - inside1);
            if (gap > rep.max_gap) {
                rep.max_gap = gap;
                rep.worst_apex0 = a0;
                rep.worst_apex1 = a1;
            }
        }
    }
    if constexpr (st::exact)
        rep.pass = st::is_zero(rep.max_gap);
    else
        rep.pass = rep.max_gap <= float_eps();
    return rep;
}

template <class K>
struct EProduct {
    PointConfig<K> config;
    FaceLattice lattice;
    HullCertificate<K> certificate;
    K condition_b_gap;
};

/// Assembles the E-polytope of P0 x P1 from two compatible factors:
/// points (p0,p1) for all vertex pairs, (v0, beta0(v0)) for the factor-0
/// apexes and (beta1(v1), v1) for the factor-1 apexes, claimed against
/// e_lattice(product_lattice(L0, L1)) and certified. Product vertex (i,j)
/// gets label n1*i + j, factor-0 apexes follow, then factor-1 apexes.
template <class K>
EProduct<K> assemble_e_product(const EFactor<K>& f0, const EFactor<K>& f1) {
    if (f0.dim + f1.dim < 3) throw std::invalid_argument("assemble_e_product: product dimension < 3");
    auto cb = check_condition_b(f0, f1);
    if (!cb.pass)
        throw std::domain_error("assemble_e_product: condition (B) fails with gap " +
                                scalar_traits<K>::str(cb.max_gap));

    EProduct<K> out;
    out.condition_b_gap = cb.max_gap;
    FaceLattice P = product_lattice(f0.lattice, f1.lattice);
    out.lattice = e_lattice(P);

    out.config.dim = f0.dim + f1.dim;
    for (const auto& p0 : f0.body.pts)
        for (const auto& p1 : f1.body.pts) out.config.pts.push_back(concat(p0, p1));
    for (int k = 0; k < f0.n_apexes(); ++k)
        out.config.pts.push_back(concat(f0.apexes[size_t(k)], detail::beta_image(f0, f1, k)));
    for (int k = 0; k < f1.n_apexes(); ++k)
        out.config.pts.push_back(concat(detail::beta_image(f1, f0, k), f1.apexes[size_t(k)]));

    if (out.config.size() != out.lattice.n_vertices())
        throw std::logic_error("assemble_e_product: label count mismatch");

    out.certificate = certify_realization(out.config, out.lattice);
    if (!out.certificate.certified)
        throw std::domain_error("assemble_e_product: certification failed: " + out.certificate.reason);
    return out;
}

} // namespace epoly
