#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flags.hpp"
#include "geometry.hpp"
#include "iso.hpp"
#include "rational.hpp"

namespace epoly {

/// Fatness (f1 + f2 - 20) / (f0 + f3 - 10) of a 4-polytope f-vector.
inline Rational fatness(const FVector& f) {
    if (f.size() != 4) throw std::invalid_argument("fatness: needs a 4-polytope f-vector");
    long long den = f[0] + f[3] - 10;
    if (den == 0) throw std::domain_error("fatness: zero denominator (simplex)");
    return Rational(f[1] + f[2] - 20) / Rational(den);
}

// Vertex labeling convention of E(C_m x C_n): product vertex (v_i, w_j) has
// label n*i + j, the apex over F'_i (edge i of C_m times C_n) has label
// mn + i, the apex over F''_j has label mn + m + j.
struct EmnLabels {
    int m, n;

    int vertex(int i, int j) const { return n * mod(i, m) + mod(j, n); }
    int apex0(int i) const { return m * n + mod(i, m); }
    int apex1(int j) const { return m * n + m + mod(j, n); }
    int total() const { return m * n + m + n; }

    Bitset facet_g(int i, int j) const {  // bipyramid over edge_i x edge_j
        return Bitset::of(total(), {vertex(i, j), vertex(i + 1, j), vertex(i, j + 1), vertex(i + 1, j + 1),
                                    apex0(i), apex1(j)});
    }
    Bitset facet_gp(int i) const {  // bipyramid over vertex_i x C_n
        Bitset b(total());
        for (int j = 0; j < n; ++j) b.set(vertex(i, j));
        b.set(apex0(i - 1));
        b.set(apex0(i));
        return b;
    }
    Bitset facet_gpp(int j) const {  // bipyramid over C_m x vertex_j
        Bitset b(total());
        for (int i = 0; i < m; ++i) b.set(vertex(i, j));
        b.set(apex1(j - 1));
        b.set(apex1(j));
        return b;
    }

    static int mod(int a, int k) { return ((a % k) + k) % k; }
};

inline FaceLattice emn_lattice(int m, int n) {
    return e_lattice(product_lattice(polygon_lattice(m), polygon_lattice(n)));
}

/// The explicit self-duality of E_mn: vertex v_{ij} corresponds to facet
/// G_{-i,-j}, apex v'_i to G'_{-i}, apex v''_j to G''_{-j}; a face maps to
/// the intersection of the facets assigned to its vertices. Returns the
/// verified order-2 antiautomorphism (face ids for ranks 0..d-1; the
/// top/empty pair is implicit and marked -1).
inline FacePermutation self_duality_map(int m, int n, const FaceLattice* lattice = nullptr) {
    FaceLattice own;
    if (!lattice) {
        own = emn_lattice(m, n);
        lattice = &own;
    }
    const FaceLattice& L = *lattice;
    EmnLabels lab{m, n};
    if (L.n_vertices() != lab.total()) throw std::invalid_argument("self_duality_map: lattice is not E_mn");

    std::vector<Bitset> phi;  // facet assigned to each vertex
    for (int v = 0; v < lab.total(); ++v) {
        Bitset f(lab.total());
        if (v < m * n) {
            int i = v / n, j = v % n;
            f = lab.facet_g(-i, -j);
        } else if (v < m * n + m) {
            f = lab.facet_gp(-(v - m * n));
        } else {
            f = lab.facet_gpp(-(v - m * n - m));
        }
        if (!L.find(f)) throw std::logic_error("self_duality_map: assigned facet not in lattice");
        phi.push_back(std::move(f));
    }

    const int d = L.dim();
    FacePermutation p;
    p.kind = FacePermutation::Kind::antiautomorphism;
    p.face_map.assign(size_t(L.n_faces()), -1);
    for (int r = 0; r <= d - 1; ++r) {
        for (size_t i = 0; i < L.faces(r).size(); ++i) {
            Bitset img = Bitset::full(lab.total());
            for (int v : L.faces(r)[i].members()) img = img & phi[size_t(v)];
            auto hit = L.find(img);
            if (!hit || hit->first != d - 1 - r)
                throw std::logic_error("self_duality_map: image of a rank-" + std::to_string(r) +
                                       " face is not a rank-" + std::to_string(d - 1 - r) + " face");
            p.face_map[size_t(L.flat_id(r, int(i)))] = L.flat_id(hit->first, hit->second);
        }
    }
    // bijectivity and order 2
    std::vector<char> hitcnt(size_t(L.n_faces()), 0);
    for (int id = 0; id < L.n_faces(); ++id) {
        int im = p.face_map[size_t(id)];
        if (im < 0) continue;
        if (hitcnt[size_t(im)]++) throw std::logic_error("self_duality_map: not injective");
        if (p.face_map[size_t(im)] != id) throw std::logic_error("self_duality_map: not an involution");
    }
    return p;
}

struct RotationSymmetries {
    std::vector<int> sm, sn, t;  // vertex permutations; t = sn after sm
};

/// The combinatorial rotations of E_mn induced by shifting the vertices of
/// either polygon, verified as lattice automorphisms.
inline RotationSymmetries rotation_symmetries(int m, int n, const FaceLattice* lattice = nullptr) {
    EmnLabels lab{m, n};
    RotationSymmetries rs;
    rs.sm.resize(size_t(lab.total()));
    rs.sn.resize(size_t(lab.total()));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            rs.sm[size_t(lab.vertex(i, j))] = lab.vertex(i + 1, j);
            rs.sn[size_t(lab.vertex(i, j))] = lab.vertex(i, j + 1);
        }
    for (int i = 0; i < m; ++i) {
        rs.sm[size_t(lab.apex0(i))] = lab.apex0(i + 1);
        rs.sn[size_t(lab.apex0(i))] = lab.apex0(i);
    }
    for (int j = 0; j < n; ++j) {
        rs.sm[size_t(lab.apex1(j))] = lab.apex1(j);
        rs.sn[size_t(lab.apex1(j))] = lab.apex1(j + 1);
    }
    rs.t = compose_perms(rs.sm, rs.sn);

    FaceLattice own;
    if (!lattice) {
        own = emn_lattice(m, n);
        lattice = &own;
    }
    for (const auto* perm : {&rs.sm, &rs.sn, &rs.t})
        if (!maps_facets_to_facets(*lattice, *lattice, *perm))
            throw std::logic_error("rotation_symmetries: permutation is not a lattice automorphism");
    return rs;
}

template <class K>
struct AffineMap {
    Mat<K> matrix;       // d x d, invertible
    Vec<K> translation;  // length d

    Vec<K> apply(const Vec<K>& x) const { return vadd(matvec(matrix, x), translation); }
};

template <class K>
struct ProjectiveMap {
    Mat<K> homogeneous;  // (d+1) x (d+1), invertible, acts on (x, 1)

    // nullopt when the image would be at infinity
    std::optional<Vec<K>> apply(const Vec<K>& x) const {
        using st = scalar_traits<K>;
        Vec<K> h(x);
        h.push_back(st::one());
        Vec<K> y = matvec(homogeneous, h);
        K w = y.back();
        if (st::is_zero(w)) return std::nullopt;
        Vec<K> out(x.size());
        for (size_t i = 0; i < x.size(); ++i) out[i] = y[i] / w;
        return out;
    }
};

namespace detail {

inline void validate_perm(const std::vector<int>& perm, int n) {
    if (int(perm.size()) != n) throw std::invalid_argument("permutation has wrong length");
    std::vector<char> seen(size_t(n), 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[size_t(v)]) throw std::invalid_argument("not a permutation");
        seen[size_t(v)] = 1;
    }
}

template <class K>
struct Normalization {
    Vec<K> center;
    K scale;
};

template <class K>
Normalization<K> normalization_of(const PointConfig<K>& config) {
    using st = scalar_traits<K>;
    const int d = config.dim;
    Normalization<K> nz;
    nz.center.assign(size_t(d), st::zero());
    for (const auto& p : config.pts)
        for (int j = 0; j < d; ++j) nz.center[size_t(j)] += p[size_t(j)];
    K inv = st::one() / st::from_int(config.size());
    for (int j = 0; j < d; ++j) nz.center[size_t(j)] *= inv;
    nz.scale = st::zero();
    for (const auto& p : config.pts)
        for (int j = 0; j < d; ++j) {
            K a = st::abs(p[size_t(j)] - nz.center[size_t(j)]);
            if (a > nz.scale) nz.scale = a;
        }
    if (st::is_zero(nz.scale)) nz.scale = st::one();
    return nz;
}

template <class K>
PointConfig<K> normalized(const PointConfig<K>& config, const Normalization<K>& nz) {
    using st = scalar_traits<K>;
    PointConfig<K> out;
    out.dim = config.dim;
    K inv = st::one() / nz.scale;
    for (const auto& p : config.pts) {
        Vec<K> q(p.size());
        for (size_t j = 0; j < p.size(); ++j) q[j] = (p[j] - nz.center[j]) * inv;
        out.pts.push_back(std::move(q));
    }
    return out;
}

// rank over Z_p, p = 2^61 - 1
inline int rank_mod_p(std::vector<std::vector<uint64_t>>& rows, int cols) {
    constexpr uint64_t P = 2305843009213693951ull;
    auto mulmod = [](uint64_t a, uint64_t b) { return uint64_t((__uint128_t)a * b % P); };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (int c = 0; c < cols && rank < int(rows.size()); ++c) {
        int piv = -1;
        for (int i = rank; i < int(rows.size()); ++i)
            if (rows[size_t(i)][size_t(c)] % P != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[size_t(rank)], rows[size_t(piv)]);
        uint64_t inv = powmod(rows[size_t(rank)][size_t(c)] % P, P - 2);
        for (int i = rank + 1; i < int(rows.size()); ++i) {
            uint64_t f = mulmod(rows[size_t(i)][size_t(c)] % P, inv);
            if (!f) continue;
            for (int j = c; j < cols; ++j) {
                uint64_t sub = mulmod(f, rows[size_t(rank)][size_t(j)] % P);
                rows[size_t(i)][size_t(j)] = (rows[size_t(i)][size_t(j)] % P + P - sub) % P;
            }
        }
        ++rank;
    }
    return rank;
}

inline uint64_t rational_mod_p(const Rational& x) {
    constexpr uint64_t P = 2305843009213693951ull;
    auto mulmod = [](uint64_t a, uint64_t b) { return uint64_t((__uint128_t)a * b % P); };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    mpz_class num = x.raw().get_num(), den = x.raw().get_den();
    uint64_t nm = mpz_fdiv_ui(num.get_mpz_t(), P);
    uint64_t dm = mpz_fdiv_ui(den.get_mpz_t(), P);
    if (dm == 0) throw std::overflow_error("rational_mod_p: denominator divisible by p");
    return mulmod(nm, powmod(dm, P - 2));
}

} // namespace detail

/// Solves T(v_i) = v_{perm(i)} for an affine map; returns it iff the system
/// is consistent and the map is invertible. The configuration is centred and
/// scaled internally, so the outcome is invariant under global scaling and
/// translation.
template <class K>
std::optional<AffineMap<K>> find_affine_symmetry(const PointConfig<K>& config, const std::vector<int>& perm) {
    using st = scalar_traits<K>;
    detail::validate_perm(perm, config.size());
    const int d = config.dim;
    const int N = config.size();

    auto nz = detail::normalization_of(config);
    auto cfg = detail::normalized(config, nz);

    Mat<K> S(N, d + 1), T(N, d);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < d; ++j) S(i, j) = cfg.pts[size_t(i)][size_t(j)];
        S(i, d) = st::one();
        for (int j = 0; j < d; ++j) T(i, j) = cfg.pts[size_t(perm[size_t(i)])][size_t(j)];
    }
    auto g = gauss_solve(S, T);
    if (!g.consistent) return std::nullopt;

    AffineMap<K> map;
    map.matrix = Mat<K>(d, d);
    map.translation.assign(size_t(d), st::zero());
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) map.matrix(k, j) = g.particular(j, k);
        map.translation[size_t(k)] = g.particular(d, k);
    }

    if constexpr (!st::exact) {
        double worst = 0;
        for (int i = 0; i < N; ++i) {
            Vec<K> img = map.apply(cfg.pts[size_t(i)]);
            for (int j = 0; j < d; ++j)
                worst = std::max(worst, std::fabs(img[size_t(j)] - cfg.pts[size_t(perm[size_t(i)])][size_t(j)]));
        }
        if (worst > float_eps()) return std::nullopt;
    }
    if (st::is_zero(det(map.matrix))) return std::nullopt;

    // undo the normalization: y = M x + (scale * t + c - M c)
    Vec<K> mc = matvec(map.matrix, nz.center);
    for (int j = 0; j < d; ++j)
        map.translation[size_t(j)] = nz.scale * map.translation[size_t(j)] + nz.center[size_t(j)] - mc[size_t(j)];
    return map;
}

/// Solves M (v_i, 1) = lambda_i (v_{perm(i)}, 1) for a homogeneous matrix;
/// returns the map iff a consistent, invertible solution with all lambda_i
/// nonzero exists. The lambdas are eliminated by cross products of
/// coordinates, leaving a homogeneous linear system in the matrix entries.
template <class K>
std::optional<ProjectiveMap<K>> find_projective_symmetry(const PointConfig<K>& config,
                                                         const std::vector<int>& perm) {
    using st = scalar_traits<K>;
    detail::validate_perm(perm, config.size());
    const int d = config.dim;
    const int N = config.size();
    const int D = d + 1;
    const int vars = D * D;

    auto nz = detail::normalization_of(config);
    auto cfg = detail::normalized(config, nz);

    auto hat = [&](int i) {
        Vec<K> h = cfg.pts[size_t(i)];
        h.push_back(st::one());
        return h;
    };

    // rows of the homogeneous system over the matrix entries m_{a,b}
    auto emit_rows = [&](auto&& push) {
        for (int i = 0; i < N; ++i) {
            Vec<K> p = hat(i), q = hat(perm[size_t(i)]);
            for (int k = 0; k < D; ++k)
                for (int l = k + 1; l < D; ++l) push(p, q, k, l);
        }
    };

    if constexpr (st::exact) {
        // fast certificate of non-existence: full column rank mod a prime
        // implies a trivial rational nullspace
        std::vector<std::vector<uint64_t>> mrows;
        bool mod_ok = true;
        try {
            emit_rows([&](const Vec<K>& p, const Vec<K>& q, int k, int l) {
                std::vector<uint64_t> row(size_t(vars), 0);
                constexpr uint64_t P = 2305843009213693951ull;
                for (int b = 0; b < D; ++b) {
                    uint64_t pb = detail::rational_mod_p(p[size_t(b)]);
                    uint64_t ql = detail::rational_mod_p(q[size_t(l)]);
                    uint64_t qk = detail::rational_mod_p(q[size_t(k)]);
                    row[size_t(k * D + b)] = (row[size_t(k * D + b)] + (__uint128_t)pb * ql % P) % P;
                    row[size_t(l * D + b)] = (row[size_t(l * D + b)] + P - (__uint128_t)pb * qk % P) % P;
                }
                mrows.push_back(std::move(row));
            });
        } catch (const std::overflow_error&) {
            mod_ok = false;
        }
        if (mod_ok && detail::rank_mod_p(mrows, vars) == vars) return std::nullopt;
    }

    Mat<K> A(N * D * (D - 1) / 2, vars);
    int r = 0;
    emit_rows([&](const Vec<K>& p, const Vec<K>& q, int k, int l) {
        for (int b = 0; b < D; ++b) {
            A(r, k * D + b) += p[size_t(b)] * q[size_t(l)];
            A(r, l * D + b) -= p[size_t(b)] * q[size_t(k)];
        }
        ++r;
    });

    auto ns = nullspace_of(A);
    if (ns.empty()) return std::nullopt;

    auto candidate_ok = [&](const Vec<K>& v, Mat<K>& H) {
        H = Mat<K>(D, D);
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) H(a, b) = v[size_t(a * D + b)];
        if (st::is_zero(det(H))) return false;
        for (int i = 0; i < N; ++i) {
            Vec<K> w = matvec(H, hat(i));
            Vec<K> q = hat(perm[size_t(i)]);
            K wmax = st::zero();
            for (const K& x : w)
                if (st::abs(x) > wmax) wmax = st::abs(x);
            if (st::is_zero(wmax)) return false;  // lambda_i = 0
            if constexpr (!st::exact) {
                for (int k = 0; k < D; ++k)
                    for (int l = k + 1; l < D; ++l)
                        if (std::fabs(w[size_t(k)] * q[size_t(l)] - w[size_t(l)] * q[size_t(k)]) >
                            float_eps() * std::max(1.0, wmax))
                            return false;
            }
        }
        return true;
    };

    std::vector<Vec<K>> candidates = ns;
    for (size_t i = 0; i + 1 < ns.size() && i < 4; ++i) {
        Vec<K> s = ns[i];
        for (size_t j = 0; j < s.size(); ++j) s[j] += ns[i + 1][j];
        candidates.push_back(std::move(s));
    }

    for (const auto& v : candidates) {
        Mat<K> H;
        if (!candidate_ok(v, H)) continue;
        // undo the normalization: H_orig = C_inv H C with C: x -> (x - c)/s
        Mat<K> C(D, D), Cinv(D, D);
        for (int j = 0; j < d; ++j) {
            C(j, j) = st::one();
            C(j, d) = -nz.center[size_t(j)];
            Cinv(j, j) = nz.scale;
            Cinv(j, d) = nz.center[size_t(j)];
        }
        C(d, d) = nz.scale;
        Cinv(d, d) = st::one();
        Mat<K> Ho = matmul(Cinv, matmul(H, C));
        // canonical scale: last entry 1 when nonzero, else first nonzero entry 1
        K pivot = Ho(d, d);
        if (st::is_zero(pivot)) {
            for (int a = 0; a < D && st::is_zero(pivot); ++a)
                for (int b = 0; b < D && st::is_zero(pivot); ++b)
                    if (!st::is_zero(Ho(a, b))) pivot = Ho(a, b);
        }
        K inv = st::one() / pivot;
        for (K& x : Ho.a) x *= inv;
        ProjectiveMap<K> out;
        out.homogeneous = std::move(Ho);
        return out;
    }
    return std::nullopt;
}

struct SymmetryEntry {
    std::string name;
    std::vector<int> perm;
    bool is_lattice_automorphism = false;
    bool affine = false;
    bool projective = false;
};

struct SymmetryReport {
    std::vector<SymmetryEntry> entries;
    bool self_duality_order2 = false;  // combinatorial check only
};

/// Affine and projective realizability of the given combinatorial symmetries
/// on a concrete certified realization.
template <class K>
SymmetryReport symmetry_report(const PointConfig<K>& config, const FaceLattice& lattice,
                               const std::vector<std::pair<std::string, std::vector<int>>>& perms) {
    SymmetryReport rep;
    for (const auto& [name, perm] : perms) {
        SymmetryEntry e;
        e.name = name;
        e.perm = perm;
        e.is_lattice_automorphism = maps_facets_to_facets(lattice, lattice, perm);
        e.affine = find_affine_symmetry(config, perm).has_value();
        e.projective = e.affine || find_projective_symmetry(config, perm).has_value();
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

/// Report for an assembled E_mn realization in the standard labeling:
/// the rotations S_m, S_n, their composition T, and the combinatorial
/// self-duality (tested combinatorially only).
template <class K>
SymmetryReport emn_symmetry_report(const PointConfig<K>& config, const FaceLattice& lattice, int m, int n) {
    auto rs = rotation_symmetries(m, n, &lattice);
    auto rep = symmetry_report(config, lattice,
                               {{"S_m", rs.sm}, {"S_n", rs.sn}, {"T", rs.t}});
    try {
        self_duality_map(m, n, &lattice);
        rep.self_duality_order2 = true;
    } catch (const std::logic_error&) {
        rep.self_duality_order2 = false;
    }
    return rep;
}

} // namespace epoly
