#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lattice.hpp"

namespace epoly {

// A bijection between the faces of two lattices. Automorphisms/isomorphisms
// preserve dimension and containment and are generated by a vertex
// permutation; antiautomorphisms send dim k to dim d-1-k and reverse
// containment (no vertex permutation exists for them).
struct FacePermutation {
    enum class Kind { automorphism, antiautomorphism };
    Kind kind = Kind::automorphism;
    std::vector<int> vertex_map;  // image label per vertex; empty for antiautomorphisms
    std::vector<int> face_map;    // flat face id in source -> flat face id in target
};

inline Bitset apply_perm(const Bitset& f, const std::vector<int>& perm, int n_target) {
    Bitset g(n_target);
    for (int v : f.members()) g.set(perm[size_t(v)]);
    return g;
}

/// True iff the vertex permutation maps every facet of L0 onto a facet of L1.
/// For atomic coatomic lattices this already forces a full face-lattice
/// isomorphism (faces are the intersections of facets).
inline bool maps_facets_to_facets(const FaceLattice& L0, const FaceLattice& L1, const std::vector<int>& perm) {
    std::unordered_set<Bitset, BitsetHash> tf(L1.facets().begin(), L1.facets().end());
    for (const auto& F : L0.facets())
        if (!tf.count(apply_perm(F, perm, L1.n_vertices()))) return false;
    return true;
}

inline std::optional<std::vector<int>> face_map_from_vertex_perm(const FaceLattice& L0, const FaceLattice& L1,
                                                                 const std::vector<int>& perm) {
    std::vector<int> fm;
    fm.reserve(size_t(L0.n_faces()));
    for (int r = 0; r <= L0.dim(); ++r)
        for (const auto& F : L0.faces(r)) {
            auto hit = L1.find(apply_perm(F, perm, L1.n_vertices()));
            if (!hit || hit->first != r) return std::nullopt;
            fm.push_back(L1.flat_id(hit->first, hit->second));
        }
    return fm;
}

namespace detail {

struct IsoSearch {
    const FaceLattice* L0;
    const FaceLattice* L1;
    int n = 0;
    std::vector<std::vector<int>> C0, C1;  // common-facet counts
    std::vector<std::vector<int>> sig0, sig1;
    std::vector<int> order;
    std::vector<int> map;
    std::vector<char> used;
    bool all = false;
    std::vector<std::vector<int>> found;

    static std::vector<std::vector<int>> common_counts(const FaceLattice& L) {
        int n = L.n_vertices();
        std::vector<std::vector<int>> C(size_t(n), std::vector<int>(size_t(n), 0));
        for (const auto& F : L.facets()) {
            auto mem = F.members();
            for (size_t a = 0; a < mem.size(); ++a)
                for (size_t b = 0; b < mem.size(); ++b) ++C[size_t(mem[a])][size_t(mem[b])];
        }
        return C;
    }

    static std::vector<std::vector<int>> signatures(const FaceLattice& L) {
        int n = L.n_vertices();
        std::vector<std::vector<int>> s;
        s.resize(size_t(n));
        for (const auto& F : L.facets())
            for (int v : F.members()) s[size_t(v)].push_back(F.count());
        for (auto& v : s) std::sort(v.begin(), v.end());
        return s;
    }

    void init(const FaceLattice& a, const FaceLattice& b, bool enumerate_all) {
        L0 = &a;
        L1 = &b;
        n = a.n_vertices();
        all = enumerate_all;
        C0 = common_counts(a);
        C1 = common_counts(b);
        sig0 = signatures(a);
        sig1 = signatures(b);
        map.assign(size_t(n), -1);
        used.assign(size_t(n), 0);
        // order vertices so each new one is constrained by many assigned ones
        std::vector<char> placed(size_t(n), 0);
        order.push_back(0);
        placed[0] = 1;
        while (int(order.size()) < n) {
            int best = -1, bestc = -1;
            for (int v = 0; v < n; ++v) {
                if (placed[size_t(v)]) continue;
                int c = 0;
                for (int u : order)
                    if (C0[size_t(v)][size_t(u)] > 0) ++c;
                if (c > bestc) {
                    bestc = c;
                    best = v;
                }
            }
            order.push_back(best);
            placed[size_t(best)] = 1;
        }
    }

    bool rec(size_t depth) {
        if (depth == order.size()) {
            if (maps_facets_to_facets(*L0, *L1, map)) {
                found.push_back(map);
                return !all;
            }
            return false;
        }
        int u = order[depth];
        for (int w = 0; w < n; ++w) {
            if (used[size_t(w)]) continue;
            if (sig0[size_t(u)] != sig1[size_t(w)]) continue;
            bool ok = true;
            for (size_t k = 0; k < depth && ok; ++k) {
                int u2 = order[k];
                ok = C0[size_t(u)][size_t(u2)] == C1[size_t(w)][size_t(map[size_t(u2)])];
            }
            if (!ok) continue;
            map[size_t(u)] = w;
            used[size_t(w)] = 1;
            if (rec(depth + 1)) return true;
            used[size_t(w)] = 0;
            map[size_t(u)] = -1;
        }
        return false;
    }
};

} // namespace detail

/// Dimension- and incidence-preserving bijection between two lattices, found
/// by backtracking on vertex-facet incidence; nullopt if none exists.
inline std::optional<FacePermutation> lattice_isomorphism(const FaceLattice& L0, const FaceLattice& L1) {
    if (L0.dim() != L1.dim() || L0.n_vertices() != L1.n_vertices()) return std::nullopt;
    for (int r = 0; r <= L0.dim(); ++r)
        if (L0.face_count(r) != L1.face_count(r)) return std::nullopt;
    detail::IsoSearch s;
    s.init(L0, L1, false);
    s.rec(0);
    if (s.found.empty()) return std::nullopt;
    FacePermutation p;
    p.kind = FacePermutation::Kind::automorphism;
    p.vertex_map = s.found[0];
    p.face_map = *face_map_from_vertex_perm(L0, L1, p.vertex_map);
    return p;
}

/// The full automorphism group as vertex permutations (complete enumeration;
/// intended for lattices with at most a couple hundred vertices).
inline std::vector<FacePermutation> lattice_automorphisms(const FaceLattice& L) {
    detail::IsoSearch s;
    s.init(L, L, true);
    s.rec(0);
    std::vector<FacePermutation> out;
    out.reserve(s.found.size());
    for (auto& vm : s.found) {
        FacePermutation p;
        p.kind = FacePermutation::Kind::automorphism;
        p.face_map = *face_map_from_vertex_perm(L, L, vm);
        p.vertex_map = std::move(vm);
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<int> compose_perms(const std::vector<int>& first, const std::vector<int>& then) {
    std::vector<int> r(first.size());
    for (size_t i = 0; i < first.size(); ++i) r[i] = then[size_t(first[i])];
    return r;
}

inline std::vector<int> identity_perm(int n) {
    std::vector<int> r;
    r.resize(size_t(n));
    for (int i = 0; i < n; ++i) r[size_t(i)] = i;
    return r;
}

} // namespace epoly
