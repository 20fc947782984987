#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitset.hpp"

namespace epoly {

struct LatticeError : std::runtime_error {
    explicit LatticeError(const std::string& m) : std::runtime_error(m) {}
};

// Graded face lattice of a polytope (or polytopal-like CW sphere), stored as
// vertex sets per rank. Rank 0 holds the atoms {i} sorted by label, rank dim
// the full vertex set; the empty face is implicit. Faces are joins of their
// atoms, so equality of faces is equality of vertex sets.
class FaceLattice {
public:
    int dim() const { return dim_; }
    int n_vertices() const { return n_; }

    const std::vector<Bitset>& faces(int rank) const { return faces_[size_t(rank)]; }
    const std::vector<Bitset>& facets() const { return faces_[size_t(dim_ - 1)]; }
    const std::vector<Bitset>& ridges() const { return faces_[size_t(dim_ - 2)]; }
    long long face_count(int rank) const { return (long long)faces_[size_t(rank)].size(); }

    int n_faces() const {
        int t = 0;
        for (const auto& fs : faces_) t += int(fs.size());
        return t;
    }
    int flat_id(int rank, int idx) const { return offset_[size_t(rank)] + idx; }
    std::pair<int, int> from_flat(int id) const {
        int r = 0;
        while (r + 1 <= dim_ && offset_[size_t(r) + 1] <= id) ++r;
        return {r, id - offset_[size_t(r)]};
    }
    const Bitset& face_by_flat(int id) const {
        auto [r, i] = from_flat(id);
        return faces_[size_t(r)][size_t(i)];
    }

    // (rank, index) of a face given by its vertex set
    std::optional<std::pair<int, int>> find(const Bitset& f) const {
        auto it = index_.find(f);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Closure of vertex-facet incidences under intersection, graded by
    /// longest chains. Throws LatticeError when the result is not atomic or
    /// not graded. Facets keep their input order.
    static FaceLattice from_incidence(int n_vertices, const std::vector<Bitset>& facet_sets,
                                      int expected_dim = -1);

    /// Builds a lattice from an explicit graded face list (rank 0..d).
    /// Atoms are re-sorted by label; other ranks keep the given order.
    static FaceLattice from_graded(int n_vertices, std::vector<std::vector<Bitset>> faces);

    /// Same lattice with vertex labels renamed by perm (perm[old] = new).
    FaceLattice relabel(const std::vector<int>& perm) const;

private:
    void build_index() {
        offset_.assign(size_t(dim_) + 2, 0);
        for (int r = 0; r <= dim_; ++r) offset_[size_t(r) + 1] = offset_[size_t(r)] + int(faces_[size_t(r)].size());
        index_.clear();
        for (int r = 0; r <= dim_; ++r)
            for (size_t i = 0; i < faces_[size_t(r)].size(); ++i) index_[faces_[size_t(r)][i]] = {r, int(i)};
    }

    int dim_ = -1;
    int n_ = 0;
    std::vector<std::vector<Bitset>> faces_;
    std::vector<int> offset_;
    std::unordered_map<Bitset, std::pair<int, int>, BitsetHash> index_;
};

inline FaceLattice FaceLattice::from_graded(int n_vertices, std::vector<std::vector<Bitset>> faces) {
    FaceLattice L;
    L.n_ = n_vertices;
    L.dim_ = int(faces.size()) - 1;
    std::sort(faces[0].begin(), faces[0].end(), [](const Bitset& a, const Bitset& b) {
        return a.members()[0] < b.members()[0];
    });
    L.faces_ = std::move(faces);
    L.build_index();
    return L;
}

inline FaceLattice FaceLattice::from_incidence(int n_vertices, const std::vector<Bitset>& facet_sets,
                                               int expected_dim) {
    if (facet_sets.empty()) throw LatticeError("from_incidence: no facets");
    std::unordered_map<Bitset, int, BitsetHash> seen;  // face -> discovery id (-1 top)
    std::vector<Bitset> all;
    for (const auto& f : facet_sets) {
        if (f.empty()) throw LatticeError("from_incidence: empty facet");
        if (seen.count(f)) throw LatticeError("from_incidence: duplicate facet");
        seen[f] = int(all.size());
        all.push_back(f);
    }
    const int n_facets = int(all.size());

    std::deque<Bitset> work(all.begin(), all.end());
    while (!work.empty()) {
        Bitset f = std::move(work.front());
        work.pop_front();
        for (const auto& g : facet_sets) {
            Bitset i = f & g;
            if (i.empty() || seen.count(i)) continue;
            seen[i] = int(all.size());
            all.push_back(i);
            work.push_back(i);
        }
    }
    Bitset top = Bitset::full(n_vertices);
    if (!seen.count(top)) {
        seen[top] = int(all.size());
        all.push_back(top);
    }

    // rank = longest chain from below
    const int nf = int(all.size());
    std::vector<int> order(static_cast<size_t>(nf));
    for (int i = 0; i < nf; ++i) order[size_t(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int ca = all[size_t(a)].count(), cb = all[size_t(b)].count();
        if (ca != cb) return ca < cb;
        return all[size_t(a)] < all[size_t(b)];
    });
    std::vector<int> rank(size_t(nf), 0);
    std::vector<std::vector<int>> subfaces(static_cast<size_t>(nf));  // indices into `all`, strict
    for (size_t oi = 0; oi < order.size(); ++oi) {
        int f = order[oi];
        int r = 0;
        for (size_t oj = 0; oj < oi; ++oj) {
            int g = order[oj];
            if (all[size_t(g)].count() < all[size_t(f)].count() && all[size_t(g)].subset_of(all[size_t(f)])) {
                subfaces[size_t(f)].push_back(g);
                r = std::max(r, rank[size_t(g)] + 1);
            }
        }
        rank[size_t(f)] = r;
    }

    const int d = rank[size_t(seen[top])];
    if (expected_dim >= 0 && d != expected_dim)
        throw LatticeError("from_incidence: rank of top is " + std::to_string(d) + ", expected " +
                           std::to_string(expected_dim));

    // atomicity: every vertex present as a rank-0 singleton
    std::vector<char> atom_seen(size_t(n_vertices), 0);
    for (int f = 0; f < nf; ++f)
        if (rank[size_t(f)] == 0) {
            if (all[size_t(f)].count() != 1) throw LatticeError("from_incidence: rank-0 face is not a vertex");
            atom_seen[size_t(all[size_t(f)].members()[0])] = 1;
        }
    for (int v = 0; v < n_vertices; ++v)
        if (!atom_seen[size_t(v)])
            throw LatticeError("from_incidence: vertex " + std::to_string(v) + " is not an atom");

    // gradedness: every proper subface is below some child of rank r-1
    for (int f = 0; f < nf; ++f) {
        int r = rank[size_t(f)];
        if (r == 0) continue;
        std::vector<int> children;
        for (int g : subfaces[size_t(f)])
            if (rank[size_t(g)] == r - 1) children.push_back(g);
        for (int g : subfaces[size_t(f)]) {
            if (rank[size_t(g)] >= r - 1) continue;
            bool covered = false;
            for (int c : children)
                if (all[size_t(g)].subset_of(all[size_t(c)])) {
                    covered = true;
                    break;
                }
            if (!covered) throw LatticeError("from_incidence: not graded (chain gap below a face)");
        }
    }

    std::vector<std::vector<Bitset>> by_rank(size_t(d) + 1);
    for (int oi = 0; oi < nf; ++oi) {
        int f = order[size_t(oi)];
        if (rank[size_t(f)] == d - 1) {
            if (f >= n_facets) throw LatticeError("from_incidence: coatom is not an input facet");
            continue;
        }
        by_rank[size_t(rank[size_t(f)])].push_back(all[size_t(f)]);
    }
    for (const auto& f : facet_sets) {
        if (rank[size_t(seen[f])] != d - 1)
            throw LatticeError("from_incidence: an input facet is not maximal");
        by_rank[size_t(d) - 1].push_back(f);
    }
    if (int(by_rank[size_t(d) - 1].size()) != n_facets)
        throw LatticeError("from_incidence: facet rank mismatch");

    return from_graded(n_vertices, std::move(by_rank));
}

inline FaceLattice FaceLattice::relabel(const std::vector<int>& perm) const {
    std::vector<std::vector<Bitset>> out(size_t(dim_) + 1);
    for (int r = 0; r <= dim_; ++r)
        for (const auto& f : faces_[size_t(r)]) {
            Bitset g(n_);
            for (int v : f.members()) g.set(perm[size_t(v)]);
            out[size_t(r)].push_back(g);
        }
    return from_graded(n_, std::move(out));
}

/// m-gon with vertices numbered consecutively; edge i = {i, i+1 mod m}.
inline FaceLattice polygon_lattice(int m) {
    if (m < 3) throw LatticeError("polygon_lattice: m < 3");
    std::vector<std::vector<Bitset>> faces(3);
    for (int i = 0; i < m; ++i) faces[0].push_back(Bitset::of(m, {i}));
    for (int i = 0; i < m; ++i) faces[1].push_back(Bitset::of(m, {i, (i + 1) % m}));
    faces[2].push_back(Bitset::full(m));
    return FaceLattice::from_graded(m, std::move(faces));
}

inline FaceLattice segment_lattice() {
    std::vector<std::vector<Bitset>> faces(2);
    faces[0] = {Bitset::of(2, {0}), Bitset::of(2, {1})};
    faces[1] = {Bitset::full(2)};
    return FaceLattice::from_graded(2, std::move(faces));
}

/// d-simplex; facet k is the face opposite vertex k.
inline FaceLattice simplex_lattice(int d) {
    if (d < 1) throw LatticeError("simplex_lattice: d < 1");
    const int n = d + 1;
    std::vector<Bitset> facets;
    for (int k = 0; k < n; ++k) {
        Bitset f = Bitset::full(n);
        f.reset(k);
        facets.push_back(f);
    }
    return FaceLattice::from_incidence(n, facets, d);
}

/// d-cube on vertex labels whose bit k encodes the sign of coordinate k
/// (bit set = +1). Facet 2k is {x_k = +1}, facet 2k+1 is {x_k = -1}.
inline FaceLattice cube_lattice(int d) {
    if (d < 1) throw LatticeError("cube_lattice: d < 1");
    const int n = 1 << d;
    std::vector<Bitset> facets;
    for (int k = 0; k < d; ++k)
        for (int sign = 1; sign >= 0; --sign) {
            Bitset f(n);
            for (int v = 0; v < n; ++v)
                if (((v >> k) & 1) == sign) f.set(v);
            facets.push_back(f);
        }
    return FaceLattice::from_incidence(n, facets, d);
}

/// Product lattice: faces are pairs (F,G) of nonempty faces with
/// dim = dim F + dim G; vertex (v,w) gets label n1*v + w (row-major).
/// Facets come in factor-0-first order: (facet_i, top1) then (top0, facet_j).
inline FaceLattice product_lattice(const FaceLattice& L0, const FaceLattice& L1) {
    const int d0 = L0.dim(), d1 = L1.dim();
    const int n0 = L0.n_vertices(), n1 = L1.n_vertices();
    const int n = n0 * n1;
    std::vector<std::vector<Bitset>> faces(size_t(d0 + d1) + 1);
    for (int k = 0; k <= d0 + d1; ++k)
        for (int ka = std::max(0, k - d1); ka <= std::min(d0, k); ++ka)
            for (const auto& A : L0.faces(ka))
                for (const auto& B : L1.faces(k - ka)) {
                    Bitset f(n);
                    for (int a : A.members())
                        for (int b : B.members()) f.set(n1 * a + b);
                    faces[size_t(k)].push_back(f);
                }
    return FaceLattice::from_graded(n, std::move(faces));
}

/// E-construction (parameter t = d-2): stellar subdivision of all facets
/// followed by merging across ridges. For d >= 3 the vertices are the old
/// vertices plus one apex per facet (apex of facet k gets label n+k) and the
/// facets are bipyramids over the ridges of P, in ridge order. For d = 2 the
/// result is the polygon on the apex labels: edge k of E corresponds to old
/// vertex k and joins the apexes of the two old edges at that vertex.
inline FaceLattice e_lattice(const FaceLattice& L) {
    const int d = L.dim();
    if (d < 2) throw LatticeError("e_lattice: dim < 2");
    const int n = L.n_vertices();
    const int nf = int(L.facets().size());

    if (d == 2) {
        std::vector<std::vector<Bitset>> faces(3);
        for (int e = 0; e < nf; ++e) faces[0].push_back(Bitset::of(nf, {e}));
        for (int v = 0; v < n; ++v) {
            std::vector<int> at;
            for (int e = 0; e < nf; ++e)
                if (L.facets()[size_t(e)].test(v)) at.push_back(e);
            if (at.size() != 2) throw LatticeError("e_lattice: polygon vertex not on 2 edges");
            faces[1].push_back(Bitset::of(nf, at));
        }
        faces[2].push_back(Bitset::full(nf));
        return FaceLattice::from_graded(nf, std::move(faces));
    }

    std::vector<Bitset> efacets;
    for (const auto& R : L.ridges()) {
        std::vector<int> at;
        for (int f = 0; f < nf; ++f)
            if (R.subset_of(L.facets()[size_t(f)])) at.push_back(f);
        if (at.size() != 2) throw LatticeError("e_lattice: ridge not in exactly 2 facets");
        Bitset ef(n + nf);
        for (int v : R.members()) ef.set(v);
        ef.set(n + at[0]);
        ef.set(n + at[1]);
        efacets.push_back(ef);
    }
    return FaceLattice::from_incidence(n + nf, efacets, d);
}

/// Order-reversed lattice. Facets of L become the atoms, labeled 0..nf-1 in
/// input facet order; the dual face of F is the set of facets containing F.
inline FaceLattice dual_lattice(const FaceLattice& L) {
    const int d = L.dim();
    const int nf = int(L.facets().size());
    std::vector<std::vector<Bitset>> faces(size_t(d) + 1);
    for (int r = 0; r <= d - 1; ++r)
        for (const auto& F : L.faces(r)) {
            Bitset g(nf);
            for (int f = 0; f < nf; ++f)
                if (F.subset_of(L.facets()[size_t(f)])) g.set(f);
            faces[size_t(d - 1 - r)].push_back(g);
        }
    faces[size_t(d)].push_back(Bitset::full(nf));
    return FaceLattice::from_graded(nf, std::move(faces));
}

/// 2-simple 2-simplicial test for 4-dimensional lattices: every 2-face is a
/// triangle and every edge lies in exactly 3 facets.
inline bool check_2s2s(const FaceLattice& L) {
    if (L.dim() != 4) throw LatticeError("check_2s2s: dim != 4");
    for (const auto& f : L.faces(2))
        if (f.count() != 3) return false;
    for (const auto& e : L.faces(1)) {
        int c = 0;
        for (const auto& F : L.facets())
            if (e.subset_of(F)) ++c;
        if (c != 3) return false;
    }
    return true;
}

} // namespace epoly
