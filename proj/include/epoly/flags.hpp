#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace epoly {

using FVector = std::vector<long long>;  // f_0 .. f_{d-1}

// Chain counts f_S for all S subset of {0..d-1}, indexed by bitmask.
// Convention f_emptyset = 1, f_d := 1.
struct FlagVector {
    int dim = 0;
    std::vector<long long> entries;  // size 1 << dim

    long long at(uint32_t mask) const { return entries[mask]; }
};

/// Number of increasing chains with one face of dimension i for each i in S
/// (S sorted ascending, entries within 0..d-1).
inline long long flag_entry(const FaceLattice& L, const std::vector<int>& S) {
    for (size_t i = 0; i < S.size(); ++i) {
        if (S[i] < 0 || S[i] >= L.dim()) throw std::out_of_range("flag_entry: dimension out of range");
        if (i > 0 && S[i] <= S[i - 1]) throw std::invalid_argument("flag_entry: S not strictly ascending");
    }
    if (S.empty()) return 1;
    std::vector<long long> cnt(L.faces(S[0]).size(), 1);
    for (size_t lev = 1; lev < S.size(); ++lev) {
        const auto& lo = L.faces(S[lev - 1]);
        const auto& hi = L.faces(S[lev]);
        std::vector<long long> next(hi.size(), 0);
        for (size_t g = 0; g < hi.size(); ++g)
            for (size_t f = 0; f < lo.size(); ++f)
                if (lo[f].subset_of(hi[g])) next[g] += cnt[f];
        cnt = std::move(next);
    }
    long long total = 0;
    for (long long c : cnt) total += c;
    return total;
}

inline FVector f_vector(const FaceLattice& L) {
    FVector f(static_cast<size_t>(L.dim()));
    for (int k = 0; k < L.dim(); ++k) f[size_t(k)] = L.face_count(k);
    return f;
}

inline FlagVector flag_vector(const FaceLattice& L) {
    FlagVector fl;
    fl.dim = L.dim();
    fl.entries.assign(size_t(1) << fl.dim, 0);
    for (uint32_t mask = 0; mask < (uint32_t(1) << fl.dim); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < fl.dim; ++i)
            if (mask & (uint32_t(1) << i)) S.push_back(i);
        fl.entries[mask] = flag_entry(L, S);
    }
    return fl;
}

namespace detail {

// Evaluates f_(t_1..t_k) with the product-formula conventions: zero unless
// nondecreasing, adjacent duplicates collapse, an entry equal to dim is
// dropped (f_d := 1), entries outside [0, dim] give zero.
inline long long chain_index_value(const FlagVector& fl, const std::vector<int>& t) {
    uint32_t mask = 0;
    int prev = -1;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0 || t[i] > fl.dim) return 0;
        if (i > 0 && t[i] < t[i - 1]) return 0;
        if (t[i] == prev) continue;
        prev = t[i];
        if (t[i] == fl.dim) continue;
        mask |= uint32_t(1) << t[i];
    }
    return fl.at(mask);
}

inline void product_formula_rec(const FlagVector& fl0, const FlagVector& fl1, const std::vector<int>& S,
                                size_t i, std::vector<int>& u, std::vector<int>& v, long long& acc) {
    if (i == S.size()) {
        long long a = chain_index_value(fl0, u);
        if (a == 0) return;
        long long b = chain_index_value(fl1, v);
        acc += a * b;
        return;
    }
    for (int ui = 0; ui <= fl0.dim; ++ui) {
        int vi = S[i] - ui;
        if (vi < 0 || vi > fl1.dim) continue;
        u.push_back(ui);
        v.push_back(vi);
        product_formula_rec(fl0, fl1, S, i + 1, u, v, acc);
        u.pop_back();
        v.pop_back();
    }
}

} // namespace detail

/// Convolution formula for the flag vector of a product. Must agree with
/// flag_entry(product_lattice(.,.), S).
inline long long product_flag_formula(const FlagVector& fl0, const FlagVector& fl1, const std::vector<int>& S) {
    for (size_t i = 1; i < S.size(); ++i)
        if (S[i] <= S[i - 1]) throw std::invalid_argument("product_flag_formula: S not ascending");
    long long acc = 0;
    std::vector<int> u, v;
    detail::product_formula_rec(fl0, fl1, S, 0, u, v, acc);
    return acc;
}

/// Closed form for the f-vector of E(P) from the flag vector of P
/// (with f_{-1,j} := f_j). Must agree with f_vector(e_lattice(L)).
inline FVector e_fvector_formula(const FVector& f, const FlagVector& flags) {
    const int d = flags.dim;
    if (int(f.size()) != d) throw std::invalid_argument("e_fvector_formula: dimension mismatch");
    auto pair_entry = [&](int a, int b) -> long long {
        if (a < 0) return f[size_t(b)];
        return flags.at((uint32_t(1) << a) | (uint32_t(1) << b));
    };
    FVector out(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        if (k == d - 1)
            out[size_t(k)] = f[size_t(d) - 2];
        else if (k == d - 2)
            out[size_t(k)] = pair_entry(d - 3, d - 1);
        else
            out[size_t(k)] = f[size_t(k)] + pair_entry(k - 1, d - 1);
    }
    return out;
}

} // namespace epoly
