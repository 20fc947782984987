#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace epoly {

template <class K>
using Vec = std::vector<K>;

template <class K>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<K> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), scalar_traits<K>::zero()) {}

    K& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const K& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<K>::one();
        return m;
    }
};

template <class K>
K dot(const Vec<K>& a, const Vec<K>& b) {
    K s = scalar_traits<K>::zero();
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class K>
Vec<K> matvec(const Mat<K>& m, const Vec<K>& x) {
    Vec<K> y(m.rows, scalar_traits<K>::zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) y[i] += m(i, j) * x[j];
    return y;
}

template <class K>
Mat<K> matmul(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const K& v = a(i, k);
            if (scalar_traits<K>::is_zero(v)) continue;
            for (int j = 0; j < b.cols; ++j) c(i, j) += v * b(k, j);
        }
    return c;
}

template <class K>
struct GaussResult {
    int rank = 0;
    bool consistent = true;          // all rhs columns consistent
    Mat<K> particular;               // one solution per rhs column; free variables zero
    std::vector<Vec<K>> nullspace;   // basis of the homogeneous solutions
};

// Gauss-Jordan elimination with full pivoting (float) / first-nonzero pivoting
// (exact). Solves A x = b for every column b of B simultaneously.
template <class K>
GaussResult<K> gauss_solve(Mat<K> A, Mat<K> B) {
    using st = scalar_traits<K>;
    const int r = A.rows, n = A.cols, m = B.cols;
    if (B.rows != r) throw std::invalid_argument("gauss_solve: shape mismatch");

    K amax = st::one();
    if constexpr (!st::exact) {
        double mx = 1.0;
        for (const K& v : A.a) mx = std::max(mx, std::fabs(v));
        for (const K& v : B.a) mx = std::max(mx, std::fabs(v));
        amax = mx;
    }
    auto negligible = [&](const K& v) {
        if constexpr (st::exact)
            return st::is_zero(v);
        else
            return st::abs(v) <= float_eps() * amax;
    };

    std::vector<int> pivot_col_of_row;
    std::vector<char> col_used(n, 0);

    for (int step = 0; step < std::min(r, n); ++step) {
        int pi = -1, pj = -1;
        if constexpr (st::exact) {
            for (int j = 0; j < n && pi < 0; ++j) {
                if (col_used[j]) continue;
                for (int i = step; i < r; ++i)
                    if (!st::is_zero(A(i, j))) {
                        pi = i;
                        pj = j;
                        break;
                    }
            }
        } else {
            K best = st::zero();
            for (int j = 0; j < n; ++j) {
                if (col_used[j]) continue;
                for (int i = step; i < r; ++i)
                    if (st::abs(A(i, j)) > best) {
                        best = st::abs(A(i, j));
                        pi = i;
                        pj = j;
                    }
            }
            if (pi >= 0 && negligible(A(pi, pj))) pi = -1;
        }
        if (pi < 0) break;

        if (pi != step) {
            for (int j = 0; j < n; ++j) std::swap(A(step, j), A(pi, j));
            for (int j = 0; j < m; ++j) std::swap(B(step, j), B(pi, j));
        }
        col_used[pj] = 1;
        pivot_col_of_row.push_back(pj);

        K inv = st::one() / A(step, pj);
        for (int j = 0; j < n; ++j) A(step, j) *= inv;
        for (int j = 0; j < m; ++j) B(step, j) *= inv;
        A(step, pj) = st::one();

        for (int i = 0; i < r; ++i) {
            if (i == step) continue;
            K f = A(i, pj);
            if (st::is_zero(f)) continue;
            for (int j = 0; j < n; ++j) A(i, j) -= f * A(step, j);
            for (int j = 0; j < m; ++j) B(i, j) -= f * B(step, j);
            A(i, pj) = st::zero();
        }
    }

    GaussResult<K> out;
    out.rank = int(pivot_col_of_row.size());
    for (int i = out.rank; i < r; ++i)
        for (int j = 0; j < m; ++j)
            if (!negligible(B(i, j))) out.consistent = false;

    out.particular = Mat<K>(n, m);
    if (out.consistent)
        for (int s = 0; s < out.rank; ++s)
            for (int j = 0; j < m; ++j) out.particular(pivot_col_of_row[s], j) = B(s, j);

    for (int f = 0; f < n; ++f) {
        if (col_used[f]) continue;
        Vec<K> v(n, st::zero());
        v[f] = st::one();
        for (int s = 0; s < out.rank; ++s) v[pivot_col_of_row[s]] = -A(s, f);
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

template <class K>
int rank_of(const Mat<K>& A) {
    return gauss_solve(A, Mat<K>(A.rows, 0)).rank;
}

template <class K>
std::vector<Vec<K>> nullspace_of(const Mat<K>& A) {
    return gauss_solve(A, Mat<K>(A.rows, 0)).nullspace;
}

// Determinant by elimination (partial pivoting in the float backend).
template <class K>
K det(Mat<K> A) {
    using st = scalar_traits<K>;
    if (A.rows != A.cols) throw std::invalid_argument("det: not square");
    const int n = A.rows;
    K d = st::one();
    for (int s = 0; s < n; ++s) {
        int pi = -1;
        if constexpr (st::exact) {
            for (int i = s; i < n; ++i)
                if (!st::is_zero(A(i, s))) {
                    pi = i;
                    break;
                }
        } else {
            K best = st::zero();
            for (int i = s; i < n; ++i)
                if (st::abs(A(i, s)) > best) {
                    best = st::abs(A(i, s));
                    pi = i;
                }
        }
        if (pi < 0 || st::is_zero(A(pi, s))) return st::zero();
        if (pi != s) {
            for (int j = 0; j < n; ++j) std::swap(A(s, j), A(pi, j));
            d = -d;
        }
        d *= A(s, s);
        K inv = st::one() / A(s, s);
        for (int i = s + 1; i < n; ++i) {
            K f = A(i, s) * inv;
            if (st::is_zero(f)) continue;
            for (int j = s; j < n; ++j) A(i, j) -= f * A(s, j);
        }
    }
    return d;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse: not square");
    auto g = gauss_solve(A, Mat<K>::identity(A.rows));
    if (g.rank < A.rows) return std::nullopt;
    return g.particular;
}

} // namespace epoly
