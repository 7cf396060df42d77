#pragma once

#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace hodge {

using IVec = std::vector<long>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using IMat = std::vector<IVec>;

inline Rat dot(const IVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != 0) s += a[k] * b[k];
    return s;
}
inline long dot(const IVec& a, const IVec& b) {
    long s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}
inline QVec to_q(const IVec& a) { return QVec(a.begin(), a.end()); }

// Solves m x = b for square invertible m; nullopt when m is singular.
inline std::optional<QVec> solve(QMat m, QVec b) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    QVec x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = b[k] / m[k][k];
    return x;
}

inline std::optional<QMat> inverse(const QMat& m) {
    const std::size_t n = m.size();
    QMat inv(n, QVec(n));
    for (std::size_t k = 0; k < n; ++k) {
        QVec e(n);
        e[k] = 1;
        auto x = solve(m, e);
        if (!x) return std::nullopt;
        for (std::size_t r = 0; r < n; ++r) inv[r][k] = (*x)[r];
    }
    return inv;
}

inline Rat determinant(QMat m) {
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// Coordinates of v in the (linearly independent) columns `basis`, if v lies
// in their span.
inline std::optional<QVec> coordinates(const std::vector<IVec>& basis, const QVec& v) {
    const std::size_t k = basis.size(), n = v.size();
    // rows: ambient coordinates; columns: basis vectors plus the target
    QMat m(n, QVec(k + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) m[r][c] = basis[c][r];
        m[r][k] = v[r];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < k && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;  // dependent basis
        std::swap(m[piv], m[row]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[row][col];
            for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    if (pivots.size() != k) return std::nullopt;
    for (std::size_t r = row; r < n; ++r)
        if (m[r][k] != 0) return std::nullopt;
    QVec x(k);
    for (std::size_t r = 0; r < k; ++r) x[r] = m[r][k] / m[r][r];
    return x;
}

// Invariant factors of an integer matrix (Smith normal form diagonal,
// zeros included up to min(rows, cols)).
inline std::vector<long> smith_diagonal(IMat a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<long> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pick the smallest nonzero entry in the remaining block
        std::size_t pr = rows, pc = cols;
        for (std::size_t r = t; r < rows; ++r)
            for (std::size_t c = t; c < cols; ++c)
                if (a[r][c] != 0 && (pr == rows || std::labs(a[r][c]) < std::labs(a[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                long q = a[r][t] / a[t][t];
                for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
                if (a[r][t] != 0) {
                    std::swap(a[t], a[r]);
                    clean = false;
                }
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                long q = a[t][c] / a[t][t];
                for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
                if (a[t][c] != 0) {
                    for (auto& row : a) std::swap(row[t], row[c]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility condition on the rest of the block
                for (std::size_t r = t + 1; r < rows && clean; ++r)
                    for (std::size_t c = t + 1; c < cols; ++c)
                        if (a[r][c] % a[t][t] != 0) {
                            for (std::size_t cc = t; cc < cols; ++cc) a[t][cc] += a[r][cc];
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(std::labs(a[t][t]));
        ++t;
    }
    while (diag.size() < std::min(rows, cols)) diag.push_back(0);
    return diag;
}

// a / b in lowest terms; gmpxx leaves Rat(a, b) uncanonicalized
inline Rat ratio(long a, long b) {
    Rat q(a, b);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}
inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

}  // namespace hodge
