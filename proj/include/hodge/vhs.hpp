#pragma once

#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace hodge {

struct CRat {
    Rat re = 0;
    Rat im = 0;

    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator/(const CRat& a, const CRat& b) {
        const Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw DivisionByZeroFunction("complex division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    CRat conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    std::string to_string() const { return re.get_str() + (im < 0 ? "-" : "+") + Rat(abs(im)).get_str() + "i"; }
};

using CMat = std::vector<std::vector<CRat>>;

struct PeriodMatrix {
    int g = 0;
    CMat tau;

    static PeriodMatrix identity_i(int g) {
        PeriodMatrix p{g, CMat(static_cast<std::size_t>(g), std::vector<CRat>(static_cast<std::size_t>(g)))};
        for (int k = 0; k < g; ++k) p.tau[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = {0, 1};
        return p;
    }
    QMat real_part() const { return part(false); }
    QMat imag_part() const { return part(true); }

private:
    QMat part(bool imag) const {
        QMat m(tau.size(), QVec(tau.size()));
        for (std::size_t i = 0; i < tau.size(); ++i)
            for (std::size_t j = 0; j < tau.size(); ++j) m[i][j] = imag ? tau[i][j].im : tau[i][j].re;
        return m;
    }
};

struct Validation {
    bool valid = true;
    std::vector<std::string> diagnostics;
};

// Symmetry is checked exactly; Im(tau) > 0 via leading principal minors.
inline Validation validate_period_matrix(const PeriodMatrix& p) {
    const std::size_t n = p.tau.size();
    if (static_cast<int>(n) != p.g) throw NotSquare("matrix has " + std::to_string(n) + " rows, g = " + std::to_string(p.g));
    for (const auto& row : p.tau)
        if (row.size() != n) throw NotSquare("row length differs from the number of rows");
    Validation v;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(p.tau[i][j] == p.tau[j][i])) {
                v.valid = false;
                v.diagnostics.push_back("tau[" + std::to_string(i) + "][" + std::to_string(j) + "] != tau[" +
                                        std::to_string(j) + "][" + std::to_string(i) + "]");
            }
    const QMat y = p.imag_part();
    for (std::size_t k = 1; k <= n; ++k) {
        QMat minor(k, QVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = y[i][j];
        const Rat det = determinant(minor);
        if (det <= 0) {
            v.valid = false;
            v.diagnostics.push_back("leading minor " + std::to_string(k) + " of Im(tau) is " + det.get_str());
            break;
        }
    }
    return v;
}

struct ThetaCoefficients {
    CMat A;  // coefficient of a^i in theta^j, indexed A[j][i]
    CMat B;  // coefficient of b^i in theta^j, indexed B[j][i]
};

// A_{ji} = (delta_ij + i (Re tau Im tau^{-1})_{ij}) / 2,
// B_{ji} = -(i/2) (Im tau^{-1})_{ij}
inline ThetaCoefficients theta_coefficients(const PeriodMatrix& p) {
    const Validation v = validate_period_matrix(p);
    if (!v.valid) throw InvalidArgument("period matrix outside the Siegel space: " + v.diagnostics.front());
    const std::size_t n = p.tau.size();
    auto yinv = inverse(p.imag_part());
    if (!yinv) throw SingularImaginaryPart("Im(tau) is singular");
    const QMat x = p.real_part();
    QMat xy(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) xy[i][j] += x[i][k] * (*yinv)[k][j];
    ThetaCoefficients t{CMat(n, std::vector<CRat>(n)), CMat(n, std::vector<CRat>(n))};
    const Rat half(1, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            t.A[j][i] = {i == j ? half : Rat(0), half * xy[i][j]};
            t.B[j][i] = {0, -half * (*yinv)[i][j]};
        }
    return t;
}

namespace detail {

inline CMat cmul(const CMat& a, const CMat& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    CMat c(n, std::vector<CRat>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < k; ++t) c[i][j] = c[i][j] + a[i][t] * b[t][j];
    return c;
}

inline bool is_identity(const CMat& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!(a[i][j] == CRat{i == j ? Rat(1) : Rat(0), 0})) return false;
    return true;
}

}  // namespace detail

// Rows alpha*_i and beta*_i written in the basis (omega_j, conj omega_j).
inline CMat dual_to_omega(const ThetaCoefficients& t) {
    const std::size_t n = t.A.size();
    CMat s(2 * n, std::vector<CRat>(2 * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s[i][j] = t.A[j][i];
            s[i][n + j] = t.A[j][i].conj();
            s[n + i][j] = t.B[j][i];
            s[n + i][n + j] = t.B[j][i].conj();
        }
    return s;
}

// omega_i = alpha*_i + sum_j tau_ij beta*_j and its conjugate.
inline CMat omega_to_dual(const PeriodMatrix& p) {
    const std::size_t n = p.tau.size();
    CMat m(2 * n, std::vector<CRat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = {1, 0};
        m[n + i][i] = {1, 0};
        for (std::size_t j = 0; j < n; ++j) {
            m[i][n + j] = p.tau[i][j];
            m[n + i][n + j] = p.tau[i][j].conj();
        }
    }
    return m;
}

// Both compositions of the two basis changes are the identity.
inline bool basis_consistent(const PeriodMatrix& p) {
    const ThetaCoefficients t = theta_coefficients(p);
    const CMat s = dual_to_omega(t), m = omega_to_dual(p);
    return detail::is_identity(detail::cmul(s, m)) && detail::is_identity(detail::cmul(m, s));
}

inline CRat complex_determinant(CMat m) {
    const std::size_t n = m.size();
    CRat det{1, 0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return {};
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            const CRat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return det;
}

// Determinant of the change of basis (a, b) -> (theta, conj theta).
inline CRat change_of_basis_determinant(const PeriodMatrix& p) {
    return complex_determinant(dual_to_omega(theta_coefficients(p)));
}

// Exact rational from "p/q", an integer, or a decimal such as "-1.25e-3".
inline Rat parse_exact(const std::string& s) {
    auto fail = [&]() -> Rat { throw ParseError("not an exact number: '" + s + "'"); };
    if (s.empty()) return fail();
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Rat r(Int(s.substr(0, slash), 10), Int(s.substr(slash + 1), 10));
            if (r.get_den() == 0) return fail();
            r.canonicalize();
            return r;
        }
        std::string mant = s;
        long exp10 = 0;
        const auto e = s.find_first_of("eE");
        if (e != std::string::npos) {
            mant = s.substr(0, e);
            std::size_t used = 0;
            exp10 = std::stol(s.substr(e + 1), &used);
            if (used != s.size() - e - 1) return fail();
        }
        const auto dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        if (mant.empty() || mant == "-" || mant == "+") return fail();
        if (mant[0] == '+') mant.erase(0, 1);
        Rat r{Int(mant, 10)};
        Int p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        if (exp10 >= 0)
            r *= p10;
        else
            r /= p10;
        return r;
    } catch (const std::invalid_argument&) {
        return fail();
    } catch (const std::out_of_range&) {
        return fail();
    }
}

}  // namespace hodge
