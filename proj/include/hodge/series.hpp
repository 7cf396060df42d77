#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ratfun.hpp"

namespace hodge {

// Power series in Z[[u,v]] truncated at total degree `order`. Stored densely
// over the triangle i + j <= order; terms() exposes the sparse view.
class TruncSeries2 {
public:
    explicit TruncSeries2(int order = 0) : order_(order), c_(size_for(order)) {
        if (order < 0) throw InvalidArgument("negative truncation order");
    }

    static TruncSeries2 from_poly(const BivarPoly& p, int order) {
        TruncSeries2 s(order);
        for (const auto& t : p.terms())
            if (t.i + t.j <= order) s.at(t.i, t.j) = t.c;
        return s;
    }
    static TruncSeries2 one(int order) {
        TruncSeries2 s(order);
        s.at(0, 0) = 1;
        return s;
    }

    int order() const { return order_; }

    const Int& coeff(int i, int j) const {
        static const Int zero = 0;
        if (i < 0 || j < 0 || i + j > order_) return zero;
        return c_[index(i, j)];
    }
    Int& at(int i, int j) { return c_[index(i, j)]; }

    std::vector<BivarPoly::Term> terms() const {
        std::vector<BivarPoly::Term> out;
        for (int i = 0; i <= order_; ++i)
            for (int j = 0; i + j <= order_; ++j)
                if (coeff(i, j) != 0) out.push_back({i, j, coeff(i, j)});
        return out;
    }
    BivarPoly to_poly() const { return BivarPoly::from_terms(terms()); }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
    }

    friend bool operator==(const TruncSeries2& a, const TruncSeries2& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

    TruncSeries2 truncate(int m) const {
        if (m > order_) throw InvalidArgument("cannot truncate to a higher order");
        TruncSeries2 s(m);
        std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(size_for(m)), s.c_.begin());
        return s;
    }

    friend TruncSeries2 operator+(const TruncSeries2& a, const TruncSeries2& b) {
        const int n = std::min(a.order_, b.order_);
        TruncSeries2 s = a.truncate(n);
        for (std::size_t k = 0; k < s.c_.size(); ++k) s.c_[k] += b.c_[k];
        return s;
    }
    friend TruncSeries2 operator-(const TruncSeries2& a) {
        TruncSeries2 s = a;
        for (auto& x : s.c_) x = -x;
        return s;
    }
    friend TruncSeries2 operator-(const TruncSeries2& a, const TruncSeries2& b) { return a + (-b); }

    friend TruncSeries2 operator*(const TruncSeries2& a, const TruncSeries2& b) {
        const int n = std::min(a.order_, b.order_);
        TruncSeries2 s(n);
        for (int i1 = 0; i1 <= n; ++i1)
            for (int j1 = 0; i1 + j1 <= n; ++j1) {
                const Int& x = a.coeff(i1, j1);
                if (x == 0) continue;
                for (int i2 = 0; i1 + j1 + i2 <= n; ++i2)
                    for (int j2 = 0; i1 + j1 + i2 + j2 <= n; ++j2) {
                        const Int& y = b.coeff(i2, j2);
                        if (y != 0)
                            mpz_addmul(s.at(i1 + i2, j1 + j2).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    }
            }
        return s;
    }

    TruncSeries2& operator+=(const TruncSeries2& o) { return *this = *this + o; }
    TruncSeries2& operator-=(const TruncSeries2& o) { return *this = *this - o; }

    void scale(const Int& k) {
        for (auto& x : c_) x *= k;
    }

    // *this *= (1 + c u^a v^b), in place
    void mul_binomial(int a, int b, const Int& c = 1) {
        if (a + b == 0) {
            scale(c + 1);
            return;
        }
        for (int s = order_; s >= a + b; --s)
            for (int i = a; i <= s; ++i) {
                const int j = s - i;
                if (j < b) continue;
                const Int& src = coeff(i - a, j - b);
                if (src != 0) mpz_addmul(at(i, j).get_mpz_t(), c.get_mpz_t(), src.get_mpz_t());
            }
    }

    // *this /= (1 - c u^a v^b), in place (a + b > 0)
    void div_one_minus(int a, int b, const Int& c = 1) {
        if (a + b == 0) throw InvalidArgument("geometric factor needs positive degree");
        for (int s = a + b; s <= order_; ++s)
            for (int i = a; i <= s; ++i) {
                const int j = s - i;
                if (j < b) continue;
                const Int& src = coeff(i - a, j - b);
                if (src != 0) mpz_addmul(at(i, j).get_mpz_t(), c.get_mpz_t(), src.get_mpz_t());
            }
    }

    // *this *= u^a v^b, dropping what falls beyond the order
    void shift(int a, int b) {
        if (a == 0 && b == 0) return;
        for (int s = order_; s >= 0; --s)
            for (int i = 0; i <= s; ++i) {
                const int j = s - i;
                at(i, j) = coeff(i - a, j - b);
            }
    }

    // Same series seen at a higher order; the new coefficients are unknown,
    // so this is only meaningful for polynomials of small enough degree.
    TruncSeries2 padded(int m) const {
        TruncSeries2 s(std::max(m, order_));
        std::copy(c_.begin(), c_.end(), s.c_.begin());
        return s;
    }

private:
    int order_;
    std::vector<Int> c_;

    static std::size_t size_for(int n) {
        return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
    }
    static std::size_t index(int i, int j) {
        const std::size_t s = static_cast<std::size_t>(i + j);
        return s * (s + 1) / 2 + static_cast<std::size_t>(j);
    }
};

// Power-series expansion of num/den up to total degree N.
inline TruncSeries2 expand_series(const RatFun2& r, int N) {
    const Int d0 = r.den.constant_term();
    if (d0 == 0) throw NonUnitDenominator("denominator vanishes at the origin");
    TruncSeries2 s = TruncSeries2::from_poly(r.num, N);
    std::vector<BivarPoly::Term> tail;
    for (const auto& t : r.den.terms())
        if (t.i + t.j > 0 && t.i + t.j <= N) tail.push_back(t);
    for (int deg = 0; deg <= N; ++deg)
        for (int i = 0; i <= deg; ++i) {
            const int j = deg - i;
            Int& c = s.at(i, j);
            for (const auto& t : tail) {
                if (t.i > i || t.j > j) continue;
                const Int& prev = s.coeff(i - t.i, j - t.j);
                if (prev != 0) mpz_submul(c.get_mpz_t(), t.c.get_mpz_t(), prev.get_mpz_t());
            }
            if (d0 != 1) {
                if (!mpz_divisible_p(c.get_mpz_t(), d0.get_mpz_t()))
                    throw NonIntegralExpansion("coefficient of u^" + std::to_string(i) + " v^" +
                                               std::to_string(j) + " is not an integer");
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d0.get_mpz_t());
            }
        }
    return s;
}

}  // namespace hodge
