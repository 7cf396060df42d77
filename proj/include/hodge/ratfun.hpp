#pragma once

#include <utility>

#include "poly.hpp"

namespace hodge {

// num/den in Q(u,v), with no gcd normalisation. Equality is decided by
// cross-multiplication, see rat_eq.
struct RatFun2 {
    BivarPoly num;
    BivarPoly den{1};

    RatFun2() = default;
    RatFun2(BivarPoly n) : num(std::move(n)) {}  // NOLINT(google-explicit-constructor)
    RatFun2(BivarPoly n, BivarPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw DivisionByZeroFunction("zero denominator");
    }

    bool is_zero() const { return num.is_zero(); }
};

inline bool rat_eq(const RatFun2& a, const RatFun2& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.den == b.den) return a.num == b.num;
    return a.num * b.den == b.num * a.den;
}

inline RatFun2 operator+(const RatFun2& a, const RatFun2& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
inline RatFun2 operator-(const RatFun2& a) { return {-a.num, a.den}; }
inline RatFun2 operator-(const RatFun2& a, const RatFun2& b) { return a + (-b); }
inline RatFun2 operator*(const RatFun2& a, const RatFun2& b) { return {a.num * b.num, a.den * b.den}; }

inline RatFun2 inv(const RatFun2& a) {
    if (a.is_zero()) throw DivisionByZeroFunction("inverse of the zero function");
    return {a.den, a.num};
}
inline RatFun2 operator/(const RatFun2& a, const RatFun2& b) { return a * inv(b); }

inline RatFun2 pow(const RatFun2& a, long e) {
    if (e < 0) return pow(inv(a), -e);
    return {a.num.pow(static_cast<unsigned>(e)), a.den.pow(static_cast<unsigned>(e))};
}

namespace detail {

inline int strip_factor(BivarPoly& p, const BivarPoly& f) {
    int k = 0;
    if (p.is_zero()) return 0;
    for (;;) {
        try {
            p = BivarPoly::div_exact(p, f);
            ++k;
        } catch (const NotDivisible&) {
            return k;
        }
    }
}

}  // namespace detail

// Divides the largest common power of f out of num and den.
inline std::pair<RatFun2, int> cancel_factor(const RatFun2& r, const BivarPoly& f) {
    if (f.is_zero() || f.total_degree() <= 0)
        throw InvalidArgument("cancel_factor needs a non-constant factor");
    BivarPoly n = r.num, d = r.den;
    const int kd = detail::strip_factor(d, f);
    if (n.is_zero()) {
        // 0/(f^k d') : every power of f is common
        return {RatFun2(BivarPoly(), d), kd};
    }
    const int kn = detail::strip_factor(n, f);
    const int k = std::min(kn, kd);
    BivarPoly fn = f.pow(static_cast<unsigned>(kn - k)), fd = f.pow(static_cast<unsigned>(kd - k));
    return {RatFun2(n * fn, d * fd), k};
}

}  // namespace hodge
