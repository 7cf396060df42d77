#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ratfun.hpp"

namespace hodge {

// Dense polynomial in Q[t]; no trailing zero coefficients.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Rat& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) c_.push_back(c);
    }
    UniPoly(long c) : UniPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
    explicit UniPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

    static UniPoly t_pow(int k, const Rat& c = 1) {
        std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
        v[static_cast<std::size_t>(k)] = c;
        return UniPoly(std::move(v));
    }

    const std::vector<Rat>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rat(0); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        UniPoly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    UniPoly pow(unsigned e) const {
        UniPoly r(1), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    Rat eval(const Rat& t) const {
        Rat s = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
        return s;
    }

    std::string to_string(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string s;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Rat c = c_[k];
            const bool neg = c < 0;
            if (neg) c = -c;
            s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            first = false;
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            if (mono.empty())
                s += c.get_str();
            else if (c == 1)
                s += mono;
            else
                s += c.get_str() + "*" + mono;
        }
        return s;
    }

private:
    std::vector<Rat> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

struct UniRatFun {
    UniPoly num;
    UniPoly den{1};
};

inline bool uni_eq(const UniRatFun& a, const UniRatFun& b) { return a.num * b.den == b.num * a.den; }

// A substitution for u and v: each is either a rational constant or the
// variable t.
struct Assignment {
    std::optional<Rat> u;  // nullopt means u := t
    std::optional<Rat> v;  // nullopt means v := t

    static Assignment diagonal() { return {}; }
    static Assignment at(Rat u0, Rat v0) { return {std::move(u0), std::move(v0)}; }
    static Assignment u_fixed(Rat u0) { return {std::move(u0), std::nullopt}; }
    static Assignment v_fixed(Rat v0) { return {std::nullopt, std::move(v0)}; }
    bool is_constant() const { return u && v; }
};

inline UniPoly substitute(const BivarPoly& p, const Assignment& a) {
    std::vector<Rat> out;
    for (const auto& term : p.terms()) {
        Rat c = term.c;
        int k = 0;
        if (a.u) c *= BivarPoly::pow_rat(*a.u, term.i); else k += term.i;
        if (a.v) c *= BivarPoly::pow_rat(*a.v, term.j); else k += term.j;
        if (out.size() <= static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k) + 1);
        out[static_cast<std::size_t>(k)] += c;
    }
    return UniPoly(std::move(out));
}

// Result is a univariate function of t, or a plain rational when both
// variables are fixed.
using Substituted = std::variant<UniRatFun, Rat>;

inline Substituted substitute(const RatFun2& r, const Assignment& a) {
    UniPoly d = substitute(r.den, a);
    if (d.is_zero())
        throw ZeroDenominatorAfterSubstitution("denominator vanishes; cancel the factor first");
    UniPoly n = substitute(r.num, a);
    if (a.is_constant()) return Rat(n.coeff(0) / d.coeff(0));
    return UniRatFun{std::move(n), std::move(d)};
}

}  // namespace hodge
