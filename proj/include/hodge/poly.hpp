#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace hodge {

using Int = mpz_class;
using Rat = mpq_class;

// Sparse polynomial in Z[u,v]. Terms are kept sorted by (deg_u, deg_v) and
// never hold a zero coefficient, so structural equality is semantic equality.
class BivarPoly {
public:
    struct Term {
        int i = 0;
        int j = 0;
        Int c;
        bool operator==(const Term& o) const { return i == o.i && j == o.j && c == o.c; }
    };

    BivarPoly() = default;
    BivarPoly(long c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.push_back({0, 0, Int(c)});
    }
    BivarPoly(const Int& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.push_back({0, 0, c});
    }

    static BivarPoly monomial(int i, int j, const Int& c = 1) {
        BivarPoly p;
        if (c != 0) p.terms_.push_back({i, j, c});
        return p;
    }
    static BivarPoly u() { return monomial(1, 0); }
    static BivarPoly v() { return monomial(0, 1); }
    // 1 + c u^a v^b
    static BivarPoly binomial(int a, int b, const Int& c = 1) {
        return BivarPoly(1) + monomial(a, b, c);
    }

    // Builds from unsorted terms, merging duplicates and dropping zeros.
    static BivarPoly from_terms(std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) {
            return x.i != y.i ? x.i < y.i : x.j < y.j;
        });
        BivarPoly p;
        for (auto& t : ts) {
            if (t.i < 0 || t.j < 0) throw InvalidArgument("negative exponent in polynomial term");
            if (!p.terms_.empty() && p.terms_.back().i == t.i && p.terms_.back().j == t.j)
                p.terms_.back().c += t.c;
            else
                p.terms_.push_back(std::move(t));
        }
        std::erase_if(p.terms_, [](const Term& t) { return t.c == 0; });
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Int coeff(int i, int j) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(i, j),
                                   [](const Term& t, const std::pair<int, int>& k) {
                                       return t.i != k.first ? t.i < k.first : t.j < k.second;
                                   });
        if (it != terms_.end() && it->i == i && it->j == j) return it->c;
        return 0;
    }
    Int constant_term() const { return coeff(0, 0); }

    int max_deg_u() const {
        return terms_.empty() ? -1 : terms_.back().i;
    }
    int max_deg_v() const {
        int m = -1;
        for (const auto& t : terms_) m = std::max(m, t.j);
        return m;
    }
    int total_degree() const {
        int m = -1;
        for (const auto& t : terms_) m = std::max(m, t.i + t.j);
        return m;
    }

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

    friend BivarPoly operator-(const BivarPoly& a) {
        BivarPoly r = a;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) { return merge(a, b, false); }
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return merge(a, b, true); }

    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.size() == 1) return b.scaled_shift(a.terms_[0]);
        if (b.size() == 1) return a.scaled_shift(b.terms_[0]);
        // dense accumulation; the formulas produce products of modest degree
        const int du = a.max_deg_u() + b.max_deg_u();
        const int dv = a.max_deg_v() + b.max_deg_v();
        const std::size_t w = static_cast<std::size_t>(dv) + 1;
        std::vector<Int> buf((static_cast<std::size_t>(du) + 1) * w);
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_)
                mpz_addmul(buf[static_cast<std::size_t>(x.i + y.i) * w + (x.j + y.j)].get_mpz_t(),
                           x.c.get_mpz_t(), y.c.get_mpz_t());
        return from_dense(buf, du, dv);
    }

    BivarPoly& operator+=(const BivarPoly& o) { return *this = *this + o; }
    BivarPoly& operator-=(const BivarPoly& o) { return *this = *this - o; }
    BivarPoly& operator*=(const BivarPoly& o) { return *this = *this * o; }

    BivarPoly pow(unsigned e) const {
        BivarPoly result(1), base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    // Multiplies by c u^i v^j.
    BivarPoly scaled_shift(const Term& m) const {
        BivarPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.i + m.i, t.j + m.j, t.c * m.c});
        return r;
    }
    BivarPoly shift(int i, int j) const { return scaled_shift({i, j, Int(1)}); }

    // Exact quotient a / b. Division runs over lex order on (i, j), where the
    // lex-leading term of b has to divide every remainder leading term.
    static BivarPoly div_exact(const BivarPoly& a, const BivarPoly& b) {
        if (b.is_zero()) throw DivisionByZeroFunction("polynomial division by zero");
        if (a.is_zero()) return {};
        if (b.size() == 1) {
            const Term& m = b.terms_[0];
            std::vector<Term> out;
            for (const auto& t : a.terms_) {
                if (t.i < m.i || t.j < m.j || !mpz_divisible_p(t.c.get_mpz_t(), m.c.get_mpz_t()))
                    throw NotDivisible("monomial does not divide polynomial");
                out.push_back({t.i - m.i, t.j - m.j, Int(t.c / m.c)});
            }
            return from_terms(std::move(out));
        }
        const Term lead = b.terms_.back();
        const int du = a.max_deg_u(), dv = std::max(a.max_deg_v(), b.max_deg_v());
        const std::size_t w = static_cast<std::size_t>(dv) + 1;
        std::vector<Int> rem((static_cast<std::size_t>(du) + 1) * w);
        for (const auto& t : a.terms_) rem[static_cast<std::size_t>(t.i) * w + t.j] = t.c;
        std::vector<Term> q;
        for (int i = du; i >= 0; --i) {
            for (int j = dv; j >= 0; --j) {
                Int& c = rem[static_cast<std::size_t>(i) * w + j];
                if (c == 0) continue;
                if (i < lead.i || j < lead.j || !mpz_divisible_p(c.get_mpz_t(), lead.c.get_mpz_t()))
                    throw NotDivisible("polynomial is not a multiple of the divisor");
                Int qc = c / lead.c;
                const int qi = i - lead.i, qj = j - lead.j;
                for (const auto& t : b.terms_) {
                    const int ti = t.i + qi, tj = t.j + qj;
                    if (ti > du || tj > dv || tj < 0)
                        throw NotDivisible("polynomial is not a multiple of the divisor");
                    mpz_submul(rem[static_cast<std::size_t>(ti) * w + tj].get_mpz_t(), qc.get_mpz_t(),
                               t.c.get_mpz_t());
                }
                q.push_back({qi, qj, std::move(qc)});
            }
        }
        return from_terms(std::move(q));
    }

    // Exact value at rational (u, v).
    Rat eval(const Rat& u0, const Rat& v0) const {
        Rat s = 0;
        for (const auto& t : terms_) {
            Rat m = t.c;
            m *= pow_rat(u0, t.i);
            m *= pow_rat(v0, t.j);
            s += m;
        }
        return s;
    }

    static Rat pow_rat(const Rat& x, int e) {
        Rat r = 1;
        mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }

    // Human-readable canonical form, e.g. "1 + 2*u + u^2*v".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& t : terms_) {
            Int c = t.c;
            bool neg = c < 0;
            if (neg) c = -c;
            if (first)
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            first = false;
            std::string mono;
            if (t.i == 1) mono += "u";
            if (t.i > 1) mono += "u^" + std::to_string(t.i);
            if (t.j > 0 && !mono.empty()) mono += "*";
            if (t.j == 1) mono += "v";
            if (t.j > 1) mono += "v^" + std::to_string(t.j);
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
    std::vector<Term> terms_;

    static BivarPoly merge(const BivarPoly& a, const BivarPoly& b, bool subtract) {
        BivarPoly r;
        r.terms_.reserve(a.size() + b.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        auto less = [](const Term& x, const Term& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; };
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && less(*ia, *ib))) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || less(*ib, *ia)) {
                r.terms_.push_back({ib->i, ib->j, subtract ? Int(-ib->c) : ib->c});
                ++ib;
            } else {
                Int c = subtract ? Int(ia->c - ib->c) : Int(ia->c + ib->c);
                if (c != 0) r.terms_.push_back({ia->i, ia->j, std::move(c)});
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    static BivarPoly from_dense(std::vector<Int>& buf, int du, int dv) {
        BivarPoly r;
        const std::size_t w = static_cast<std::size_t>(dv) + 1;
        for (int i = 0; i <= du; ++i)
            for (int j = 0; j <= dv; ++j) {
                Int& c = buf[static_cast<std::size_t>(i) * w + j];
                if (c != 0) r.terms_.push_back({i, j, std::move(c)});
            }
        return r;
    }
};

// (uv)^k
inline BivarPoly uv_pow(int k) { return BivarPoly::monomial(k, k); }
// 1 - (uv)^k
inline BivarPoly one_minus_uv(int k) { return BivarPoly(1) - uv_pow(k); }

}  // namespace hodge
