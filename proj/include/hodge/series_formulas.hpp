#pragma once

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "root_data.hpp"
#include "series.hpp"
#include "univariate.hpp"

namespace hodge {

constexpr int kDefaultOrder = 24;
constexpr int kDefaultMaxGenus = 8;

// coeff * prod (1 + u^a v^b)^p * (uv)^uv / prod (1 - (uv)^k)^m
struct ProductTerm {
    Int coeff = 1;
    std::map<std::pair<int, int>, int> binomials;
    long uv = 0;
    std::map<int, int> den;

    ProductTerm& operator*=(const ProductTerm& o) {
        coeff *= o.coeff;
        for (const auto& [k, p] : o.binomials) binomials[k] += p;
        uv += o.uv;
        for (const auto& [k, m] : o.den) den[k] += m;
        return *this;
    }
    void add_den(int k, int m = 1) {
        if (k <= 0) throw NonIntegralExponent("denominator factor 1-(uv)^" + std::to_string(k));
        den[k] += m;
    }
};

using TermSum = std::vector<ProductTerm>;

inline void check_genus(int g) {
    if (g < 2) throw InvalidArgument("genus must be at least 2");
}

// a_{u,v} for a group with the given generator degrees (ones = centre).
inline ProductTerm a_term(const std::vector<int>& exponents, int g) {
    ProductTerm t;
    for (int d : exponents) {
        if (d == 1) {
            t.binomials[{1, 0}] += g;
            t.binomials[{0, 1}] += g;
            t.add_den(1);
        } else {
            t.binomials[{d, d - 1}] += g;
            t.binomials[{d - 1, d}] += g;
            t.add_den(d - 1);
            t.add_den(d);
        }
    }
    return t;
}

namespace detail {

inline std::vector<Int> uv_factor_product(const std::map<int, int>& factors) {
    std::vector<Int> p{Int(1)};
    for (const auto& [k, m] : factors)
        for (int rep = 0; rep < m; ++rep) {
            std::vector<Int> q(p.size() + static_cast<std::size_t>(k));
            for (std::size_t i = 0; i < p.size(); ++i) {
                q[i] += p[i];
                q[i + static_cast<std::size_t>(k)] -= p[i];
            }
            p = std::move(q);
        }
    return p;
}

inline BivarPoly diagonal_poly(const std::vector<Int>& c, long shift) {
    std::vector<BivarPoly::Term> ts;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) ts.push_back({static_cast<int>(i + shift), static_cast<int>(i + shift), c[i]});
    return BivarPoly::from_terms(std::move(ts));
}

}  // namespace detail

// Common denominator is the multiset maximum of the term denominators.
inline RatFun2 to_ratfun(const TermSum& terms) {
    std::map<int, int> common;
    for (const auto& t : terms)
        for (const auto& [k, m] : t.den) common[k] = std::max(common[k], m);
    std::map<std::pair<std::pair<int, int>, int>, BivarPoly> pow_cache;
    auto binom_pow = [&](std::pair<int, int> ab, int p) -> const BivarPoly& {
        auto key = std::make_pair(ab, p);
        auto it = pow_cache.find(key);
        if (it == pow_cache.end())
            it = pow_cache.emplace(key, BivarPoly::binomial(ab.first, ab.second).pow(static_cast<unsigned>(p))).first;
        return it->second;
    };
    BivarPoly num;
    for (const auto& t : terms) {
        if (t.uv < 0) throw NonIntegralExponent("negative power of uv");
        std::map<int, int> rest;
        for (const auto& [k, m] : common) {
            auto it = t.den.find(k);
            const int left = m - (it == t.den.end() ? 0 : it->second);
            if (left > 0) rest[k] = left;
        }
        BivarPoly p = detail::diagonal_poly(detail::uv_factor_product(rest), t.uv);
        for (const auto& [ab, e] : t.binomials)
            if (e > 0) p *= binom_pow(ab, e);
        num += p * BivarPoly(t.coeff);
    }
    return {num, detail::diagonal_poly(detail::uv_factor_product(common), 0)};
}

inline TruncSeries2 to_series(const ProductTerm& t, int N) {
    if (t.uv < 0) throw NonIntegralExponent("negative power of uv");
    if (t.uv > N) return TruncSeries2(N);
    const int M = N - static_cast<int>(t.uv);
    TruncSeries2 s = TruncSeries2::one(M);
    for (const auto& [ab, e] : t.binomials)
        if (ab.first + ab.second <= M)
            for (int k = 0; k < e; ++k) s.mul_binomial(ab.first, ab.second);
    for (const auto& [k, m] : t.den)
        for (int rep = 0; rep < m; ++rep) s.div_one_minus(k, k);
    s.scale(t.coeff);
    TruncSeries2 out = s.padded(N);
    out.shift(static_cast<int>(t.uv), static_cast<int>(t.uv));
    return out;
}

inline TruncSeries2 to_series(const TermSum& terms, int N) {
    TruncSeries2 s(N);
    for (const auto& t : terms) s += to_series(t, N);
    return s;
}

inline TermSum hp_classifying_terms(const GroupSpec& spec) {
    ProductTerm t;
    for (int d : exponents_of(spec)) t.add_den(d);
    return {t};
}
inline RatFun2 hp_classifying(const GroupSpec& spec) { return to_ratfun(hp_classifying_terms(spec)); }

inline RatFun2 a_series(const GroupSpec& spec, int g) {
    check_genus(g);
    return to_ratfun({a_term(exponents_of(spec), g)});
}

// Closed formula over an arbitrary root datum and lift X of the degree:
// sum over I of (-1)^|I| a(L^I) (uv)^{(g-1) dim U^I}
//   * prod_{alpha in I} (uv)^{p_alpha <varpi_alpha(X)>} / (1 - (uv)^{p_alpha}),
// where p_alpha = 2 rho^I(alpha^vee).
inline TermSum closed_terms(const RootDatum& rd, const QVec& x, int g, RhoRule rule = RhoRule::nilradical) {
    check_genus(g);
    const QVec w = fund_weights(rd, x);
    TermSum out;
    for (std::uint32_t I = 0; I <= rd.full_mask(); ++I) {
        const LeviDatum L = levi_datum(rd, I, rule);
        ProductTerm t = a_term(L.exponents, g);
        if (L.rho_pairings.size() % 2 == 1) t.coeff = -t.coeff;
        t.uv = static_cast<long>(g - 1) * L.dimU;
        Rat shift = 0;
        for (const auto& [i, p] : L.rho_pairings) {
            if (!is_integer(p)) throw NonIntegralExponent("2 rho^I(alpha^vee) = " + p.get_str());
            t.add_den(static_cast<int>(p.get_num().get_si()));
            shift += p * frac_rep(w[static_cast<std::size_t>(i)]);
        }
        // only the total exponent needs to be integral
        if (!is_integer(shift))
            throw NonIntegralExponent("uv exponent " + shift.get_str() + " for I = " + std::to_string(I));
        t.uv += shift.get_num().get_si();
        out.push_back(std::move(t));
    }
    return out;
}

inline TermSum hp_semistable_closed_terms(const GroupSpec& spec, const Degree& d, int g,
                                          RhoRule rule = RhoRule::nilradical) {
    return closed_terms(build_root_system(spec), to_q(canonical_lift(spec, d)), g, rule);
}
inline RatFun2 hp_semistable_closed(const GroupSpec& spec, const Degree& d, int g, RhoRule rule = RhoRule::nilradical) {
    return to_ratfun(hp_semistable_closed_terms(spec, d, g, rule));
}

namespace detail {

inline std::vector<std::vector<int>> compositions(int r) {
    std::vector<std::vector<int>> out;
    // bit k of the mask set means a cut after position k+1
    for (std::uint32_t m = 0; m < (1u << (r - 1)); ++m) {
        std::vector<int> c;
        int run = 1;
        for (int k = 0; k < r - 1; ++k) {
            if (m & (1u << k)) {
                c.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        c.push_back(run);
        out.push_back(c);
    }
    return out;
}

inline std::vector<int> gl_exponents(int n) {
    std::vector<int> e;
    for (int k = 1; k <= n; ++k) e.push_back(k);
    return e;
}
inline std::vector<int> even_exponents(int n) {
    std::vector<int> e;
    for (int k = 1; k <= n; ++k) e.push_back(2 * k);
    return e;
}
inline std::vector<int> so_even_exponents(int n) {
    std::vector<int> e;
    for (int k = 1; k < n; ++k) e.push_back(2 * k);
    e.push_back(n);
    return e;
}

inline long pair_sum(const std::vector<int>& c) {
    long s = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) s += static_cast<long>(c[i]) * c[j];
    return s;
}

// prod_{i < n} a(GL_{r_i})
inline ProductTerm gl_blocks(const std::vector<int>& c, std::size_t n, int g) {
    ProductTerm t;
    for (std::size_t i = 0; i < n; ++i) t *= a_term(gl_exponents(c[i]), g);
    return t;
}

inline Int sign(std::size_t k) { return k % 2 == 0 ? Int(1) : Int(-1); }

// sum_{i<l} (r_i + r_{i+1}) <(r_1 + ... + r_i)(-d/r)> and the cut
// denominators; only the total has to be integral.
inline void gl_cuts(ProductTerm& t, const std::vector<int>& c, long d, int r, std::size_t upto) {
    Rat shift = 0;
    long partial = 0;
    for (std::size_t i = 0; i + 1 < upto; ++i) {
        partial += c[i];
        const int p = c[i] + c[i + 1];
        t.add_den(p);
        shift += p * frac_rep(Rat(partial) * ratio(-d, r));
    }
    if (!is_integer(shift)) throw NonIntegralExponent("uv exponent " + shift.get_str());
    t.uv += shift.get_num().get_si();
}

}  // namespace detail

// Composition sums per family; for type A the a-factor exponent is l
// (GL) or l - 1 (SL and the fixed-determinant moduli space).
inline TermSum type_a_terms(int r, long d, int g, bool drop_center) {
    TermSum out;
    for (const auto& c : detail::compositions(r)) {
        const std::size_t l = c.size();
        ProductTerm t = detail::gl_blocks(c, l, g);
        if (drop_center) {
            t.binomials[{1, 0}] -= g;
            t.binomials[{0, 1}] -= g;
            t.den[1] -= 1;
            if (t.den[1] == 0) t.den.erase(1);
        }
        t.coeff = detail::sign(l - 1);
        t.uv = static_cast<long>(g - 1) * detail::pair_sum(c);
        detail::gl_cuts(t, c, d, r, l);
        out.push_back(std::move(t));
    }
    return out;
}

// Types B and C share their shape; they differ in the short/long last cut.
inline TermSum type_bc_terms(Family fam, int r, long d, int g) {
    const bool typeB = fam == Family::SOodd;
    const Rat half = frac_rep(ratio(d, 2));
    TermSum out;
    for (const auto& c : detail::compositions(r)) {
        const std::size_t l = c.size();
        const int rl = c[l - 1];
        const long base = detail::pair_sum(c) + static_cast<long>(r) * (r + 1) / 2;

        ProductTerm t1 = detail::gl_blocks(c, l, g);
        t1.coeff = detail::sign(l);
        t1.uv = static_cast<long>(g - 1) * base;
        detail::gl_cuts(t1, c, 0, r, l);
        if (typeB) {
            t1.add_den(2 * rl);
            Rat e = 2 * rl * half;
            t1.uv += e.get_num().get_si();
        } else {
            t1.add_den(rl + 1);
            t1.uv += rl + 1;
        }
        out.push_back(std::move(t1));

        ProductTerm t2 = detail::gl_blocks(c, l - 1, g);
        t2 *= a_term(detail::even_exponents(rl), g);
        t2.coeff = detail::sign(l - 1);
        t2.uv = static_cast<long>(g - 1) * (base - static_cast<long>(rl) * (rl + 1) / 2);
        detail::gl_cuts(t2, c, 0, r, l - 1);
        if (l > 1) {
            const int last = c[l - 2] + 2 * rl + (typeB ? 0 : 1);
            t2.add_den(last);
            t2.uv += last;
        }
        out.push_back(std::move(t2));
    }
    return out;
}

inline TermSum type_d_terms(int r, long d, int g) {
    const Rat half = frac_rep(ratio(d, 2));
    TermSum out;
    for (const auto& c : detail::compositions(r)) {
        const std::size_t l = c.size();
        const int rl = c[l - 1];
        const long base = detail::pair_sum(c) + static_cast<long>(r) * (r - 1) / 2;
        if (rl == 1) {
            if (l < 2) continue;
            // both alpha_{r-1} and alpha_r in I
            ProductTerm t = detail::gl_blocks(c, l, g);
            t.coeff = detail::sign(l);
            t.uv = static_cast<long>(g - 1) * base;
            detail::gl_cuts(t, c, 0, r, l - 1);
            const int p = c[l - 2] + 1;
            t.add_den(p, 2);
            Rat e = 2 * p * half;
            t.uv += e.get_num().get_si();
            out.push_back(std::move(t));
            continue;
        }
        // exactly one of alpha_{r-1}, alpha_r in I (two isomorphic Levis)
        ProductTerm t1 = detail::gl_blocks(c, l, g);
        t1.coeff = 2 * detail::sign(l);
        t1.uv = static_cast<long>(g - 1) * base;
        detail::gl_cuts(t1, c, 0, r, l);
        t1.add_den(2 * (rl - 1));
        Rat e = 2 * (rl - 1) * half;
        t1.uv += e.get_num().get_si();
        out.push_back(std::move(t1));

        // neither: last block is SO_{2 r_l}
        ProductTerm t2 = detail::gl_blocks(c, l - 1, g);
        t2 *= a_term(detail::so_even_exponents(rl), g);
        t2.coeff = detail::sign(l - 1);
        t2.uv = static_cast<long>(g - 1) * (base - static_cast<long>(rl) * (rl - 1) / 2);
        detail::gl_cuts(t2, c, 0, r, l - 1);
        if (l > 1) {
            const int last = c[l - 2] + 2 * rl - 1;
            t2.add_den(last);
            t2.uv += last;
        }
        out.push_back(std::move(t2));
    }
    return out;
}

// `rank` follows Factor: matrix size for GL/SL, Lie rank otherwise.
inline TermSum hp_semistable_classical_terms(Family fam, int rank, long d, int g) {
    check_genus(g);
    GroupSpec::single(fam, rank).check_degree({d});
    switch (fam) {
        case Family::GL: return type_a_terms(rank, d, g, false);
        case Family::SL: return type_a_terms(rank, 0, g, true);
        case Family::SOodd:
        case Family::Sp: return type_bc_terms(fam, rank, d, g);
        case Family::SOeven: return type_d_terms(rank, d, g);
    }
    return {};
}
inline RatFun2 hp_semistable_classical(Family fam, int rank, long d, int g) {
    return to_ratfun(hp_semistable_classical_terms(fam, rank, d, g));
}

inline RatFun2 hp_moduli_space(const GroupSpec& spec, const Degree& d, int g) {
    const RootDatum rd = build_root_system(spec);
    const QVec x = to_q(canonical_lift(spec, d));
    if (!good_case(rd, x)) throw NotGoodCase(spec.to_string() + " has strictly semistable bundles in this degree");
    TermSum terms = closed_terms(rd, x, g);
    for (auto& t : terms) {
        t.den[1] -= rd.dim_center();
        if (t.den[1] < 0) throw NotGoodCase("centre factor does not cancel");
        if (t.den[1] == 0) t.den.erase(1);
    }
    return to_ratfun(terms);
}

inline BivarPoly jacobian_factor(int g) {
    return BivarPoly::binomial(1, 0).pow(static_cast<unsigned>(g)) * BivarPoly::binomial(0, 1).pow(static_cast<unsigned>(g));
}

inline BivarPoly to_polynomial(const RatFun2& r, int bound) {
    if (bound < 0) throw InvalidArgument("negative degree bound");
    BivarPoly p = expand_series(r, bound).to_poly();
    if (!(p * r.den == r.num))
        throw NotPolynomialWithinBound("not a polynomial of total degree <= " + std::to_string(bound));
    return p;
}

// Fixed-determinant moduli space of rank r, degree d vector bundles. The
// composition sum is checked against the moduli space divided by the
// Jacobian factor.
inline RatFun2 hp_moduli_fixed_det(int r, long d, int g) {
    check_genus(g);
    if (r < 1) throw UnsupportedRank("rank must be positive");
    if (std::gcd(static_cast<long>(r), d) != 1) throw NotCoprime("gcd(r, d) != 1");
    RatFun2 sum = to_ratfun(type_a_terms(r, d, g, true));
    RatFun2 viaspace = hp_moduli_space(GroupSpec::single(Family::GL, r), {d}, g);
    if (!rat_eq(RatFun2(sum.num * jacobian_factor(g), sum.den), viaspace))
        throw DefinitionMismatch("fixed-determinant sum disagrees with the moduli space");
    return sum;
}

enum class Specialization { poincare, chi_t, euler, signature };

inline Assignment assignment_for(Specialization k) {
    switch (k) {
        case Specialization::poincare: return Assignment::diagonal();
        case Specialization::chi_t: return Assignment::u_fixed(-1);
        case Specialization::euler: return Assignment::at(-1, -1);
        case Specialization::signature: return Assignment::at(-1, 1);
    }
    return {};
}

inline Substituted specialize(const BivarPoly& p, Specialization k) {
    return substitute(RatFun2(p), assignment_for(k));
}

// Common factors that could vanish at the evaluation point are cancelled
// first: the whole denominator if it divides, else (1+u), (1+v) and the
// (1 - (uv)^k).
inline RatFun2 reduce_for_substitution(const RatFun2& r) {
    if (r.den.total_degree() == 0) return r;
    try {
        return RatFun2(BivarPoly::div_exact(r.num, r.den));
    } catch (const NotDivisible&) {
    }
    RatFun2 s = cancel_factor(r, BivarPoly::binomial(1, 0)).first;
    s = cancel_factor(s, BivarPoly::binomial(0, 1)).first;
    for (int k = s.den.total_degree() / 2; k >= 1; --k) s = cancel_factor(s, one_minus_uv(k)).first;
    return s;
}

inline Substituted specialize(const RatFun2& r, Specialization k) {
    return substitute(reduce_for_substitution(r), assignment_for(k));
}

// prod_{k=2}^r (1 - (-t)^{k-1})^{g-1} (1 - (-t)^k)^{g-1}
inline UniPoly chi_t_fixed_det_product(int r, int g) {
    UniPoly p(1);
    for (int k = 2; k <= r; ++k) {
        UniPoly a = UniPoly(1) - UniPoly::t_pow(k - 1, (k - 1) % 2 == 0 ? 1 : -1);
        UniPoly b = UniPoly(1) - UniPoly::t_pow(k, k % 2 == 0 ? 1 : -1);
        p = p * a.pow(static_cast<unsigned>(g - 1)) * b.pow(static_cast<unsigned>(g - 1));
    }
    return p;
}

// Poincare series of the stack of all G-bundles from the generator degrees:
// ((1+t)^{2g}/(1-t^2))^m prod_{k>m} (1+t^{2d_k-1})^{2g}/((1-t^{2d_k-2})(1-t^{2d_k})).
inline UniRatFun stack_poincare_product(const std::vector<int>& exponents, int g) {
    UniRatFun f{UniPoly(1), UniPoly(1)};
    for (int d : exponents) {
        if (d == 1) {
            f.num = f.num * (UniPoly(1) + UniPoly::t_pow(1)).pow(static_cast<unsigned>(2 * g));
            f.den = f.den * (UniPoly(1) - UniPoly::t_pow(2));
        } else {
            f.num = f.num * (UniPoly(1) + UniPoly::t_pow(2 * d - 1)).pow(static_cast<unsigned>(2 * g));
            f.den = f.den * (UniPoly(1) - UniPoly::t_pow(2 * d - 2)) * (UniPoly(1) - UniPoly::t_pow(2 * d));
        }
    }
    return f;
}

}  // namespace hodge
