#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "series_formulas.hpp"

namespace hodge {

struct HNType {
    std::uint32_t I = 0;
    IVec lift;   // X in pi_1 H (ambient coordinates), representing delta
    QVec mu;     // projection of X to the centre of L^I
    long codim = 0;
};

// sum over positive beta with beta(mu) > 0 of (beta(mu) + g - 1)
inline long codim(const RootDatum& rd, const QVec& mu, int g) {
    Rat s = 0;
    for (const auto& c : rd.positive) {
        Rat b = rd.eval_root(c, mu);
        if (b > 0) s += b + (g - 1);
    }
    if (!is_integer(s)) throw NonIntegralCodim("codimension " + s.get_str() + " is not an integer");
    return s.get_num().get_si();
}

// All non-semistable HN types of codimension <= maxCodim. For fixed I the
// lifts are X = X0 + sum_{alpha in I} n_alpha alpha^vee, and
// y = (alpha(mu))_{alpha in I} is affine in n. The constraints y > 0 and
// sum_alpha w_alpha y_alpha <= maxCodim - (g-1) dim U cut out a simplex in
// y whose vertices bound n after mapping back.
inline std::vector<HNType> enumerate_hn_types(const RootDatum& rd, const IVec& x0, int g, long maxCodim) {
    if (maxCodim < 0) throw InvalidArgument("negative codimension bound");
    std::vector<HNType> out;
    const int ns = rd.n_simple();
    for (std::uint32_t I = 1; I <= rd.full_mask(); ++I) {
        const auto idx = mask_indices(I, ns);
        const std::size_t k = idx.size();
        std::vector<Rat> w(k, 0);
        long dimU = 0;
        for (const auto& c : rd.positive) {
            if (!in_nilradical(c, I)) continue;
            ++dimU;
            for (std::size_t a = 0; a < k; ++a) w[a] += c[static_cast<std::size_t>(idx[a])];
        }
        const Rat budget = Rat(maxCodim) - Rat(static_cast<long>(g - 1) * dimU);
        if (budget <= 0) continue;

        const QVec mu0 = project_to_center(rd, I, to_q(x0));
        std::vector<QVec> cols;
        QMat m(k, QVec(k));
        QVec y0(k);
        for (std::size_t c = 0; c < k; ++c)
            cols.push_back(project_to_center(rd, I, to_q(rd.simple_coroots[static_cast<std::size_t>(idx[c])])));
        for (std::size_t r = 0; r < k; ++r) {
            y0[r] = rd.eval_simple(idx[r], mu0);
            for (std::size_t c = 0; c < k; ++c) m[r][c] = rd.eval_simple(idx[r], cols[c]);
        }
        auto minv = inverse(m);
        if (!minv) throw SingularSystem("slope map is singular");

        std::vector<Int> lo(k), hi(k);
        for (std::size_t v = 0; v <= k; ++v) {
            QVec y(k, 0);
            if (v < k) y[v] = budget / w[v];
            for (std::size_t r = 0; r < k; ++r) {
                Rat n = 0;
                for (std::size_t c = 0; c < k; ++c) n += (*minv)[r][c] * (y[c] - y0[c]);
                Int f = floor_rat(n), cl = ceil_rat(n);
                if (v == 0 || f < lo[r]) lo[r] = f;
                if (v == 0 || cl > hi[r]) hi[r] = cl;
            }
        }

        std::vector<long> n(k);
        for (std::size_t r = 0; r < k; ++r) n[r] = lo[r].get_si();
        for (;;) {
            QVec mu = mu0;
            for (std::size_t c = 0; c < k; ++c)
                if (n[c] != 0)
                    for (std::size_t t = 0; t < mu.size(); ++t) mu[t] += n[c] * cols[c][t];
            bool ok = true;
            for (std::size_t r = 0; r < k && ok; ++r)
                if (rd.eval_simple(idx[r], mu) <= 0) ok = false;
            if (ok) {
                const long cd = codim(rd, mu, g);
                if (cd <= maxCodim) {
                    HNType h;
                    h.I = I;
                    h.lift = x0;
                    for (std::size_t c = 0; c < k; ++c)
                        for (std::size_t t = 0; t < h.lift.size(); ++t)
                            h.lift[t] += n[c] * rd.simple_coroots[static_cast<std::size_t>(idx[c])][t];
                    h.mu = std::move(mu);
                    h.codim = cd;
                    out.push_back(std::move(h));
                }
            }
            std::size_t r = 0;
            while (r < k && n[r] == hi[r].get_si()) {
                n[r] = lo[r].get_si();
                ++r;
            }
            if (r == k) break;
            ++n[r];
        }
    }
    std::sort(out.begin(), out.end(), [](const HNType& a, const HNType& b) {
        return std::tie(a.codim, a.I, a.lift) < std::tie(b.codim, b.I, b.lift);
    });
    return out;
}

inline std::vector<HNType> enumerate_hn_types(const GroupSpec& spec, const Degree& d, int g, long maxCodim) {
    check_genus(g);
    return enumerate_hn_types(build_root_system(spec), canonical_lift(spec, d), g, maxCodim);
}

struct GLBlockType {
    std::vector<std::pair<int, long>> blocks;  // (r_i, d_i)
    long codim = 0;
    bool operator==(const GLBlockType&) const = default;
    bool operator<(const GLBlockType& o) const { return std::tie(codim, blocks) < std::tie(o.codim, o.blocks); }
};

// Independent enumeration of GL_r HN types as block data with strictly
// decreasing slopes. Every prefix (R, D) of an HN polygon satisfies
// 0 < r D - R d <= codim, which bounds the search.
inline std::vector<GLBlockType> hn_gl_oracle(int r, long d, long maxCodim, int g) {
    std::vector<GLBlockType> out;
    std::vector<std::pair<int, long>> cur;
    std::function<void(int, long)> rec = [&](int R, long D) {
        if (R == r) {
            if (D != d || cur.size() < 2) return;
            long cd = 0;
            for (std::size_t i = 0; i < cur.size(); ++i)
                for (std::size_t j = i + 1; j < cur.size(); ++j) {
                    const auto [ri, di] = cur[i];
                    const auto [rj, dj] = cur[j];
                    cd += static_cast<long>(rj) * di - static_cast<long>(ri) * dj + static_cast<long>(ri) * rj * (g - 1);
                }
            if (cd <= maxCodim) out.push_back({cur, cd});
            return;
        }
        for (int ri = 1; R + ri <= r; ++ri) {
            const int R2 = R + ri;
            // candidate prefix degrees D2 with 0 < r D2 - R2 d <= maxCodim
            // (the final prefix must equal d exactly)
            long lo, hi;
            if (R2 == r) {
                lo = hi = d;
            } else {
                lo = static_cast<long>(floor_rat(ratio(static_cast<long>(R2) * d, r)).get_si()) + 1;
                if (Rat(static_cast<long>(r) * lo - static_cast<long>(R2) * d) <= 0) ++lo;
                hi = floor_rat(Rat(maxCodim + static_cast<long>(R2) * d, r)).get_si();
            }
            for (long D2 = lo; D2 <= hi; ++D2) {
                const long di = D2 - D;
                if (!cur.empty()) {
                    const auto [rp, dp] = cur.back();
                    // strictly decreasing slopes: di / ri < dp / rp
                    if (di * rp >= dp * ri) continue;
                }
                cur.emplace_back(ri, di);
                rec(R2, D2);
                cur.pop_back();
            }
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// GL_r HN type from enumerate_hn_types as block data.
inline GLBlockType gl_blocks_of(const HNType& h, int r) {
    GLBlockType b;
    b.codim = h.codim;
    int start = 0;
    for (int i = 0; i < r; ++i) {
        const bool cut = i == r - 1 || (h.I & (1u << i));
        if (!cut) continue;
        long deg = 0;
        for (int t = start; t <= i; ++t) deg += h.lift[static_cast<std::size_t>(t)];
        b.blocks.emplace_back(i + 1 - start, deg);
        start = i + 1;
    }
    return b;
}

class RecursionEngine {
public:
    RecursionEngine(const RootDatum& rd, int g) : rd_(rd), g_(g) {}

    // semistable series of L^I with degree represented by X, to order n
    TruncSeries2 levi_semistable(std::uint32_t I, const IVec& x, int n) {
        const RootDatum levi = levi_root_datum(rd_, rd_.full_mask() & ~I);
        const QVec xq = to_q(x);
        QVec key_w;
        if (levi.n_simple() > 0)
            for (const auto& q : fund_weights(levi, xq)) key_w.push_back(frac_rep(q));
        auto key = std::make_tuple(I, key_w, n);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        TruncSeries2 s = to_series(closed_terms(levi, xq, g_), n);
        cache_.emplace(key, s);
        return s;
    }

private:
    const RootDatum& rd_;
    int g_;
    std::map<std::tuple<std::uint32_t, QVec, int>, TruncSeries2> cache_;
};

inline TruncSeries2 recursion_rhs(const GroupSpec& spec, const Degree& d, int g, int N) {
    check_genus(g);
    if (N < 0) throw InvalidArgument("negative order");
    const RootDatum rd = build_root_system(spec);
    const IVec x0 = canonical_lift(spec, d);
    TruncSeries2 rhs = to_series(a_term(exponents_of(rd), g), N);
    RecursionEngine eng(rd, g);
    for (const auto& h : enumerate_hn_types(rd, x0, g, N)) {
        const int rest = N - static_cast<int>(h.codim);
        TruncSeries2 s = eng.levi_semistable(h.I, h.lift, rest).padded(N);
        s.shift(static_cast<int>(h.codim), static_cast<int>(h.codim));
        rhs -= s;
    }
    return rhs;
}

struct Mismatch {
    int i, j;
    Int lhs, rhs;
};

struct RecursionReport {
    bool match = true;
    std::optional<Mismatch> first_mismatch;
    std::size_t strata = 0;
};

inline RecursionReport verify_recursion(const GroupSpec& spec, const Degree& d, int g, int N) {
    RecursionReport rep;
    const TruncSeries2 lhs = to_series(hp_semistable_closed_terms(spec, d, g), N);
    const TruncSeries2 rhs = recursion_rhs(spec, d, g, N);
    rep.strata = enumerate_hn_types(spec, d, g, N).size();
    for (int s = 0; s <= N && rep.match; ++s)
        for (int i = 0; i <= s; ++i) {
            const int j = s - i;
            if (lhs.coeff(i, j) != rhs.coeff(i, j)) {
                rep.match = false;
                rep.first_mismatch = Mismatch{i, j, lhs.coeff(i, j), rhs.coeff(i, j)};
                break;
            }
        }
    return rep;
}

inline std::string rat_vector(const QVec& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + v[k].get_str();
    return s + "]";
}
inline std::string int_vector(const IVec& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s + "]";
}

inline std::string strata_csv(const std::vector<HNType>& types) {
    std::ostringstream os;
    os << "I,delta,mu,codim\n";
    for (const auto& h : types) os << h.I << ',' << int_vector(h.lift) << ',' << rat_vector(h.mu) << ',' << h.codim << '\n';
    return os.str();
}

}  // namespace hodge
