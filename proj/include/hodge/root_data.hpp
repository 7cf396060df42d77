#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace hodge {

enum class Family { GL, SL, SOodd, Sp, SOeven };

// One simple factor. `rank` is the matrix size for GL/SL, and the Lie rank
// r for SO_{2r+1}, Sp_r and SO_{2r}.
struct Factor {
    Family family;
    int rank;

    // dimension of the maximal torus
    int torus_rank() const { return family == Family::SL ? rank - 1 : rank; }
    int ambient_dim() const { return rank; }
    int semisimple_rank() const {
        return (family == Family::GL || family == Family::SL) ? rank - 1 : rank;
    }
    bool operator==(const Factor&) const = default;

    std::string name() const {
        switch (family) {
            case Family::GL: return "GL" + std::to_string(rank);
            case Family::SL: return "SL" + std::to_string(rank);
            case Family::SOodd: return "SO" + std::to_string(2 * rank + 1);
            case Family::Sp: return "Sp" + std::to_string(rank);
            case Family::SOeven: return "SO" + std::to_string(2 * rank);
        }
        return "?";
    }
};

using Degree = std::vector<long>;

struct GroupSpec {
    std::vector<Factor> factors;

    bool operator==(const GroupSpec&) const = default;

    std::string to_string() const {
        std::string s;
        for (const auto& f : factors) s += (s.empty() ? "" : "x") + f.name();
        return s;
    }

    static GroupSpec single(Family f, int rank) {
        GroupSpec g{{{f, rank}}};
        g.validate();
        return g;
    }

    void validate() const {
        if (factors.empty()) throw InvalidArgument("group has no factors");
        for (const auto& f : factors) {
            if (f.rank < 1) throw UnsupportedRank(f.name() + ": rank must be positive");
            if (f.family == Family::SL && f.rank < 2) throw UnsupportedRank("SL1 is trivial");
            if (f.family == Family::SOeven && f.rank < 2)
                throw UnsupportedRank("SO_{2r} needs r >= 2");
        }
    }

    // "GL3", "SL4", "SO5", "SO8", "Sp3", products joined by 'x'
    static GroupSpec parse(const std::string& text) {
        GroupSpec g;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find('x', pos);
            std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            g.factors.push_back(parse_factor(tok));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        g.validate();
        return g;
    }

    // Comma separated per-factor degrees; empty means all zero.
    Degree parse_degree(const std::string& text) const {
        Degree d(factors.size(), 0);
        if (!text.empty()) {
            std::vector<std::string> parts;
            std::size_t pos = 0;
            for (;;) {
                std::size_t next = text.find(',', pos);
                parts.push_back(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
            if (parts.size() != factors.size())
                throw ParseError("degree '" + text + "' has " + std::to_string(parts.size()) +
                                 " entries, group has " + std::to_string(factors.size()) + " factors");
            for (std::size_t k = 0; k < parts.size(); ++k) {
                try {
                    std::size_t used = 0;
                    d[k] = std::stol(parts[k], &used);
                    if (used != parts[k].size()) throw ParseError("trailing characters");
                } catch (const std::logic_error&) {
                    throw ParseError("bad degree entry '" + parts[k] + "'");
                }
            }
        }
        check_degree(d);
        return d;
    }

    void check_degree(const Degree& d) const {
        if (d.size() != factors.size()) throw InvalidArgument("degree shape does not match group");
        for (std::size_t k = 0; k < d.size(); ++k) {
            switch (factors[k].family) {
                case Family::GL: break;
                case Family::SL:
                case Family::Sp:
                    if (d[k] != 0) throw InvalidArgument(factors[k].name() + " is simply connected; degree must be 0");
                    break;
                case Family::SOodd:
                case Family::SOeven:
                    if (d[k] != 0 && d[k] != 1)
                        throw InvalidArgument(factors[k].name() + " degree lives in Z/2; use 0 or 1");
                    break;
            }
        }
    }

    // Every degree class of pi_1 G, with GL factors restricted to 0..n-1
    // (tensoring by a line bundle shifts the degree by n).
    std::vector<Degree> degree_classes() const {
        std::vector<Degree> out{Degree{}};
        for (const auto& f : factors) {
            long count = 1;
            if (f.family == Family::GL) count = f.rank;
            if (f.family == Family::SOodd || f.family == Family::SOeven) count = 2;
            std::vector<Degree> nxt;
            for (const auto& d : out)
                for (long k = 0; k < count; ++k) {
                    Degree e = d;
                    e.push_back(k);
                    nxt.push_back(e);
                }
            out = std::move(nxt);
        }
        return out;
    }

    int torus_rank() const {
        int s = 0;
        for (const auto& f : factors) s += f.torus_rank();
        return s;
    }

private:
    static Factor parse_factor(const std::string& tok) {
        std::size_t k = 0;
        while (k < tok.size() && std::isalpha(static_cast<unsigned char>(tok[k]))) ++k;
        std::string fam = tok.substr(0, k), num = tok.substr(k);
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("bad group factor '" + tok + "'");
        int n = 0;
        try {
            n = std::stoi(num);
        } catch (const std::logic_error&) {
            throw ParseError("bad group factor '" + tok + "'");
        }
        if (fam == "GL") return {Family::GL, n};
        if (fam == "SL") return {Family::SL, n};
        if (fam == "Sp") return {Family::Sp, n};
        if (fam == "SO") {
            if (n % 2 == 1) {
                if (n < 3) throw UnsupportedRank("SO1 is trivial");
                return {Family::SOodd, (n - 1) / 2};
            }
            if (n < 4) throw UnsupportedRank("SO_{2r} needs r >= 2");
            return {Family::SOeven, n / 2};
        }
        throw ParseError("unknown group family '" + fam + "'");
    }
};

// Root datum realised in an ambient Q^n with the standard pairing: roots and
// coroots are integer vectors and <beta, x> is the dot product.
struct RootDatum {
    int ambient = 0;
    std::vector<IVec> lattice;          // Z-basis of pi_1 H
    std::vector<IVec> simple_roots;
    std::vector<IVec> simple_coroots;
    IMat cartan;                        // cartan[i][j] = <alpha_i, alpha_j^vee>
    std::vector<IVec> positive;         // coefficients in the simple roots
    std::vector<int> simple_ids;        // ids of the simple roots in the ambient datum

    int rank() const { return static_cast<int>(lattice.size()); }
    int n_simple() const { return static_cast<int>(simple_roots.size()); }
    int dim_center() const { return rank() - n_simple(); }
    std::uint32_t full_mask() const { return n_simple() == 0 ? 0u : ((1u << n_simple()) - 1u); }

    IVec root_vector(const IVec& coeffs) const {
        IVec v(static_cast<std::size_t>(ambient), 0);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            for (int a = 0; a < ambient; ++a) v[a] += coeffs[k] * simple_roots[k][a];
        return v;
    }
    // <beta, alpha_i^vee> for a positive root given by coefficients
    long pair_with_coroot(const IVec& coeffs, int i) const {
        long s = 0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * cartan[k][static_cast<std::size_t>(i)];
        return s;
    }
    Rat eval_root(const IVec& coeffs, const QVec& x) const { return dot(root_vector(coeffs), x); }
    Rat eval_simple(int i, const QVec& x) const { return dot(simple_roots[static_cast<std::size_t>(i)], x); }

    std::vector<int> heights() const {
        std::vector<int> h;
        for (const auto& c : positive) {
            long s = 0;
            for (long x : c) s += x;
            h.push_back(static_cast<int>(s));
        }
        return h;
    }
};

namespace detail {

inline IMat cartan_of(const std::vector<IVec>& roots, const std::vector<IVec>& coroots) {
    IMat a(roots.size(), IVec(roots.size()));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j) a[i][j] = dot(roots[i], coroots[j]);
    return a;
}

// Positive roots as simple-root coefficient vectors, generated by root
// strings from the Cartan matrix.
inline std::vector<IVec> positive_roots(const IMat& a) {
    const std::size_t n = a.size();
    std::set<IVec> all;
    std::vector<IVec> layer;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        layer.push_back(e);
        all.insert(e);
    }
    std::vector<IVec> out = layer;
    while (!layer.empty()) {
        std::set<IVec> next;
        for (const auto& b : layer)
            for (std::size_t i = 0; i < n; ++i) {
                long q = 0;
                IVec down = b;
                for (;;) {
                    down[i] -= 1;
                    if (!all.count(down)) break;
                    ++q;
                }
                long pairing = 0;
                for (std::size_t k = 0; k < n; ++k) pairing += b[k] * a[k][i];
                if (q - pairing > 0) {
                    IVec up = b;
                    up[i] += 1;
                    if (!all.count(up)) next.insert(up);
                }
            }
        layer.assign(next.begin(), next.end());
        for (const auto& b : layer) {
            all.insert(b);
            out.push_back(b);
        }
    }
    return out;
}

}  // namespace detail

inline RootDatum build_root_system(const GroupSpec& spec) {
    spec.validate();
    RootDatum rd;
    for (const auto& f : spec.factors) rd.ambient += f.ambient_dim();
    int off = 0;
    auto unit = [&](int k) {
        IVec e(static_cast<std::size_t>(rd.ambient), 0);
        e[static_cast<std::size_t>(off + k)] = 1;
        return e;
    };
    auto diff = [&](int i, int j) {
        IVec e = unit(i);
        e[static_cast<std::size_t>(off + j)] -= 1;
        return e;
    };
    for (const auto& f : spec.factors) {
        const int r = f.rank;
        // type A chain theta_i - theta_{i+1}, shared by every family
        const int chain = r - 1;
        for (int i = 0; i < chain; ++i) {
            rd.simple_roots.push_back(diff(i, i + 1));
            rd.simple_coroots.push_back(diff(i, i + 1));
        }
        switch (f.family) {
            case Family::GL:
                for (int i = 0; i < r; ++i) rd.lattice.push_back(unit(i));
                break;
            case Family::SL:
                for (int i = 0; i < chain; ++i) rd.lattice.push_back(diff(i, i + 1));
                break;
            case Family::SOodd: {
                IVec co = unit(r - 1);
                co[static_cast<std::size_t>(off + r - 1)] = 2;
                rd.simple_roots.push_back(unit(r - 1));
                rd.simple_coroots.push_back(co);
                for (int i = 0; i < r; ++i) rd.lattice.push_back(unit(i));
                break;
            }
            case Family::Sp: {
                IVec root = unit(r - 1);
                root[static_cast<std::size_t>(off + r - 1)] = 2;
                rd.simple_roots.push_back(root);
                rd.simple_coroots.push_back(unit(r - 1));
                for (int i = 0; i < r; ++i) rd.lattice.push_back(unit(i));
                break;
            }
            case Family::SOeven: {
                IVec s = unit(r - 2);
                s[static_cast<std::size_t>(off + r - 1)] = 1;
                rd.simple_roots.push_back(s);
                rd.simple_coroots.push_back(s);
                for (int i = 0; i < r; ++i) rd.lattice.push_back(unit(i));
                break;
            }
        }
        off += f.ambient_dim();
    }
    rd.cartan = detail::cartan_of(rd.simple_roots, rd.simple_coroots);
    rd.positive = detail::positive_roots(rd.cartan);
    for (int i = 0; i < rd.n_simple(); ++i) rd.simple_ids.push_back(i);
    return rd;
}

inline std::vector<int> mask_indices(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

// Sub-datum whose simple roots are those in `keep` (same torus and lattice).
inline RootDatum levi_root_datum(const RootDatum& rd, std::uint32_t keep) {
    RootDatum l;
    l.ambient = rd.ambient;
    l.lattice = rd.lattice;
    const auto idx = mask_indices(keep, rd.n_simple());
    for (int i : idx) {
        l.simple_roots.push_back(rd.simple_roots[static_cast<std::size_t>(i)]);
        l.simple_coroots.push_back(rd.simple_coroots[static_cast<std::size_t>(i)]);
        l.simple_ids.push_back(rd.simple_ids[static_cast<std::size_t>(i)]);
    }
    l.cartan = detail::cartan_of(l.simple_roots, l.simple_coroots);
    for (const auto& c : rd.positive) {
        bool inside = true;
        for (int k = 0; k < rd.n_simple() && inside; ++k)
            if (c[static_cast<std::size_t>(k)] != 0 && !(keep & (1u << k))) inside = false;
        if (!inside) continue;
        IVec sub;
        for (int i : idx) sub.push_back(c[static_cast<std::size_t>(i)]);
        l.positive.push_back(sub);
    }
    return l;
}

// Degrees d_k of the generators of H*(BG): m ones for the centre, then
// exponent + 1 where the Weyl exponents are the dual partition of the
// positive-root height multiset.
inline std::vector<int> exponents_of(const RootDatum& rd) {
    std::vector<int> out(static_cast<std::size_t>(rd.dim_center()), 1);
    std::map<int, int> count;
    int hmax = 0;
    for (int h : rd.heights()) {
        ++count[h];
        hmax = std::max(hmax, h);
    }
    for (int h = 1; h <= hmax; ++h) {
        const int mult = count[h] - (count.count(h + 1) ? count[h + 1] : 0);
        for (int k = 0; k < mult; ++k) out.push_back(h + 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Table values, kept independent of the root computation for cross-checks.
inline std::vector<int> exponents_table(const GroupSpec& spec) {
    std::vector<int> out;
    for (const auto& f : spec.factors) {
        const int r = f.rank;
        switch (f.family) {
            case Family::GL: for (int k = 1; k <= r; ++k) out.push_back(k); break;
            case Family::SL: for (int k = 2; k <= r; ++k) out.push_back(k); break;
            case Family::SOodd:
            case Family::Sp: for (int k = 1; k <= r; ++k) out.push_back(2 * k); break;
            case Family::SOeven:
                for (int k = 1; k < r; ++k) out.push_back(2 * k);
                out.push_back(r);
                break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> exponents_of(const GroupSpec& spec) { return exponents_of(build_root_system(spec)); }

// Nilradical test: support of the positive root meets I.
inline bool in_nilradical(const IVec& coeffs, std::uint32_t I) {
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0 && (I & (1u << k))) return true;
    return false;
}

// 2 rho^I(alpha_i^vee) over two candidate root sets: the literal one
// (exists alpha in I with <beta, alpha^vee> > 0) and the nilradical of P^I
// (support of beta meets I).
inline long rho_pairing_literal(const RootDatum& rd, std::uint32_t I, int i) {
    const auto members = mask_indices(I, rd.n_simple());
    long s = 0;
    for (const auto& c : rd.positive) {
        bool lit = false;
        for (int a : members)
            if (rd.pair_with_coroot(c, a) > 0) lit = true;
        if (lit) s += rd.pair_with_coroot(c, i);
    }
    return s;
}

inline long rho_pairing_nilradical(const RootDatum& rd, std::uint32_t I, int i) {
    long s = 0;
    for (const auto& c : rd.positive)
        if (in_nilradical(c, I)) s += rd.pair_with_coroot(c, i);
    return s;
}

enum class RhoRule { strict, nilradical, literal };

// strict: both sets are evaluated and must agree.
inline Rat rho_pairing(const RootDatum& rd, std::uint32_t I, int i, RhoRule rule = RhoRule::strict) {
    if (!(I & (1u << i))) throw InvalidArgument("rho_pairing: simple root not in I");
    if (rule == RhoRule::literal) return Rat(rho_pairing_literal(rd, I, i));
    const long nil = rho_pairing_nilradical(rd, I, i);
    if (rule == RhoRule::strict) {
        const long literal = rho_pairing_literal(rd, I, i);
        if (literal != nil)
            throw DefinitionMismatch("2rho^I(alpha_" + std::to_string(i + 1) + "^vee) for I = " + std::to_string(I) +
                                     ": literal " + std::to_string(literal) + ", nilradical " + std::to_string(nil));
    }
    return Rat(nil);
}

struct LeviDatum {
    std::uint32_t I = 0;
    int rank = 0;
    int dimZ = 0;
    std::vector<int> exponents;
    int dimU = 0;
    std::vector<std::pair<int, Rat>> rho_pairings;  // (simple index in I, 2 rho^I(alpha^vee))
};

inline LeviDatum levi_datum(const RootDatum& rd, std::uint32_t I, RhoRule rule = RhoRule::nilradical) {
    if (I & ~rd.full_mask()) throw InvalidArgument("subset outside the simple roots");
    LeviDatum L;
    L.I = I;
    L.rank = rd.rank();
    const RootDatum levi = levi_root_datum(rd, rd.full_mask() & ~I);
    L.dimZ = levi.dim_center();
    L.exponents = exponents_of(levi);
    L.dimU = static_cast<int>(rd.positive.size() - levi.positive.size());
    for (int i : mask_indices(I, rd.n_simple())) L.rho_pairings.emplace_back(i, rho_pairing(rd, I, i, rule));
    return L;
}

// Representative of x mod Z in (0, 1].
inline Rat frac_rep(const Rat& x) {
    Rat y = x - Rat(floor_rat(x));
    if (y == 0) y = 1;
    return y;
}

inline QMat cartan_q(const RootDatum& rd) {
    QMat a(rd.cartan.size(), QVec(rd.cartan.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = rd.cartan[i][j];
    return a;
}

// Coordinates (varpi_alpha(X))_alpha of X, i.e. the solution c of
// A c = (alpha_i(X))_i; the central part of X is invisible to them.
inline QVec fund_weights(const RootDatum& rd, const QVec& x) {
    QVec y;
    for (int i = 0; i < rd.n_simple(); ++i) y.push_back(rd.eval_simple(i, x));
    auto c = solve(cartan_q(rd), y);
    if (!c) throw SingularSystem("Cartan matrix is singular");
    return *c;
}

inline Rat fund_weight(const RootDatum& rd, int i, const QVec& x) {
    return fund_weights(rd, x)[static_cast<std::size_t>(i)];
}

// Canonical lift of d to pi_1 H in ambient coordinates: d e_1 for GL, d e_r
// for SO, zero for SL and Sp.
inline IVec canonical_lift(const GroupSpec& spec, const Degree& d) {
    spec.check_degree(d);
    IVec x;
    for (std::size_t k = 0; k < spec.factors.size(); ++k) {
        const auto& f = spec.factors[k];
        IVec block(static_cast<std::size_t>(f.ambient_dim()), 0);
        if (f.family == Family::GL) block.front() = d[k];
        if (f.family == Family::SOodd || f.family == Family::SOeven) block.back() = d[k];
        x.insert(x.end(), block.begin(), block.end());
    }
    return x;
}

inline Rat fund_weight_mod_Z(const GroupSpec& spec, int i, const Degree& d) {
    const RootDatum rd = build_root_system(spec);
    if (i < 0 || i >= rd.n_simple()) throw InvalidArgument("simple root index out of range");
    return frac_rep(fund_weight(rd, i, to_q(canonical_lift(spec, d))));
}

// Projection of X onto the centre of the Levi with simple roots Delta \ I.
inline QVec project_to_center(const RootDatum& rd, std::uint32_t I, const QVec& x) {
    const auto J = mask_indices(rd.full_mask() & ~I, rd.n_simple());
    QVec mu = x;
    if (J.empty()) return mu;
    QMat a(J.size(), QVec(J.size()));
    QVec y(J.size());
    for (std::size_t r = 0; r < J.size(); ++r) {
        y[r] = rd.eval_simple(J[r], x);
        for (std::size_t c = 0; c < J.size(); ++c)
            a[r][c] = rd.cartan[static_cast<std::size_t>(J[r])][static_cast<std::size_t>(J[c])];
    }
    auto c = solve(a, y);
    if (!c) throw SingularSystem("restricted Cartan matrix is singular");
    for (std::size_t k = 0; k < J.size(); ++k)
        for (int t = 0; t < rd.ambient; ++t)
            mu[static_cast<std::size_t>(t)] -= (*c)[k] * rd.simple_coroots[static_cast<std::size_t>(J[k])][static_cast<std::size_t>(t)];
    return mu;
}

struct Pi1 {
    int free_rank = 0;
    std::vector<long> torsion;  // invariant factors > 1
    std::string to_string() const {
        std::string s;
        if (free_rank > 0) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (long t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
        return s.empty() ? "0" : s;
    }
};

// pi_1 G = pi_1 H / coroot lattice, via the Smith form of the coroots
// written in the lattice basis.
inline Pi1 fundamental_group(const RootDatum& rd) {
    IMat m;
    for (const auto& co : rd.simple_coroots) {
        auto c = coordinates(rd.lattice, to_q(co));
        if (!c) throw SingularSystem("coroot outside the lattice span");
        IVec row;
        for (const auto& x : *c) {
            if (!is_integer(x)) throw SingularSystem("coroot not in the lattice");
            row.push_back(x.get_num().get_si());
        }
        m.push_back(row);
    }
    Pi1 p;
    p.free_rank = rd.rank();
    if (!m.empty()) {
        for (long dk : smith_diagonal(m)) {
            if (dk != 0) --p.free_rank;
            if (dk > 1) p.torsion.push_back(dk);
        }
    }
    return p;
}

// True iff no proper Levi L^I (I nonempty) carries a degree delta over d
// with the same slope as d, i.e. every semistable bundle is stable. For
// each I we solve alpha(proj_L(X + sum n_b b^vee)) = 0 for alpha in I and
// test whether the solution n is integral.
inline bool good_case(const RootDatum& rd, const QVec& x) {
    const int n = rd.n_simple();
    for (std::uint32_t I = 1; I <= rd.full_mask(); ++I) {
        const auto idx = mask_indices(I, n);
        const QVec mu0 = project_to_center(rd, I, x);
        QMat m(idx.size(), QVec(idx.size()));
        QVec rhs(idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            const QVec col = project_to_center(rd, I, to_q(rd.simple_coroots[static_cast<std::size_t>(idx[c])]));
            for (std::size_t r = 0; r < idx.size(); ++r) m[r][c] = rd.eval_simple(idx[r], col);
        }
        for (std::size_t r = 0; r < idx.size(); ++r) rhs[r] = -rd.eval_simple(idx[r], mu0);
        auto sol = solve(m, rhs);
        if (!sol) throw SingularSystem("slope system is singular");
        if (std::all_of(sol->begin(), sol->end(), [](const Rat& q) { return is_integer(q); })) return false;
    }
    return true;
}

inline bool good_case(const GroupSpec& spec, const Degree& d) {
    return good_case(build_root_system(spec), to_q(canonical_lift(spec, d)));
}

}  // namespace hodge
