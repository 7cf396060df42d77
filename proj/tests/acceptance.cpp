// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <random>

#include "hodge/hodge.hpp"

using namespace hodge;

namespace {

BivarPoly U() { return BivarPoly::u(); }
BivarPoly V() { return BivarPoly::v(); }
BivarPoly UV() { return uv_pow(1); }
unsigned ug(int g) { return static_cast<unsigned>(g); }

struct Tally {
    std::size_t cases = 0;
    std::string first_failure;
    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && first_failure.empty()) first_failure = what;
    }
    // runs f, counting an exception as a failure
    template <class F>
    void guard(const std::string& what, F&& f) {
        try {
            check(f(), what);
        } catch (const std::exception& e) {
            check(false, what + " threw " + e.what());
        }
    }
};

int failures = 0;

template <class F>
void criterion(int id, const std::string& title, F&& body) {
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    body(t);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = t.first_failure.empty() && t.cases > 0;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << t.cases << " cases, "
              << static_cast<int>(sec * 1000) << " ms)";
    if (!ok) std::cout << " first failure: " << (t.first_failure.empty() ? "no cases" : t.first_failure);
    std::cout << std::endl;
}

std::string tag(const GroupSpec& s, const Degree& d, int g) {
    std::string r = s.to_string() + " d=";
    for (std::size_t k = 0; k < d.size(); ++k) r += (k ? "," : "") + std::to_string(d[k]);
    return r + " g=" + std::to_string(g);
}

RatFun2 gl1(int g) { return {(1 + U()).pow(ug(g)) * (1 + V()).pow(ug(g)), 1 - UV()}; }

RatFun2 gl2_explicit(int g, int shift) {
    RatFun2 first = gl1(g) * RatFun2((1 + U() * U() * V()).pow(ug(g)) * (1 + U() * V() * V()).pow(ug(g)),
                                     (1 - UV()) * (1 - uv_pow(2)));
    return first - RatFun2(uv_pow(shift), 1 - uv_pow(2)) * gl1(g) * gl1(g);
}

BivarPoly rk2_sum(int g) {
    BivarPoly a = (1 + U() * U() * V()) * (1 + U() * V() * V()), b = UV() * (1 + U()) * (1 + V()), s;
    for (int k = 0; k < g; ++k) s = s + a.pow(ug(g - 1 - k)) * b.pow(ug(k));
    return s;
}

std::vector<GroupSpec> recursion_groups() {
    std::vector<GroupSpec> gs;
    for (int r = 1; r <= 4; ++r) gs.push_back(GroupSpec::single(Family::GL, r));
    for (const std::string s : {"SL3", "SO5", "SO7", "Sp2", "Sp3", "SO6", "SO8"}) gs.push_back(GroupSpec::parse(s));
    return gs;
}

std::vector<GroupSpec> classical_up_to(int gl, int other) {
    std::vector<GroupSpec> gs;
    for (int r = 1; r <= gl; ++r) gs.push_back(GroupSpec::single(Family::GL, r));
    for (int r = 2; r <= gl; ++r) gs.push_back(GroupSpec::single(Family::SL, r));
    for (int r = 1; r <= other; ++r) gs.push_back(GroupSpec::single(Family::SOodd, r));
    for (int r = 1; r <= other; ++r) gs.push_back(GroupSpec::single(Family::Sp, r));
    for (int r = 2; r <= other; ++r) gs.push_back(GroupSpec::single(Family::SOeven, r));
    return gs;
}

PeriodMatrix random_siegel(std::mt19937& rng, int g) {
    std::uniform_int_distribution<int> num(-12, 12), den(1, 9);
    auto q = [&] { return ratio(num(rng), den(rng)); };
    const std::size_t n = static_cast<std::size_t>(g);
    QMat m(n, QVec(n));
    for (auto& row : m)
        for (auto& x : row) x = q();
    PeriodMatrix p{g, CMat(n, std::vector<CRat>(n))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Rat y = i == j ? Rat(1, 5) : Rat(0);
            for (std::size_t k = 0; k < n; ++k) y += m[i][k] * m[j][k];
            p.tau[i][j] = p.tau[j][i] = {q(), y};
        }
    return p;
}

}  // namespace

int main() {
    const auto gl2 = GroupSpec::parse("GL2");

    criterion(1, "rank-2 closed formula equals the worked expressions, g=2..5", [&](Tally& t) {
        for (int g = 2; g <= 5; ++g) {
            t.guard("d=1 g=" + std::to_string(g), [&] { return rat_eq(hp_semistable_closed(gl2, {1}, g), gl2_explicit(g, g)); });
            t.guard("d=0 g=" + std::to_string(g), [&] { return rat_eq(hp_semistable_closed(gl2, {0}, g), gl2_explicit(g, g + 1)); });
        }
    });

    criterion(2, "rank-2 fixed-determinant polynomial, g=2..5", [&](Tally& t) {
        for (int g = 2; g <= 5; ++g)
            t.guard("g=" + std::to_string(g), [&] {
                RatFun2 c = hp_semistable_closed(gl2, {1}, g);
                RatFun2 q(c.num * (1 - UV()), c.den * (1 + U()).pow(ug(g)) * (1 + V()).pow(ug(g)));
                const BivarPoly p = to_polynomial(q, 2 * (g - 1) * 3);
                return rat_eq(q, RatFun2(rk2_sum(g))) && p == rk2_sum(g);
            });
    });

    criterion(3, "classical formulas equal the closed formula (GL/SL <= 4, B/C/D <= 3 exact; type A rank 5 to order 24)",
              [&](Tally& t) {
                  for (const auto& spec : classical_up_to(4, 3)) {
                      const Factor f = spec.factors[0];
                      for (const auto& d : spec.degree_classes())
                          for (int g : {2, 3})
                              t.guard(tag(spec, d, g), [&] {
                                  return rat_eq(hp_semistable_classical(f.family, f.rank, d[0], g), hp_semistable_closed(spec, d, g));
                              });
                  }
                  for (const auto fam : {Family::GL, Family::SL}) {
                      const auto spec = GroupSpec::single(fam, 5);
                      for (const auto& d : spec.degree_classes())
                          for (int g : {2, 3})
                              t.guard(tag(spec, d, g) + " series", [&] {
                                  return to_series(hp_semistable_classical_terms(fam, 5, d[0], g), 24) ==
                                         to_series(hp_semistable_closed_terms(spec, d, g), 24);
                              });
                  }
              });

    criterion(4, "recursion identity to order 20", [&](Tally& t) {
        for (const auto& spec : recursion_groups())
            for (const auto& d : spec.degree_classes())
                for (int g : {2, 3}) t.guard(tag(spec, d, g), [&] { return verify_recursion(spec, d, g, 20).match; });
    });

    criterion(5, "HN enumeration equals the GL block oracle, r<=4, |d|<=4, maxCodim 24", [&](Tally& t) {
        for (int r = 1; r <= 4; ++r)
            for (long d = -4; d <= 4; ++d)
                for (int g : {2, 3})
                    t.guard(tag(GroupSpec::single(Family::GL, r), {d}, g), [&] {
                        std::vector<GLBlockType> e;
                        for (const auto& h : enumerate_hn_types(GroupSpec::single(Family::GL, r), {d}, g, 24))
                            e.push_back(gl_blocks_of(h, r));
                        std::sort(e.begin(), e.end());
                        return e == hn_gl_oracle(r, d, 24, g);
                    });
    });

    criterion(6, "chi_t / Euler / signature corollaries, r<=4 coprime", [&](Tally& t) {
        for (int r = 1; r <= 4; ++r)
            for (long d = 0; d < std::max(r, 1); ++d) {
                if (std::gcd(static_cast<long>(r), d) != 1) continue;
                for (int g : {2, 3}) {
                    const std::string w = "r=" + std::to_string(r) + " d=" + std::to_string(d) + " g=" + std::to_string(g);
                    RatFun2 f;
                    t.guard(w + " fixed-det polynomial", [&] {
                        f = RatFun2(to_polynomial(hp_moduli_fixed_det(r, d, g), 2 * (g - 1) * (r * r - 1)));
                        return true;
                    });
                    t.guard(w + " chi_t", [&] {
                        return uni_eq(std::get<UniRatFun>(specialize(f, Specialization::chi_t)), {chi_t_fixed_det_product(r, g), UniPoly(1)});
                    });
                    // a point for r = 1: Euler and signature are 1 there
                    if (r >= 2) {
                        t.guard(w + " euler", [&] { return std::get<Rat>(specialize(f, Specialization::euler)) == 0; });
                        t.guard(w + " signature", [&] { return std::get<Rat>(specialize(f, Specialization::signature)) == 0; });
                    }
                    t.guard(w + " chi_t(moduli space)", [&] {
                        auto m = hp_moduli_space(GroupSpec::single(Family::GL, r), {d}, g);
                        return std::get<UniRatFun>(specialize(m, Specialization::chi_t)).num.is_zero();
                    });
                }
            }
    });

    criterion(7, "Poincare specialization of the stack series equals the product formula, rank <= 4", [&](Tally& t) {
        for (const auto& spec : classical_up_to(4, 4))
            for (int g : {2, 3})
                t.guard(spec.to_string() + " g=" + std::to_string(g), [&] {
                    auto p = std::get<UniRatFun>(specialize(a_series(spec, g), Specialization::poincare));
                    return uni_eq(p, stack_poincare_product(exponents_of(spec), g));
                });
    });

    criterion(8, "expansions to order 24 have nonnegative integer coefficients", [&](Tally& t) {
        for (const auto& spec : recursion_groups())
            for (const auto& d : spec.degree_classes())
                for (int g : {2, 3})
                    t.guard(tag(spec, d, g), [&] {
                        for (const auto& term : to_series(hp_semistable_closed_terms(spec, d, g), 24).terms())
                            if (term.c < 0) return false;
                        return true;
                    });
    });

    criterion(9, "theta coefficients at i*I and basis consistency for 20 random tau", [&](Tally& t) {
        for (int g = 1; g <= 4; ++g)
            t.guard("i*I g=" + std::to_string(g), [&] {
                auto th = theta_coefficients(PeriodMatrix::identity_i(g));
                for (int j = 0; j < g; ++j)
                    for (int i = 0; i < g; ++i) {
                        if (!(th.A[j][i] == CRat{i == j ? Rat(1, 2) : Rat(0), 0})) return false;
                        if (!(th.B[j][i] == CRat{0, i == j ? Rat(-1, 2) : Rat(0)})) return false;
                    }
                return true;
            });
        std::mt19937 rng(20240917);
        for (int k = 0; k < 20; ++k) {
            const PeriodMatrix p = random_siegel(rng, 1 + k % 4);
            t.guard("random tau #" + std::to_string(k), [&] {
                return validate_period_matrix(p).valid && basis_consistent(p) && !change_of_basis_determinant(p).is_zero();
            });
        }
    });

    return failures == 0 ? 0 : 1;
}
