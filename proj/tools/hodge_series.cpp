// hodge_series: command line front end for the hodge headers.
//
//   hodge_series compute    --group GL2 --degree 1 --genus 2 --what fixed-det
//   hodge_series verify     --suite recursion --max-rank 3 --genus-list 2,3
//   hodge_series specialize --group GL2 --degree 1 --genus 2 --what fixed-det --at chi-t
//   hodge_series strata     --group SO5 --degree 1 --genus 2 --max-codim 12
//   hodge_series theta      --input tau.json
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 precondition failure.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "hodge/hodge.hpp"
#include "hodge/json_io.hpp"

using namespace hodge;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- inputs

struct Target {
    std::string group, degree, what = "semistable";
    std::optional<int> genus;
    bool allow_large_genus = false;

    GroupSpec spec;
    Degree deg;
};

void add_target_options(CLI::App* app, Target& t) {
    app->add_option("--group", t.group, "group, e.g. GL3, SO7, Sp2, GL2xSO5")->required();
    app->add_option("--degree", t.degree, "degree per factor, comma separated (default 0)");
    app->add_option("--genus", t.genus, "genus of the curve (>= 2)");
    app->add_option("--what", t.what, "which series")
        ->check(CLI::IsMember({"stack", "semistable", "moduli", "fixed-det", "classifying"}));
    app->add_flag("--allow-large-genus", t.allow_large_genus, "lift the genus cap of " + std::to_string(kDefaultMaxGenus));
}

void resolve(Target& t) {
    try {
        t.spec = GroupSpec::parse(t.group);
        t.deg = t.spec.parse_degree(t.degree);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (t.what == "classifying") return;
    if (!t.genus) throw UsageError("--genus is required for --what " + t.what);
    if (*t.genus > kDefaultMaxGenus && !t.allow_large_genus)
        throw UsageError("genus above " + std::to_string(kDefaultMaxGenus) + " needs --allow-large-genus");
    if (t.what == "fixed-det" && (t.spec.factors.size() != 1 || t.spec.factors[0].family != Family::GL))
        throw UsageError("fixed-det is defined for a single GL_r");
}

// Divides out common (1 - (uv)^k) factors, largest k first.
RatFun2 simplify(RatFun2 r) {
    if (r.den.total_degree() == 0) return r;
    try {
        return RatFun2(BivarPoly::div_exact(r.num, r.den));
    } catch (const NotDivisible&) {
    }
    for (int k = r.den.total_degree() / 2; k >= 1; --k) r = cancel_factor(r, one_minus_uv(k)).first;
    return r;
}

RatFun2 compute_series(const Target& t) {
    if (t.what == "classifying") return hp_classifying(t.spec);
    const int g = *t.genus;
    if (t.what == "stack") return simplify(a_series(t.spec, g));
    if (t.what == "semistable") return simplify(hp_semistable_closed(t.spec, t.deg, g));
    if (t.what == "moduli") {
        RatFun2 m = hp_moduli_space(t.spec, t.deg, g);
        const RootDatum rd = build_root_system(t.spec);
        const int dim = (g - 1) * (rd.rank() + 2 * static_cast<int>(rd.positive.size())) + rd.dim_center();
        return RatFun2(to_polynomial(m, 2 * dim));
    }
    const int r = t.spec.factors[0].rank;
    return RatFun2(to_polynomial(hp_moduli_fixed_det(r, t.deg[0], g), 2 * (g - 1) * (r * r - 1)));
}

// ---------------------------------------------------------------- printing

std::string plain(const RatFun2& r) {
    if (r.den == BivarPoly(1)) return r.num.to_string();
    auto wrap = [](const BivarPoly& p) { return p.size() > 1 ? "(" + p.to_string() + ")" : p.to_string(); };
    return wrap(r.num) + " / " + wrap(r.den);
}

std::string latex_mono(int i, int j) {
    std::string s;
    if (i == j && i > 0) return i == 1 ? "uv" : "(uv)^{" + std::to_string(i) + "}";
    if (i > 0) s += i == 1 ? "u" : "u^{" + std::to_string(i) + "}";
    if (j > 0) s += j == 1 ? "v" : "v^{" + std::to_string(j) + "}";
    return s;
}

std::string latex_poly(const BivarPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        Int c = t.c;
        const bool neg = c < 0;
        if (neg) c = -c;
        s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        const std::string m = latex_mono(t.i, t.j);
        if (m.empty())
            s += c.get_str();
        else
            s += (c == 1 ? "" : c.get_str()) + m;
    }
    return s;
}

// prod_k (1 - (uv)^k)^{m_k} when the denominator has that shape
std::string latex_den(const BivarPoly& den) {
    BivarPoly rest = den;
    std::vector<std::pair<int, int>> fac;
    for (int k = den.total_degree() / 2; k >= 1 && rest.total_degree() > 0; --k) {
        int m = 0;
        for (;;) {
            try {
                rest = BivarPoly::div_exact(rest, one_minus_uv(k));
                ++m;
            } catch (const NotDivisible&) {
                break;
            }
        }
        if (m > 0) fac.emplace_back(k, m);
    }
    if (!(rest == BivarPoly(1))) return latex_poly(den);
    std::string s;
    for (auto it = fac.rbegin(); it != fac.rend(); ++it) {
        s += "(1 - " + latex_mono(it->first, it->first) + ")";
        if (it->second > 1) s += "^{" + std::to_string(it->second) + "}";
    }
    return s;
}

std::string latex(const RatFun2& r) {
    if (r.den == BivarPoly(1)) return latex_poly(r.num);
    return "\\frac{" + latex_poly(r.num) + "}{" + latex_den(r.den) + "}";
}

json degree_json(const Degree& d) {
    json a = json::array();
    for (long x : d) a.push_back(x);
    return a;
}

// ---------------------------------------------------------------- compute

struct ComputeOpts {
    Target t;
    std::string format = "plain";
    std::optional<int> expand;
};

int cmd_compute(ComputeOpts& o) {
    resolve(o.t);
    if (o.expand && *o.expand < 0) throw UsageError("--expand must be nonnegative");
    const RatFun2 r = compute_series(o.t);
    std::optional<TruncSeries2> s;
    if (o.expand) s = expand_series(r, *o.expand);
    if (o.format == "json") {
        json j;
        j["group"] = o.t.spec.to_string();
        j["degree"] = degree_json(o.t.deg);
        if (o.t.genus) j["genus"] = *o.t.genus;
        j["what"] = o.t.what;
        j["num"] = to_json(r.num);
        j["den"] = to_json(r.den);
        if (s) j["series"] = to_json(*s);
        std::cout << j.dump(2) << '\n';
    } else if (o.format == "latex") {
        std::cout << latex(r) << '\n';
        if (s) std::cout << latex_poly(s->to_poly()) << " + O(" << *o.expand + 1 << ")\n";
    } else {
        std::cout << plain(r) << '\n';
        if (s) std::cout << "series to order " << *o.expand << ": " << s->to_poly().to_string() << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- specialize

struct SpecializeOpts {
    Target t;
    std::string at = "poincare";
    std::string format = "plain";
};

Specialization specialization_of(const std::string& s) {
    if (s == "chi-t") return Specialization::chi_t;
    if (s == "euler") return Specialization::euler;
    if (s == "signature") return Specialization::signature;
    return Specialization::poincare;
}

int cmd_specialize(SpecializeOpts& o) {
    resolve(o.t);
    const RatFun2 r = compute_series(o.t);
    const Substituted res = specialize(r, specialization_of(o.at));
    std::string text;
    json j;
    j["group"] = o.t.spec.to_string();
    j["degree"] = degree_json(o.t.deg);
    j["what"] = o.t.what;
    j["at"] = o.at;
    if (const Rat* q = std::get_if<Rat>(&res)) {
        text = q->get_str();
        j["value"] = text;
    } else {
        const auto& f = std::get<UniRatFun>(res);
        UniPoly den = f.den, num = f.num;
        if (den.degree() == 0) {
            const Rat c = den.coeff(0);
            num = num * UniPoly(Rat(1) / c);
            den = UniPoly(1);
        }
        auto wrap = [](const UniPoly& q) {
            const std::string t = q.to_string();
            return t.find(' ') == std::string::npos ? t : "(" + t + ")";
        };
        text = den == UniPoly(1) ? num.to_string() : wrap(num) + " / " + wrap(den);
        json n = json::array(), d = json::array();
        for (int k = 0; k <= num.degree(); ++k) n.push_back(num.coeff(k).get_str());
        for (int k = 0; k <= den.degree(); ++k) d.push_back(den.coeff(k).get_str());
        j["num"] = n;
        j["den"] = d;
    }
    if (o.format == "json")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text << '\n';
    return 0;
}

// ---------------------------------------------------------------- strata

struct StrataOpts {
    Target t;
    long max_codim = 12;
};

int cmd_strata(StrataOpts& o) {
    o.t.what = "semistable";
    resolve(o.t);
    if (o.max_codim < 0) throw UsageError("--max-codim must be nonnegative");
    std::cout << strata_csv(enumerate_hn_types(o.t.spec, o.t.deg, *o.t.genus, o.max_codim));
    return 0;
}

// ---------------------------------------------------------------- theta

int cmd_theta(const std::string& input) {
    json j;
    try {
        if (input == "-") {
            j = json::parse(std::cin);
        } else {
            std::ifstream in(input);
            if (!in) throw UsageError("cannot open " + input);
            j = json::parse(in);
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad JSON: ") + e.what());
    }
    PeriodMatrix p;
    try {
        p = period_matrix_from_json(j);
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad period matrix: ") + e.what());
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    const Validation v = validate_period_matrix(p);
    if (!v.valid) {
        for (const auto& d : v.diagnostics) std::cerr << "invalid period matrix: " << d << '\n';
        return kExitPrecondition;
    }
    const ThetaCoefficients t = theta_coefficients(p);
    const CRat det = change_of_basis_determinant(p);
    json out;
    out["g"] = p.g;
    out["A"] = to_json(t.A);
    out["B"] = to_json(t.B);
    out["basis_consistent"] = basis_consistent(p);
    out["det"] = json::array({det.re.get_str(), det.im.get_str()});
    std::cout << out.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    std::function<std::string()> run;  // "" on success, otherwise the reason
};

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HODGE_SERIES_THREADS")) {
        try {
            const long k = std::stol(env);
            if (k >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(k));
        } catch (const std::logic_error&) {
        }
    }
    return n;
}

std::vector<Outcome> run_checks(const std::vector<Check>& checks) {
    std::vector<Outcome> out(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < checks.size();) {
            out[k].name = checks[k].name;
            try {
                out[k].detail = checks[k].run();
                out[k].pass = out[k].detail.empty();
            } catch (const std::exception& e) {
                out[k].detail = e.what();
            }
        }
    };
    const unsigned n = std::min<unsigned>(thread_cap(), static_cast<unsigned>(std::max<std::size_t>(1, checks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

std::string label(const GroupSpec& s, const Degree& d) {
    std::string r = s.to_string() + ",d=";
    for (std::size_t k = 0; k < d.size(); ++k) r += (k ? ";" : "") + std::to_string(d[k]);
    return r;
}

std::vector<GroupSpec> groups_up_to(int max_rank) {
    std::vector<GroupSpec> out;
    for (int r = 1; r <= max_rank; ++r) out.push_back(GroupSpec::single(Family::GL, r));
    for (int r = 2; r <= max_rank; ++r) out.push_back(GroupSpec::single(Family::SL, r));
    for (int r = 1; r <= max_rank; ++r) out.push_back(GroupSpec::single(Family::SOodd, r));
    for (int r = 1; r <= max_rank; ++r) out.push_back(GroupSpec::single(Family::Sp, r));
    for (int r = 2; r <= max_rank; ++r) out.push_back(GroupSpec::single(Family::SOeven, r));
    return out;
}

struct VerifyOpts {
    std::string suite = "all";
    int max_rank = 3;
    std::vector<int> genus_list{2, 3};
    int order = 20;
    std::string format = "plain";
};

void recursion_checks(const VerifyOpts& o, std::vector<Check>& cs) {
    for (const auto& spec : groups_up_to(o.max_rank))
        for (const auto& d : spec.degree_classes())
            for (int g : o.genus_list) {
                const int N = o.order;
                cs.push_back({"recursion(" + label(spec, d) + ",g=" + std::to_string(g) + ",N=" + std::to_string(N) + ")",
                              [spec, d, g, N]() -> std::string {
                                  auto rep = verify_recursion(spec, d, g, N);
                                  if (rep.match) return "";
                                  const auto& m = *rep.first_mismatch;
                                  return "coefficient of u^" + std::to_string(m.i) + " v^" + std::to_string(m.j) +
                                         ": closed " + m.lhs.get_str() + ", recursion " + m.rhs.get_str();
                              }});
            }
}

void classical_checks(const VerifyOpts& o, std::vector<Check>& cs) {
    for (const auto& spec : groups_up_to(o.max_rank))
        for (const auto& d : spec.degree_classes())
            for (int g : o.genus_list) {
                const Factor f = spec.factors[0];
                cs.push_back({"classical(" + label(spec, d) + ",g=" + std::to_string(g) + ")", [spec, f, d, g]() -> std::string {
                                  return rat_eq(hp_semistable_classical(f.family, f.rank, d[0], g),
                                                hp_semistable_closed(spec, d, g))
                                             ? ""
                                             : "classical formula and closed formula differ";
                              }});
            }
}

void good_case_checks(const VerifyOpts& o, std::vector<Check>& cs) {
    for (const auto& spec : groups_up_to(o.max_rank))
        for (const auto& d : spec.degree_classes()) {
            const bool expected = [&] {
                const RootDatum rd = build_root_system(spec);
                if (rd.n_simple() == 0) return true;
                for (const auto& w : fund_weights(rd, to_q(canonical_lift(spec, d))))
                    if (is_integer(w)) return false;
                return true;
            }();
            cs.push_back({"good-case(" + label(spec, d) + ") = " + (expected ? "true" : "false"),
                          [spec, d, expected]() -> std::string {
                              const bool got = good_case(spec, d);
                              if (got != expected) return "lattice test disagrees with the weight test";
                              const auto& f = spec.factors[0];
                              if (f.family == Family::GL && got != (std::gcd(static_cast<long>(f.rank), d[0]) == 1))
                                  return "disagrees with gcd(r, d) = 1";
                              return "";
                          }});
        }
}

void corollary_checks(const VerifyOpts& o, std::vector<Check>& cs) {
    for (int r = 2; r <= std::max(2, o.max_rank); ++r)
        for (long d = 1; d < r; ++d) {
            if (std::gcd(static_cast<long>(r), d) != 1) continue;
            for (int g : o.genus_list) {
                const std::string tag = "(GL" + std::to_string(r) + ",d=" + std::to_string(d) + ",g=" + std::to_string(g) + ")";
                auto fixed = [r, d, g] {
                    return RatFun2(to_polynomial(hp_moduli_fixed_det(r, d, g), 2 * (g - 1) * (r * r - 1)));
                };
                cs.push_back({"chi-t" + tag + " = product formula", [=]() -> std::string {
                                  auto got = std::get<UniRatFun>(specialize(fixed(), Specialization::chi_t));
                                  return uni_eq(got, {chi_t_fixed_det_product(r, g), UniPoly(1)}) ? "" : "got " + got.num.to_string();
                              }});
                cs.push_back({"euler" + tag + " = 0", [=]() -> std::string {
                                  auto v = std::get<Rat>(specialize(fixed(), Specialization::euler));
                                  return v == 0 ? "" : "got " + v.get_str();
                              }});
                cs.push_back({"signature" + tag + " = 0", [=]() -> std::string {
                                  auto v = std::get<Rat>(specialize(fixed(), Specialization::signature));
                                  return v == 0 ? "" : "got " + v.get_str();
                              }});
                cs.push_back({"chi-t(moduli " + tag.substr(1) + " = 0", [=]() -> std::string {
                                  auto m = hp_moduli_space(GroupSpec::single(Family::GL, r), {d}, g);
                                  auto got = std::get<UniRatFun>(specialize(m, Specialization::chi_t));
                                  return got.num.is_zero() ? "" : "got " + got.num.to_string();
                              }});
            }
        }
    for (const auto& spec : groups_up_to(o.max_rank))
        for (int g : o.genus_list)
            cs.push_back({"poincare(stack " + spec.to_string() + ",g=" + std::to_string(g) + ") = product formula",
                          [spec, g]() -> std::string {
                              auto got = std::get<UniRatFun>(specialize(a_series(spec, g), Specialization::poincare));
                              return uni_eq(got, stack_poincare_product(exponents_of(spec), g)) ? "" : "product formula differs";
                          }});
}

int cmd_verify(const VerifyOpts& o) {
    if (o.max_rank < 1) throw UsageError("--max-rank must be positive");
    if (o.order < 0) throw UsageError("--order must be nonnegative");
    for (int g : o.genus_list)
        if (g < 2 || g > kDefaultMaxGenus) throw UsageError("genus list entries must lie in 2.." + std::to_string(kDefaultMaxGenus));
    std::vector<Check> cs;
    const bool all = o.suite == "all";
    if (all || o.suite == "recursion") recursion_checks(o, cs);
    if (all || o.suite == "classical") classical_checks(o, cs);
    if (all || o.suite == "good-case") good_case_checks(o, cs);
    if (all || o.suite == "corollaries") corollary_checks(o, cs);
    const auto res = run_checks(cs);
    std::size_t failed = 0;
    for (const auto& r : res) failed += r.pass ? 0 : 1;
    if (o.format == "json") {
        json j;
        j["suite"] = o.suite;
        j["checks"] = json::array();
        for (const auto& r : res) {
            json c;
            c["name"] = r.name;
            c["pass"] = r.pass;
            if (!r.pass) c["detail"] = r.detail;
            j["checks"].push_back(c);
        }
        j["passed"] = res.size() - failed;
        j["failed"] = failed;
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& r : res) {
            std::cout << r.name << ' ' << (r.pass ? "PASS" : "FAIL");
            if (!r.pass) std::cout << "  [" << r.detail << ']';
            std::cout << '\n';
        }
        std::cout << (res.size() - failed) << '/' << res.size() << " checks passed\n";
    }
    return failed == 0 ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hodge-Poincare series of moduli of G-bundles on curves"};
    app.require_subcommand(1);

    ComputeOpts co;
    auto* compute = app.add_subcommand("compute", "print a series as a rational function");
    add_target_options(compute, co.t);
    compute->add_option("--format", co.format)->check(CLI::IsMember({"plain", "json", "latex"}));
    compute->add_option("--expand", co.expand, "also print the expansion to this total degree");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run consistency checks");
    verify->add_option("--suite", vo.suite)->check(CLI::IsMember({"recursion", "classical", "good-case", "corollaries", "all"}));
    verify->add_option("--max-rank", vo.max_rank);
    verify->add_option("--genus-list", vo.genus_list)->delimiter(',');
    verify->add_option("--order", vo.order);
    verify->add_option("--format", vo.format)->check(CLI::IsMember({"plain", "json"}));

    SpecializeOpts so;
    auto* spec = app.add_subcommand("specialize", "evaluate a series at poincare, chi-t, euler or signature");
    add_target_options(spec, so.t);
    spec->add_option("--at", so.at)->check(CLI::IsMember({"poincare", "chi-t", "euler", "signature"}));
    spec->add_option("--format", so.format)->check(CLI::IsMember({"plain", "json"}));

    StrataOpts st;
    auto* strata = app.add_subcommand("strata", "list Harder-Narasimhan strata as CSV");
    strata->add_option("--group", st.t.group)->required();
    strata->add_option("--degree", st.t.degree);
    strata->add_option("--genus", st.t.genus)->required();
    strata->add_option("--max-codim", st.max_codim);
    strata->add_flag("--allow-large-genus", st.t.allow_large_genus);

    std::string tau_input;
    auto* theta = app.add_subcommand("theta", "theta-class coefficients of a period matrix (JSON in/out)");
    theta->add_option("--input", tau_input, "JSON file, or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*compute) return cmd_compute(co);
        if (*verify) return cmd_verify(vo);
        if (*spec) return cmd_specialize(so);
        if (*strata) return cmd_strata(st);
        if (*theta) return cmd_theta(tau_input);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }
    return kExitUsage;
}
