// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ospk/bethe.hpp"
#include "ospk/boundary.hpp"
#include "ospk/chain.hpp"
#include "ospk/rmatrix.hpp"
#include "ospk/scattering.hpp"
#include "ospk/thermo.hpp"

using namespace ospk;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

ParamMap pm(std::initializer_list<std::pair<const char*, const char*>> kv) {
    ParamMap p;
    for (auto& [k, v] : kv) p[k] = Param::parse(v);
    return p;
}

std::vector<GradingSpec> algebra_set() {
    std::vector<GradingSpec> out;
    for (const char* d : {"so:2", "so:3", "so:4", "so:5", "so:6", "so:7", "so:8", "sp:2", "sp:4", "sp:6", "osp:1:2",
                          "osp:2:2", "osp:2:4", "osp:4:2"})
        out.push_back(parse_algebra(d));
    return out;
}

// ---------------------------------------------------------------------------

Result c1_operator_algebra() {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    int bad = 0;
    for (const auto& s : algebra_set())
        if (!verify_pq_algebra(s).ok) {
            ++bad;
            r.detail += s.pretty() + " ";
        }
    double t = seconds_since(t0);
    r.pass = bad == 0 && t < 5;
    r.detail = std::to_string(bad) + " failing " + r.detail + "in " + fmt(t) + " s (limit 5 s)";
    return r;
}

Result c2_ybe_crossing() {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    int bad = 0;
    std::string which;
    for (const auto& s : algebra_set()) {
        if (!verify_ybe(s).ok) ++bad, which += "ybe:" + s.pretty() + " ";
        if (!verify_crossing_unitarity(s).ok) ++bad, which += "crossing:" + s.pretty() + " ";
    }
    double t = seconds_since(t0);
    r.pass = bad == 0 && t < 180;
    r.detail = std::to_string(bad) + " failing " + which + "in " + fmt(t) + " s (limit 180 s)";
    return r;
}

Result c3_reflection() {
    Result r;
    int n = 0, bad = 0, dual_bad = 0;
    bool display_point = false;
    for (const auto& k : catalog_solutions()) {
        ++n;
        if (!verify_reflection(k).ok) ++bad;
        if (!verify_dual_reflection(dualize_k(to_physical(k))).ok) ++dual_bad;
        if (k.family == Family::C1 && k.spec == parse_algebra("osp:4:2") && k.params.at("k5").str() == "3/5" &&
            k.params.at("l5").str() == "4/5" && k.params.at("l6").str() == "4/5")
            display_point = true;
    }
    std::set<std::string> fams;
    for (const auto& k : catalog_solutions()) fams.insert(to_string(k.family));
    r.pass = bad == 0 && dual_bad == 0 && display_point && fams.size() == 8;
    r.detail = std::to_string(n) + " solutions over " + std::to_string(fams.size()) + " families, " + std::to_string(bad) +
               " failing, " + std::to_string(dual_bad) + " dual failing, osp(4|2) display point " +
               (display_point ? "present" : "MISSING");
    return r;
}

Result c4_negative_controls() {
    Result r;
    std::vector<std::string> notes;
    auto control = [&](const char* alg, Family f) {
        GradingSpec s = parse_algebra(alg);
        bool rejected = false;
        try {
            make_k(s, f, f == Family::D1 ? pm({{"c", "1/2"}}) : ParamMap{});
        } catch (const BoundaryError&) {
            rejected = true;
        }
        bool fails = !verify_reflection(force_k(s, f, f == Family::D1 ? pm({{"c", "1/2"}}) : ParamMap{})).ok;
        if (!rejected || !fails) r.pass = false;
        notes.push_back(to_string(f) + "/" + s.pretty() + (rejected ? " rejected" : " ACCEPTED") +
                        (fails ? ", forced fails" : ", forced PASSES"));
    };
    control("so:5", Family::D1);
    control("so:5", Family::ANTIDIAG);
    control("osp:1:2", Family::ANTIDIAG);
    bool none = antidiagonal_solutions(parse_algebra("osp:1:2")).empty();
    if (!none) r.pass = false;
    for (const auto& n : notes) r.detail += n + "; ";
    r.detail += std::string("osp(1|2) antidiagonal search ") + (none ? "empty" : "NONEMPTY");
    return r;
}

// Expected diagonal families rebuilt from the proposition's formulas, with
// kappa = theta0 (m - n - 2) / 2.
std::set<std::string> expected_families(const GradingSpec& s) {
    int m = s.m(), n = s.n(), t0 = s.theta0();
    GaussQ kappa = GaussQ(mpq_class(t0 * (m - n - 2), 2));
    std::set<std::string> out;
    if (m % 2 == 0) out.insert("D1|");
    if (m >= 2) {
        MPoly c1 = MPoly::var(2), c2 = MPoly::var(3);
        MPoly g = c1 + c2 + MPoly(kappa - GaussQ(t0)) * c1 * c2;
        out.insert("D2|" + g.str({"u", "v", "c1", "c2"}));
    }
    for (int m1 = 0; 2 * m1 <= m; ++m1)
        for (int n1 = 0; 2 * n1 <= n; ++n1) {
            bool all_one = 2 * m1 == m && 2 * n1 == n, all_f = m1 == 0 && n1 == 0;
            if (all_one || all_f) continue;
            GaussQ den = kappa - GaussQ(t0 * (2 * m1 - 2 * n1 - 1));
            std::string c = den.is_zero() ? "oo" : (GaussQ(2) / den).str();
            out.insert("D3|" + std::to_string(m1) + "," + std::to_string(n1) + "|c=" + c);
        }
    if (m == 4 && n == 0) out.insert("D4|");
    return out;
}

std::set<std::string> found_families(const GradingSpec& s) {
    std::set<std::string> out;
    for (const auto& f : classify_diagonal(s)) {
        if (!f.verified) out.insert("UNVERIFIED " + f.family);
        std::string key = f.family + "|";
        if (f.family == "D3") {
            key += std::to_string(f.ints.at("m1")) + "," + std::to_string(f.ints.at("n1")) + "|" + f.fixed.value_or("?");
        } else {
            for (const auto& c : f.constraints) key += c;
        }
        out.insert(key);
    }
    return out;
}

Result c5_classification() {
    Result r;
    for (const char* a : {"so:4", "so:5", "so:6", "sp:2", "sp:4", "osp:2:2"}) {
        GradingSpec s = parse_algebra(a);
        auto want = expected_families(s), got = found_families(s);
        bool eq = want == got;
        r.pass = r.pass && eq;
        r.detail += s.pretty() + (eq ? " ok" : " MISMATCH") + " (" + std::to_string(got.size()) + "); ";
        if (!eq) {
            for (const auto& w : want)
                if (!got.count(w)) r.detail += "missing " + w + "; ";
            for (const auto& g : got)
                if (!want.count(g)) r.detail += "extra " + g + "; ";
        }
    }
    return r;
}

struct ChainCase {
    const char* algebra;
    const char* label;
    std::optional<Family> family;
    ParamMap params;
};

std::vector<ChainCase> pseudo_vacuum_cases() {
    return {
        {"so:3", "I", std::nullopt, {}},
        {"so:3", "D3", Family::D3, pm({{"m1", "1"}})},
        {"so:4", "I", std::nullopt, {}},
        {"so:4", "D1", Family::D1, pm({{"c", "1/2"}})},
        {"so:4", "D3", Family::D3, pm({{"m1", "1"}})},
        {"so:4", "D4", Family::D4, pm({{"c2", "1/2"}, {"c3", "1/3"}})},
        {"sp:2", "I", std::nullopt, {}},
        {"sp:2", "D1", Family::D1, pm({{"c", "1/2"}})},
    };
}

ChainContext chain_for(const ChainCase& c, int N) {
    GradingSpec s = parse_algebra(c.algebra);
    if (!c.family) return make_chain(s, N);
    return make_chain(s, N, make_k(s, *c.family, c.params));
}

Result c6_pseudo_vacuum() {
    Result r;
    int n = 0, bad = 0;
    for (const auto& c : pseudo_vacuum_cases())
        for (int N = 1; N <= 2; ++N) {
            ChainContext ctx = chain_for(c, N);
            GMat<RatFunc> t = transfer_matrix_exact(ctx);
            RatFunc L = pseudo_vacuum_eigenvalue(ctx);
            bool ok = t.m.get(0, 0) == L;
            for (int i = 1; i < t.m.rows(); ++i) ok = ok && t.m.get(i, 0) == RatFunc(0);
            ++n;
            if (!ok) {
                ++bad;
                r.detail += std::string(c.algebra) + " " + c.label + " N=" + std::to_string(N) + " MISMATCH; ";
            }
        }
    // anchor: t(0) = d kappa^2 for one site with K = 1 (R(0) = -kappa P)
    GradingSpec so3 = parse_algebra("so:3");
    GaussQ anchor = pseudo_vacuum_eigenvalue(make_chain(so3, 1)).eval_exact(GaussQ(0));
    GaussQ oracle = GaussQ(3) * GaussQ(mpq_class(1, 4));
    bool anchor_ok = anchor == oracle && anchor == GaussQ(mpq_class(3, 4));
    r.pass = bad == 0 && anchor_ok;
    r.detail += std::to_string(n - bad) + "/" + std::to_string(n) + " exact; so(3) N=1 Lambda0(0) = " + anchor.str() +
                (anchor_ok ? " (= 3/4)" : " (expected 3/4)");
    return r;
}

Result c7_commuting() {
    Result r;
    std::vector<std::pair<std::string, ChainContext>> chains;
    for (const auto& c : pseudo_vacuum_cases()) chains.emplace_back(std::string(c.algebra) + " " + c.label, chain_for(c, 2));
    GradingSpec sp2 = parse_algebra("sp:2"), so4 = parse_algebra("so:4"), so5 = parse_algebra("so:5");
    chains.emplace_back("sp:2 D1(xi=7/4)", make_chain(sp2, 2, make_k(sp2, Family::D1, pm({{"xi", "7/4"}}))));
    chains.emplace_back("so:4 D4(2,3)", make_chain(so4, 2, make_k(so4, Family::D4, pm({{"xi2", "2"}, {"xi3", "3"}}))));
    chains.emplace_back("so:5 I", make_chain(so5, 2));
    std::mt19937 rng(20240917);
    std::uniform_real_distribution<double> re(-1.5, 1.5), im(-0.5, 0.5);
    long double worst = 0;
    std::string where;
    for (const auto& [name, ctx] : chains)
        for (int p = 0; p < 5; ++p) {
            cplxl l(re(rng), im(rng)), mu(re(rng), im(rng));
            CMatL a = transfer_matrix_ld(ctx, l), b = transfer_matrix_ld(ctx, mu);
            long double c = (a * b - b * a).cwiseAbs().maxCoeff();
            if (c > worst) worst = c, where = name;
        }
    r.pass = worst < 1e-10L;
    r.detail = std::to_string(chains.size()) + " chains x 5 pairs, max ||[t(l),t(m)]|| = " + fmt(double(worst)) + " (" + where +
               "), bound 1e-10";
    return r;
}

Result c8_crossing() {
    Result r;
    int n = 0, bad = 0;
    for (const char* a : {"so:3", "so:4", "sp:2"})
        for (int N = 1; N <= 2; ++N) {
            ChainContext ctx = make_chain(parse_algebra(a), N);
            GMat<RatFunc> t = transfer_matrix_exact(ctx);
            GaussQ ik = GaussQ::I() * GaussQ(ctx.spec.kappa());
            RatFunc sub(QPoly(std::vector<GaussQ>{-ik, GaussQ(-1)}));  // -l - i kappa
            bool ok = true;
            for (int i = 0; i < t.m.rows(); ++i)
                for (int j = 0; j < t.m.rows(); ++j) ok = ok && t.m.get(i, j).compose(sub) == t.m.get(i, j);
            ++n;
            if (!ok) ++bad, r.detail += std::string(a) + " N=" + std::to_string(N) + " FAIL; ";
        }
    r.pass = bad == 0;
    r.detail += std::to_string(n - bad) + "/" + std::to_string(n) + " exact";
    return r;
}

struct BetheCase {
    std::string name;
    ChainContext ctx;
};

Result c9_bethe() {
    auto t0 = std::chrono::steady_clock::now();
    GradingSpec sp2 = parse_algebra("sp:2"), so4 = parse_algebra("so:4"), so5 = parse_algebra("so:5");
    std::vector<BetheCase> cases = {
        {"sp(2) I", make_chain(sp2, 2)},
        {"sp(2) D1(7/4)", make_chain(sp2, 2, make_k(sp2, Family::D1, pm({{"xi", "7/4"}})))},
        {"so(4) D4(2,3)", make_chain(so4, 2, make_k(so4, Family::D4, pm({{"xi2", "2"}, {"xi3", "3"}})))},
        {"so(5) I", make_chain(so5, 2)},
    };
    const std::vector<cplx> pts = {{0.31, 0.17}, {-0.7, 0.4}, {1.3, -0.2}, {0.05, 0.9}, {2.1, 0.33}};
    Result r;
    for (auto& c : cases) {
        BetheProblem p = make_problem(c.ctx);
        std::vector<SpectrumRecord> dense;
        for (cplx z : pts) dense.push_back(spectrum(c.ctx, z));
        const int D = static_cast<int>(dense[0].eigenvalues.size());
        std::vector<bool> hit(D, false);
        int states = 0, unmatched = 0, loose = 0;
        const int maxM = 2 * c.ctx.N;
        std::vector<int> M(p.k, 0);
        std::function<void(int)> scan = [&](int a) {
            if (a == p.k) {
                SolveOptions opt;
                opt.seeds = 200;
                for (const auto& st : solve_bae(p, M, opt)) {
                    ++states;
                    if (!(st.residual < 1e-11)) ++loose;
                    bool all = true;
                    for (std::size_t q = 0; q < pts.size(); ++q) {
                        cplx L = dressing_eigenvalue(st, pts[q]);
                        bool any = false;
                        for (cplx e : dense[q].eigenvalues) any = any || std::abs(L - e) <= 1e-8 * std::max(1.0, std::abs(L));
                        all = all && any;
                    }
                    if (!all) {
                        ++unmatched;
                        continue;
                    }
                    cplx L0 = dressing_eigenvalue(st, pts[0]);
                    for (int e = 0; e < D; ++e)
                        if (std::abs(L0 - dense[0].eigenvalues[e]) <= 1e-8 * std::max(1.0, std::abs(L0))) hit[e] = true;
                }
                return;
            }
            for (int m = 0; m <= maxM; ++m) {
                M[a] = m;
                scan(a + 1);
            }
        };
        scan(0);
        int covered = 0;
        for (bool h : hit) covered += h;
        bool ok = unmatched == 0 && loose == 0 && covered >= 0.9 * D;
        r.pass = r.pass && ok;
        r.detail += c.name + ": " + std::to_string(states) + " states, " + std::to_string(unmatched) + " unmatched, coverage " +
                    std::to_string(covered) + "/" + std::to_string(D) + "; ";
    }
    double t = seconds_since(t0);
    r.pass = r.pass && t < 600;
    r.detail += "in " + fmt(t) + " s (limit 600 s)";
    return r;
}

std::vector<KernelContext> kernel_cases() {
    std::vector<KernelContext> out;
    for (auto [s, k] : {std::pair{Series::SoOdd, 2}, std::pair{Series::SoOdd, 3}, std::pair{Series::SoEven, 4},
                        std::pair{Series::Sp, 2}, std::pair{Series::Sp, 3}}) {
        KernelContext c;
        c.series = s;
        c.k = k;
        out.push_back(c);
    }
    return out;
}

Result c10_kernel_inversion() {
    double worst = 0;
    for (const auto& c : kernel_cases())
        for (int i = 1; i <= 200; ++i) {
            double w = 0.05 * i;
            Eigen::MatrixXd e = kernel_hat(c, w) * resolvent_hat(c, w) - Eigen::MatrixXd::Identity(c.k, c.k);
            worst = std::max(worst, e.cwiseAbs().maxCoeff());
        }
    return {worst < 1e-12, "so(5), so(7), so(8), sp(4), sp(6) on w = 0.05..10: max ||K R - I|| = " + fmt(worst) + ", bound 1e-12"};
}

Result c11_hole_energy() {
    double worst = 0;
    for (const auto& c : kernel_cases())
        for (int i = 1; i <= 200; ++i) {
            double w = 0.05 * i;
            worst = std::max(worst, (hole_energy_hat(c, w) - resolvent_hat(c, w) * driving_hat(c, w) / 2).cwiseAbs().maxCoeff());
        }
    bool k1_flagged = false;
    KernelContext so3;
    so3.series = Series::SoOdd;
    so3.k = 1;
    try {
        hole_energy_hat(so3, 0.5);
    } catch (const std::invalid_argument&) {
        k1_flagged = true;
    }
    return {worst < 1e-12 && k1_flagged,
            "max |closed - R a/2| = " + fmt(worst) + ", bound 1e-12; k = 1 " + (k1_flagged ? "excluded (flagged)" : "NOT flagged")};
}

Result c12_quadrature() {
    Result r;
    double worst = 0;
    for (double mu : {1.0, 2.0, 3.5}) {
        double oracle = std::lgamma((mu + 1) / 4) - std::lgamma((mu + 3) / 4);
        worst = std::max(worst, std::abs(gamma_identity_integral(mu) - oracle));
    }
    double anchor = gamma_identity_integral(1.0);
    bool anchor_ok = std::abs(anchor - 0.5 * std::log(M_PI)) < 1e-8 && std::abs(anchor - 0.572365) < 5e-7;
    r.pass = worst < 1e-8 && anchor_ok;
    r.detail = "mu in {1, 2, 3.5}: max error " + fmt(worst) + ", bound 1e-8; mu=1 gives " + std::to_string(anchor) + " (ln sqrt(pi))";
    return r;
}

Result c13_cross_representation() {
    AmplitudeSpec a;
    a.series = Series::SoEven;
    a.n = 6;
    const double ref = 0.2;
    cplx phase = k0_closed(6, ref) / k0_integral(a, ref);
    phase /= std::abs(phase);
    double worst = 0;
    std::string vals;
    for (double l : {0.7, 1.3}) {
        double e = std::abs(k0_closed(6, l) - phase * k0_integral(a, l));
        worst = std::max(worst, e);
        vals += " l=" + std::to_string(l).substr(0, 3) + ": " + fmt(e);
    }
    return {worst < 1e-6, "so(6) k0, phase fixed at l=0.2;" + vals + ", bound 1e-6"};
}

// e_x(l) = (l + i x/2) / (l - i x/2)
cplx e_oracle(double x, double l) { return cplx(l, x / 2) / cplx(l, -x / 2); }

Result c14_duality() {
    struct Case {
        Series s;
        int n;
        double xi, shift;
        const char* name;
    };
    double diff = 0, ratio = 0;
    for (const Case& c : {Case{Series::SoEven, 6, 2.3, 1.0, "so(6)"}, Case{Series::Sp, 4, 2.6, 2.0, "sp(4)"}}) {
        AmplitudeSpec a;
        a.series = c.s;
        a.n = c.n;
        a.family = Family::D1;
        a.xi["xi"] = c.xi;
        for (int i = 1; i <= 500; ++i) {
            double w = 0.01 * i;
            diff = std::max(diff, std::abs(duality_difference(a, w) - std::exp(-(2 * c.xi - c.shift) * w / 2)));
        }
        double xip = c.xi - c.shift / 2;
        for (double l : {0.2, 0.7, 1.3}) ratio = std::max(ratio, std::abs(duality_ratio(a, l) - e_oracle(2 * xip, l)));
    }
    return {diff < 1e-10 && ratio < 1e-8, "so(6) xi=2.3, sp(4) xi=2.6: Phi difference error " + fmt(diff) +
                                              " (bound 1e-10); beta/alpha vs e_{2xi'} error " + fmt(ratio) + " (bound 1e-8)"};
}

Result c15_bulk_unitarity() {
    double worst = 0;
    for (auto [s, n] : {std::pair{Series::SoEven, 6}, std::pair{Series::Sp, 4}})
        for (double l : {0.2, 0.7, 1.3}) worst = std::max(worst, std::abs(bulk_amplitude(s, n, l) * bulk_amplitude(s, n, -l) - 1.0));
    return {worst < 1e-8, "so(6), sp(4) at l in {0.2, 0.7, 1.3}: max |S0(l)S0(-l) - 1| = " + fmt(worst) + ", bound 1e-8"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
        {"operator algebra P, Q", c1_operator_algebra},
        {"Yang-Baxter and crossing-unitarity", c2_ybe_crossing},
        {"reflection equation, catalog and duals", c3_reflection},
        {"negative controls", c4_negative_controls},
        {"diagonal classification", c5_classification},
        {"pseudo-vacuum eigenvalue", c6_pseudo_vacuum},
        {"commuting transfer matrices", c7_commuting},
        {"transfer-matrix crossing", c8_crossing},
        {"Bethe roots vs dense spectrum", c9_bethe},
        {"kernel inversion", c10_kernel_inversion},
        {"hole-energy consistency", c11_hole_energy},
        {"quadrature engine (Gamma identity)", c12_quadrature},
        {"k0 closed vs integral", c13_cross_representation},
        {"duality difference and beta/alpha", c14_duality},
        {"bulk unitarity", c15_bulk_unitarity},
    };
    int failed = 0, idx = 0;
    for (const auto& [name, fn] : criteria) {
        ++idx;
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failed += !r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << idx << ": " << name << " -- " << r.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
