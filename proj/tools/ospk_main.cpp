// ospk: command-line front end. JSON report on stdout, one-line summary on stderr.
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ospk/bethe.hpp"
#include "ospk/boundary.hpp"
#include "ospk/chain.hpp"
#include "ospk/json_io.hpp"
#include "ospk/rmatrix.hpp"
#include "ospk/scattering.hpp"
#include "ospk/thermo.hpp"

using namespace ospk;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string format = "json";
    double tol = 1e-8;
    int threads = 0;
    int mem_budget_mb = 512;
    bool json_flag = false;
};

// Parsed command: handlers fill `report` and return whether the checks passed.
struct Outcome {
    json report;
    bool ok = true;
    std::string summary;
};

std::string sci(double x) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << x;
    return os.str();
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (int i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i).transpose()));
    return out;
}

// "0.3", "0.3+0.1i", "-2i", "1-0.5i"
cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    static const std::regex full(R"(^([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)(?:([+-][0-9.]*(?:[eE][+-]?[0-9]+)?)i)?$)");
    static const std::regex imag(R"(^([+-]?[0-9.]*(?:[eE][+-]?[0-9]+)?)i$)");
    std::smatch m;
    auto num = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (std::regex_match(s, m, full)) return {std::stod(m[1]), m[2].matched ? num(m[2]) : 0.0};
    if (std::regex_match(s, m, imag)) return {0.0, num(m[1])};
    throw UsageError("cannot parse complex number '" + raw + "'");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

// so(2k+1) for "so" together with a rank; "so-even" picks so(2k).
GradingSpec algebra_from(const std::string& algebra, const std::string& series, int k) {
    if (!algebra.empty()) return parse_algebra(algebra);
    if (series.empty() || k < 1) throw UsageError("give --algebra, or --series with --k");
    if (series == "so" || series == "so-odd") return algebra_of(Series::SoOdd, k);
    if (series == "so-even") return algebra_of(Series::SoEven, k);
    if (series == "sp") return algebra_of(Series::Sp, k);
    throw UsageError("series must be so, so-odd, so-even or sp");
}

Series amplitude_series(const std::string& series, int n) {
    if (series == "sp") return Series::Sp;
    if (series == "so" || series == "so-odd" || series == "so-even") return n % 2 ? Series::SoOdd : Series::SoEven;
    throw UsageError("series must be so or sp");
}

std::optional<KSolution> boundary_arg(const std::string& text, const GradingSpec& s) {
    if (text.empty()) return std::nullopt;
    return ksolution_from_json(load_json_arg(text), &s);
}

json verify_json(const VerifyReport& r) { return to_json(r); }

// ---- verify ---------------------------------------------------------------

Outcome run_verify(const std::string& what, const std::string& algebra, const std::string& ktext, bool flip_q, bool force,
                   bool dual) {
    Outcome o;
    if (what == "ybe" || what == "crossing") {
        if (algebra.empty()) throw UsageError("verify " + what + " needs --algebra");
        GradingSpec s = parse_algebra(algebra);
        VerifyReport r = what == "ybe" ? verify_ybe(s, flip_q) : verify_crossing_unitarity(s);
        o.report = verify_json(r);
        o.ok = r.ok;
        o.summary = r.identity + " " + s.pretty() + ": " + (r.ok ? "pass" : "FAIL");
        return o;
    }
    if (ktext.empty()) throw UsageError("verify reflection needs --k");
    std::optional<GradingSpec> fb;
    if (!algebra.empty()) fb = parse_algebra(algebra);
    KSolution k = ksolution_from_json(load_json_arg(ktext), fb ? &*fb : nullptr, force);
    VerifyReport r = verify_reflection(k);
    o.report = verify_json(r);
    o.report["k"] = to_json(k);
    o.ok = r.ok;
    if (dual) {
        VerifyReport d = verify_dual_reflection(dualize_k(to_physical(k)));
        o.report["dual"] = verify_json(d);
        o.ok = o.ok && d.ok;
    }
    o.summary = "reflection " + to_string(k.family) + " on " + k.spec.pretty() + ": " + (o.ok ? "pass" : "FAIL");
    return o;
}

// ---- catalog / classify ------------------------------------------------------

Outcome run_catalog(const std::string& algebra, bool verify) {
    Outcome o;
    json list = json::array();
    int n = 0, bad = 0;
    for (const auto& k : catalog_solutions()) {
        if (!algebra.empty() && k.spec != parse_algebra(algebra)) continue;
        json e = to_json(k);
        if (verify) {
            VerifyReport r = verify_reflection(k);
            VerifyReport d = verify_dual_reflection(dualize_k(to_physical(k)));
            e["reflection"] = r.ok ? "pass" : "fail";
            e["dual_reflection"] = d.ok ? "pass" : "fail";
            if (!r.ok || !d.ok) ++bad;
        }
        list.push_back(e);
        ++n;
    }
    o.report["solutions"] = list;
    o.ok = bad == 0;
    o.summary = std::to_string(n) + " catalog solutions" + (verify ? ", " + std::to_string(bad) + " failing" : "");
    return o;
}

Outcome run_classify(const std::string& algebra) {
    if (algebra.empty()) throw UsageError("classify diagonal needs --algebra");
    GradingSpec s = parse_algebra(algebra);
    Outcome o;
    json fams = json::array();
    std::vector<std::string> tags;
    for (const auto& f : classify_diagonal(s)) {
        fams.push_back(to_json(f));
        tags.push_back(f.family);
        o.ok = o.ok && f.verified;
    }
    o.report = {{"algebra", s.descriptor()}, {"families", fams}};
    std::string joined;
    for (const auto& t : tags) joined += (joined.empty() ? "" : ",") + t;
    o.summary = s.pretty() + " diagonal families: " + joined;
    return o;
}

// ---- spectrum / bethe ----------------------------------------------------------

ChainContext chain_from(const GradingSpec& s, int sites, const std::string& kminus, const std::string& kplus,
                        const RunConfig& cfg) {
    ChainContext ctx = make_chain(s, sites, boundary_arg(kminus, s), boundary_arg(kplus, s));
    ctx.mem_budget_bytes = std::size_t(cfg.mem_budget_mb) << 20;
    return ctx;
}

Outcome run_spectrum(const GradingSpec& s, int sites, const std::string& kminus, const std::string& kplus,
                     const std::string& lambda, const RunConfig& cfg) {
    ChainContext ctx = chain_from(s, sites, kminus, kplus, cfg);
    cplx lam = parse_complex(lambda);
    SpectrumRecord rec = spectrum(ctx, lam);
    std::vector<int> order(rec.eigenvalues.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const cplx &x = rec.eigenvalues[a], &y = rec.eigenvalues[b];
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    json ev = json::array();
    double worst = 0;
    for (int i : order) {
        json e = {{"value", cj(rec.eigenvalues[i])}, {"residual", rec.residuals[i]}};
        if (!rec.sectors[i].empty()) e["weight"] = rec.sectors[i];
        ev.push_back(e);
        worst = std::max(worst, rec.residuals[i]);
    }
    Outcome o;
    o.report = {{"algebra", s.descriptor()},      {"sites", sites},
                {"lambda", cj(lam)},              {"kminus", to_json(ctx.kminus)},
                {"eigenvalues", ev},              {"max_residual", worst},
                {"dimension", ctx.space_dim()}};
    o.ok = worst < cfg.tol;
    o.summary = std::to_string(ev.size()) + " eigenvalues, max residual " + sci(worst);
    return o;
}

Outcome run_bethe(const GradingSpec& s, int sites, const std::string& kminus, const std::string& Mtext, int seeds,
                  bool verify, const RunConfig& cfg) {
    ChainContext ctx = chain_from(s, sites, kminus, "", cfg);
    BetheProblem p = make_problem(ctx);
    std::vector<int> M = parse_int_list(Mtext);
    if (static_cast<int>(M.size()) == 1 && p.k > 1) M.resize(p.k, 0);
    if (static_cast<int>(M.size()) != p.k) throw UsageError("--M needs one occupation per root set (" + std::to_string(p.k) + ")");
    SolveOptions opt;
    opt.seeds = seeds;
    opt.threads = cfg.threads;
    auto states = solve_bae(p, M, opt);

    const std::vector<cplx> samples = {{0.3, 0.0}, {0.7, 0.2}, {-0.4, 0.5}, {1.1, -0.3}, {0.05, 0.9}};
    std::vector<SpectrumRecord> dense;
    if (verify)
        for (cplx l : samples) dense.push_back(spectrum(ctx, l));

    json out = json::array();
    int unmatched = 0;
    for (const auto& st : states) {
        json roots = json::array();
        for (int a = 0; a < p.k; ++a) {
            json set = json::array();
            for (cplx z : st.roots[a]) set.push_back(cj(z));
            roots.push_back({{"set", set_label(p.series, p.k, a)}, {"roots", set}});
        }
        json lam = json::array();
        bool matched = true;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            cplx L = dressing_eigenvalue(st, samples[i]);
            lam.push_back({{"lambda", cj(samples[i])}, {"value", cj(L)}});
            if (verify) {
                double best = 1e300;
                for (cplx e : dense[i].eigenvalues) best = std::min(best, std::abs(e - L) / std::max(1.0, std::abs(L)));
                matched = matched && best < cfg.tol;
            }
        }
        json e = {{"roots", roots},
                  {"residual", st.residual},
                  {"converged", st.converged},
                  {"branch", st.branch},
                  {"energy", energy(st)},
                  {"Lambda", lam}};
        if (verify) e["matches_spectrum"] = matched;
        if (!matched) ++unmatched;
        out.push_back(e);
    }
    Outcome o;
    o.report = {{"algebra", s.descriptor()},
                {"sites", sites},
                {"family", to_string(p.family)},
                {"M", M},
                {"quantum_numbers", quantum_numbers(p, M)},
                {"states", out}};
    o.ok = unmatched == 0;
    o.summary = std::to_string(states.size()) + " Bethe states in sector M=" + Mtext +
                (verify ? ", " + std::to_string(unmatched) + " unmatched" : "");
    return o;
}

// ---- thermo ----------------------------------------------------------------------

KernelContext kernel_from(const GradingSpec& s, const std::string& btext, const std::string& htext) {
    auto [series, k] = series_of(s);
    KernelContext c;
    c.series = series;
    c.k = k;
    if (!btext.empty()) {
        json b = load_json_arg(btext);
        c.family = parse_family(b.value("family", std::string("CUSTOM")));
        if (b.contains("params"))
            for (auto& [key, v] : b.at("params").items()) {
                if (key == "m") c.m = v.get<int>();
                else c.xi[key] = v.get<double>();
            }
    }
    if (!htext.empty())
        for (const auto& h : load_json_arg(htext)) c.holes.push_back({h.at(0).get<int>(), h.at(1).get<double>()});
    validate(c);
    return c;
}

json thermo_point(const KernelContext& c, double w, double& inv_err, double& hole_err) {
    Eigen::MatrixXd K = kernel_hat(c, w), R = resolvent_hat(c, w);
    inv_err = (K * R - Eigen::MatrixXd::Identity(c.k, c.k)).cwiseAbs().maxCoeff();
    json out = {{"omega", w}, {"kernel", mat_json(K)}, {"resolvent", mat_json(R)}, {"inversion_error", inv_err},
                {"driving", vec_json(driving_hat(c, w))}};
    Eigen::VectorXd er = hole_energy_from_resolvent(c, w);
    out["hole_energy_resolvent"] = vec_json(er);
    hole_err = 0;
    if (c.k >= 2) {
        Eigen::VectorXd ec = hole_energy_hat(c, w);
        hole_err = (ec - er).cwiseAbs().maxCoeff();
        out["hole_energy"] = vec_json(ec);
        out["hole_energy_error"] = hole_err;
    }
    DensityCorrection d = density_correction_hat(c, w);
    out["F"] = vec_json(d.F);
    out["G"] = vec_json(d.G);
    out["phi0"] = vec_json(d.phi0);
    out["phi1"] = vec_json(d.phi1);
    return out;
}

Outcome run_thermo(const KernelContext& c, const std::vector<double>& omegas, bool csv, double tol) {
    Outcome o;
    json pts = json::array();
    double worst_inv = 0, worst_hole = 0;
    if (csv) std::cout << "omega,sea,driving,hole_energy_resolvent,F,G,phi0,phi1,inversion_error\n";
    for (double w : omegas) {
        double ie, he;
        json p = thermo_point(c, w, ie, he);
        worst_inv = std::max(worst_inv, ie);
        worst_hole = std::max(worst_hole, he);
        if (csv) {
            for (int j = 0; j < c.k; ++j)
                std::cout << w << ',' << sea_label(c, j) << ',' << p["driving"][j] << ',' << p["hole_energy_resolvent"][j] << ','
                          << p["F"][j] << ',' << p["G"][j] << ',' << p["phi0"][j] << ',' << p["phi1"][j] << ',' << ie << '\n';
        }
        pts.push_back(p);
    }
    json seas = json::array();
    for (int j = 0; j < c.k; ++j) seas.push_back(sea_label(c, j));
    o.report = {{"series", to_string(c.series)}, {"k", c.k}, {"family", to_string(c.family)}, {"seas", seas},
                {"points", pts}, {"max_inversion_error", worst_inv}, {"max_hole_energy_error", worst_hole}};
    o.ok = worst_inv < tol && worst_hole < tol;
    o.summary = "thermo kernels: inversion " + sci(worst_inv) + ", hole energies " + sci(worst_hole);
    return o;
}

std::vector<double> omega_grid(const std::string& single, const std::string& grid) {
    if (!grid.empty()) {
        double a, b, h;
        char c1, c2;
        std::stringstream ss(grid);
        if (!(ss >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || h <= 0 || b < a)
            throw UsageError("--grid expects start:stop:step");
        std::vector<double> out;
        for (int i = 0; a + i * h <= b + 1e-12; ++i) out.push_back(a + i * h);
        return out;
    }
    return {single.empty() ? 0.5 : std::stod(single)};
}

// ---- scatter ------------------------------------------------------------------------

Outcome run_scatter_bulk(const std::string& series, int n, const std::string& lambda, double tol) {
    Series s = amplitude_series(series, n);
    double l = std::stod(lambda);
    cplx S = bulk_amplitude(s, n, l), Sm = bulk_amplitude(s, n, -l);
    double unit = std::abs(S * Sm - 1.0);
    Outcome o;
    o.report = {{"series", to_string(s)}, {"n", n}, {"lambda", l}, {"S0", cj(S)}, {"modulus", std::abs(S)},
                {"unitarity_error", unit}};
    o.ok = unit < tol;
    o.summary = "bulk S0 unitarity error " + sci(unit);
    return o;
}

Outcome run_scatter_boundary(const std::string& series, int n, const std::string& family, int m,
                             const std::vector<std::string>& xis, const std::string& lambda, int tau, bool cross,
                             double tol) {
    AmplitudeSpec a;
    a.series = amplitude_series(series, n);
    a.n = n;
    a.family = family.empty() ? Family::CUSTOM : parse_family(family);
    a.m = m;
    for (const auto& kv : xis) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--xi expects name=value");
        a.xi[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    validate(a);
    double l = std::stod(lambda);
    Outcome o;
    o.report = {{"series", to_string(a.series)}, {"n", n}, {"family", to_string(a.family)}, {"lambda", l}};
    if (a.family == Family::D3) o.report["m"] = m;
    json ren = json::object();
    for (const auto& [k, v] : renormalized(a)) ren[k] = v;
    o.report["renormalized"] = ren;

    cplx k1c = k1_closed(a, l, tau);
    o.report["k1_closed"] = cj(k1c);
    cplx total = k1c, k0c = 1.0;
    if (a.series != Series::Sp) {
        k0c = k0_closed(n, l);
        o.report["k0_closed"] = cj(k0c);
        total = k0c * k1c;
        o.report["amplitude"] = cj(total);
    }
    double unit = std::abs(std::abs(total) - 1.0);
    o.report["modulus_error"] = unit;
    o.ok = unit < tol;
    if (cross) {
        cplx k0i = k0_integral(a, l, tau);
        o.report["k0_integral"] = cj(k0i);
        if (a.family != Family::CUSTOM) {
            cplx k1i = k1_integral(a, l, tau);
            o.report["k1_integral"] = cj(k1i);
            double e1 = std::abs(k1i - k1c);
            o.report["k1_difference"] = e1;
            o.ok = o.ok && e1 < 1e-6;
        }
        if (a.series != Series::Sp) {
            double e0 = std::abs(k0i - k0c);
            o.report["k0_difference"] = e0;
            o.ok = o.ok && e0 < 1e-6;
        }
    }
    o.summary = "boundary amplitude " + to_string(a.family) + " at lambda=" + lambda + (o.ok ? ": pass" : ": FAIL");
    return o;
}

// ---- selftest -----------------------------------------------------------------------

Outcome run_selftest(bool quick) {
    Outcome o;
    json checks = json::array();
    auto add = [&](const std::string& name, bool ok, json detail = json::object()) {
        detail["check"] = name;
        detail["status"] = ok ? "pass" : "fail";
        checks.push_back(detail);
        o.ok = o.ok && ok;
    };
    for (const auto& s : catalog_algebras()) add("pq-algebra " + s.descriptor(), verify_pq_algebra(s).ok);
    std::vector<GradingSpec> ybe_set = {parse_algebra("so:3"), parse_algebra("sp:2")};
    if (!quick) ybe_set = catalog_algebras();
    for (const auto& s : ybe_set) {
        add("ybe " + s.descriptor(), verify_ybe(s).ok);
        if (!quick) add("crossing-unitarity " + s.descriptor(), verify_crossing_unitarity(s).ok);
    }
    for (const auto& k : catalog_solutions())
        add("reflection " + to_string(k.family) + " " + k.spec.descriptor(), verify_reflection(k).ok);
    if (!quick) {
        for (double mu : {1.0, 2.0, 3.5})
            add("gamma-identity mu=" + std::to_string(mu), std::abs(gamma_identity_integral(mu) - gamma_identity_closed(mu)) < 1e-8);
        for (auto [series, k] : {std::pair{Series::SoOdd, 2}, std::pair{Series::SoEven, 4}, std::pair{Series::Sp, 2}}) {
            KernelContext c;
            c.series = series;
            c.k = k;
            double worst = 0;
            for (int i = 1; i <= 200; ++i) {
                double w = 0.05 * i;
                worst = std::max(worst, (kernel_hat(c, w) * resolvent_hat(c, w) - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff());
            }
            add("kernel-inversion " + to_string(series) + " k=" + std::to_string(k), worst < 1e-12, {{"max_error", worst}});
        }
    }
    int failed = 0;
    for (const auto& c : checks) failed += c["status"] == "fail";
    o.report = {{"quick", quick}, {"checks", checks}, {"failed", failed}};
    o.summary = "selftest: " + std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " passed";
    return o;
}

void print_text(const json& j, const std::string& prefix = "") {
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
        std::cout << prefix << " = " << j.dump() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ospk: R matrices, boundary K matrices, open chains, Bethe equations and scattering amplitudes"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand; subcommands inherit this
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_flag("--json", cfg.json_flag, "Same as --format json");
    app.add_option("--tol", cfg.tol, "Numeric tolerance for pass/fail")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "Worker threads (0: hardware)")->check(CLI::NonNegativeNumber);
    app.add_option("--mem-budget-mb", cfg.mem_budget_mb, "Memory budget for dense chain operators")->check(CLI::PositiveNumber);

    std::string algebra, series, ktext, kplus, boundary, lambda, omega, grid, holes, Mtext = "0", family;
    int k = 0, sites = 1, n = 6, m = 0, seeds = 300, tau = 1;
    bool flip_q = false, force = false, dual = false, verify = false, quick = false, cross = false;
    std::vector<std::string> xis;

    auto* verify_cmd = app.add_subcommand("verify", "Exact identity checks");
    verify_cmd->require_subcommand(1);
    auto* v_ybe = verify_cmd->add_subcommand("ybe", "Yang-Baxter equation");
    auto* v_cross = verify_cmd->add_subcommand("crossing", "Crossing and unitarity of R");
    auto* v_refl = verify_cmd->add_subcommand("reflection", "Reflection equation for a K matrix");
    for (auto* c : {v_ybe, v_cross, v_refl}) c->add_option("--algebra", algebra, "so:m, sp:n or osp:m:n");
    v_ybe->add_flag("--flip-q", flip_q, "Flip the sign of Q (negative control)");
    v_refl->add_option("--k", ktext, "K matrix JSON or @file")->required();
    v_refl->add_flag("--force", force, "Skip admissibility checks (negative control)");
    v_refl->add_flag("--dual", dual, "Also check the dual equation for the dualized K");

    auto* catalog_cmd = app.add_subcommand("catalog", "Catalog of boundary solutions");
    catalog_cmd->require_subcommand(1);
    auto* c_list = catalog_cmd->add_subcommand("list", "List catalog parameter points");
    c_list->add_option("--algebra", algebra, "Restrict to one algebra");
    c_list->add_flag("--verify", verify, "Verify each entry and its dual");

    auto* classify_cmd = app.add_subcommand("classify", "Classification of solutions");
    classify_cmd->require_subcommand(1);
    auto* c_diag = classify_cmd->add_subcommand("diagonal", "Diagonal solutions of the reflection equation");
    c_diag->add_option("--algebra", algebra)->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Dense spectrum of the open-chain transfer matrix");
    spectrum_cmd->add_option("--algebra", algebra)->required();
    spectrum_cmd->add_option("--sites", sites)->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--boundary", boundary, "K- JSON or @file (default: identity)");
    spectrum_cmd->add_option("--kplus", kplus, "K+ JSON or @file (default: identity)");
    spectrum_cmd->add_option("--lambda", lambda, "Spectral parameter, e.g. 0.3+0.1i")->required();

    auto* bethe_cmd = app.add_subcommand("bethe", "Bethe equations");
    bethe_cmd->require_subcommand(1);
    auto* b_solve = bethe_cmd->add_subcommand("solve", "Solve the Bethe equations in one sector");
    b_solve->add_option("--algebra", algebra);
    b_solve->add_option("--series", series, "so (= so(2k+1)), so-even or sp");
    b_solve->add_option("--k", k, "Rank");
    b_solve->add_option("--sites", sites)->check(CLI::PositiveNumber);
    b_solve->add_option("--boundary", boundary, "K- JSON or @file");
    b_solve->add_option("--M", Mtext, "Root-set occupations, comma separated");
    b_solve->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
    b_solve->add_flag("--verify", verify, "Match each state against the dense spectrum");

    auto* thermo_cmd = app.add_subcommand("thermo", "Thermodynamic-limit kernels");
    thermo_cmd->require_subcommand(1);
    auto* t_kern = thermo_cmd->add_subcommand("kernels", "Kernel, resolvent, hole energies and density corrections");
    t_kern->add_option("--algebra", algebra);
    t_kern->add_option("--series", series, "so (= so(2k+1)), so-even or sp");
    t_kern->add_option("--k", k, "Rank");
    t_kern->add_option("--omega", omega);
    t_kern->add_option("--grid", grid, "start:stop:step sweep");
    t_kern->add_option("--boundary", boundary, R"({"family":"D1","params":{"xi":2.3}})");
    t_kern->add_option("--holes", holes, "[[sea, rapidity], ...]");

    auto* scatter_cmd = app.add_subcommand("scatter", "Scattering amplitudes");
    scatter_cmd->require_subcommand(1);
    auto* s_bulk = scatter_cmd->add_subcommand("bulk", "Bulk S0");
    auto* s_bnd = scatter_cmd->add_subcommand("boundary", "Boundary amplitude k0 k1");
    for (auto* c : {s_bulk, s_bnd}) {
        c->add_option("--series", series)->required();
        c->add_option("--n", n)->required();
        c->add_option("--lambda", lambda)->required();
    }
    s_bnd->add_option("--family", family);
    s_bnd->add_option("--m", m, "D3 block size");
    s_bnd->add_option("--xi", xis, "name=value, e.g. xi=2.3");
    s_bnd->add_option("--tau", tau, "D4 branch (+1 or -1)");
    s_bnd->add_flag("--cross-check", cross, "Compare closed forms with the integral representation");

    auto* selftest_cmd = app.add_subcommand("selftest", "Built-in identity suite");
    selftest_cmd->add_flag("--quick", quick, "Exact identities only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (cfg.json_flag) cfg.format = "json";

    Outcome o;
    std::string command;
    try {
        if (verify_cmd->parsed()) {
            std::string what = v_ybe->parsed() ? "ybe" : v_cross->parsed() ? "crossing" : "reflection";
            command = "verify " + what;
            o = run_verify(what, algebra, ktext, flip_q, force, dual);
        } else if (catalog_cmd->parsed()) {
            command = "catalog list";
            o = run_catalog(algebra, verify);
        } else if (classify_cmd->parsed()) {
            command = "classify diagonal";
            o = run_classify(algebra);
        } else if (spectrum_cmd->parsed()) {
            command = "spectrum";
            o = run_spectrum(parse_algebra(algebra), sites, boundary, kplus, lambda, cfg);
        } else if (bethe_cmd->parsed()) {
            command = "bethe solve";
            o = run_bethe(algebra_from(algebra, series, k), sites, boundary, Mtext, seeds, verify, cfg);
        } else if (thermo_cmd->parsed()) {
            command = "thermo kernels";
            KernelContext c = kernel_from(algebra_from(algebra, series, k), boundary, holes);
            // exact closed forms: the default bar is 1e-12 rather than the generic 1e-8
            double tol = app.get_option("--tol")->count() ? cfg.tol : 1e-12;
            o = run_thermo(c, omega_grid(omega, grid), cfg.format == "csv", tol);
        } else if (s_bulk->parsed()) {
            command = "scatter bulk";
            o = run_scatter_bulk(series, n, lambda, cfg.tol);
        } else if (s_bnd->parsed()) {
            command = "scatter boundary";
            o = run_scatter_boundary(series, n, family, m, xis, lambda, tau, cross, cfg.tol);
        } else if (selftest_cmd->parsed()) {
            command = "selftest";
            o = run_selftest(quick);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        json err = {{"schema", kReportSchema}, {"command", command}, {"status", "error"}, {"error", e.what()}};
        std::cout << err.dump(2) << '\n';
        std::cerr << command << ": " << e.what() << '\n';
        return 1;
    }

    o.report["schema"] = kReportSchema;
    o.report["command"] = command;
    o.report["status"] = o.ok ? "pass" : "fail";
    if (cfg.format == "json") std::cout << o.report.dump(2) << '\n';
    else if (cfg.format == "text") print_text(o.report);
    std::cerr << o.summary << '\n';
    return o.ok ? 0 : 1;
}
