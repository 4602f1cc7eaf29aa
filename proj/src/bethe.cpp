#include "ospk/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <thread>

namespace ospk {

namespace {

GaussQ I() { return GaussQ::I(); }
GaussQ iq(long p, long q) { return GaussQ::I() * GaussQ::frac(p, q); }

cplx konst(const GaussQ& g, const cplx*) { return g.to_complex(); }
RatFunc konst(const GaussQ& g, const RatFunc*) { return RatFunc(g); }
template <class T>
T k_(const GaussQ& g) {
    return konst(g, static_cast<const T*>(nullptr));
}

// prod_j (z + r_j + al)(z - r_j + al) / ((z + r_j + be)(z - r_j + be))
template <class T>
T pair_factor(const T& z, const std::vector<T>& set, const GaussQ& al, const GaussQ& be) {
    T out = k_<T>(GaussQ(1));
    T a = k_<T>(al), b = k_<T>(be);
    for (const T& r : set) out = out * ((z + r + a) * (z - r + a)) / ((z + r + b) * (z - r + b));
    return out;
}

// A_0..A_L before crossing; L = k for so(2k+1), k-1 otherwise.
template <class T>
std::vector<T> base_dressing(const BetheProblem& p, const std::vector<std::vector<T>>& sets, const T& z) {
    int k = p.k;
    static const std::vector<T> empty;
    auto node = [&](int l) -> const std::vector<T>& {  // sets by 1-based node
        if (l < 1 || l > k) return empty;
        return sets[l - 1];
    };
    auto generic = [&](int l) {
        T out = pair_factor(z, node(l), iq(l + 2, 2), iq(l, 2));
        return out * pair_factor(z, node(l + 1), iq(l - 1, 2), iq(l + 1, 2));
    };
    std::vector<T> A;
    switch (p.series) {
        case Series::SoOdd:
            for (int l = 0; l < k; ++l) A.push_back(generic(l));
            A.push_back(pair_factor(z, node(k), iq(k - 2, 2), iq(k, 2)) * pair_factor(z, node(k), iq(k + 1, 2), iq(k - 1, 2)));
            break;
        case Series::SoEven: {
            const auto& plus = sets[k - 2];
            const auto& minus = sets[k - 1];
            for (int l = 0; l + 3 <= k; ++l) A.push_back(generic(l));
            T a = k - 2 >= 1 ? pair_factor(z, sets[k - 3], iq(k, 2), iq(k - 2, 2)) : k_<T>(GaussQ(1));
            a = a * pair_factor(z, plus, iq(k - 3, 2), iq(k - 1, 2)) * pair_factor(z, minus, iq(k - 3, 2), iq(k - 1, 2));
            A.push_back(a);
            A.push_back(pair_factor(z, plus, iq(k - 3, 2), iq(k - 1, 2)) * pair_factor(z, minus, iq(k + 1, 2), iq(k - 1, 2)));
            break;
        }
        case Series::Sp:
            for (int l = 0; l + 1 < k; ++l) A.push_back(generic(l));
            A.push_back(pair_factor(z, node(k - 1), iq(k + 1, 2), iq(k - 1, 2)) * pair_factor(z, node(k), iq(k - 3, 2), iq(k + 1, 2)));
            break;
    }
    return A;
}

template <class T>
std::vector<T> dressing_impl(const BetheProblem& p, const std::vector<std::vector<T>>& sets, const T& z) {
    int d = p.spec.dim();
    T zc = -z - k_<T>(I() * GaussQ(p.spec.kappa()));
    std::vector<T> A = base_dressing(p, sets, z);
    std::vector<T> Ac = base_dressing(p, sets, zc);
    int L = static_cast<int>(A.size()) - 1;
    A.resize(d);
    for (int l = L + 1; l < d; ++l) A[l] = Ac[d - l - 1];
    return A;
}

// ---- Bethe equation structure ---------------------------------------------

struct Edge {
    int to;     // set index, or -1 for the quantum space
    GaussQ c;   // coupling: RHS factor e_{-c}
};

struct NodeEq {
    GaussQ self;                // RHS e_self(l_i -+ l_j), j != i
    std::vector<Edge> edges;
    std::optional<GaussQ> drive;  // LHS e_drive(l_i)^{2N}
    int sign = 1;                 // boundary: sign * prod e_x^{-1}
    std::vector<GaussQ> inv;
};

std::vector<NodeEq> structure(const BetheProblem& p) {
    int k = p.k;
    std::vector<NodeEq> eq(k);
    // 0-based set index of node l (1-based); 0 means the quantum space
    auto link = [&](int a, int b, const GaussQ& c) {  // a, b are set indices or -1
        if (a < 0) eq[b].drive = c;
        else if (b < 0) eq[a].drive = c;
        else {
            eq[a].edges.push_back({b, c});
            eq[b].edges.push_back({a, c});
        }
    };
    switch (p.series) {
        case Series::SoOdd:
            for (int s = 0; s < k; ++s) eq[s].self = s + 1 < k ? GaussQ(2) : GaussQ(1);
            for (int l = 0; l < k; ++l) link(l - 1, l, GaussQ(1));
            break;
        case Series::SoEven:
            for (int s = 0; s < k; ++s) eq[s].self = GaussQ(2);
            for (int l = 0; l + 3 <= k; ++l) link(l - 1, l, GaussQ(1));
            link(k - 3, k - 2, GaussQ(1));
            link(k - 3, k - 1, GaussQ(1));
            break;
        case Series::Sp:
            for (int s = 0; s < k; ++s) eq[s].self = s + 1 < k ? GaussQ(2) : GaussQ(4);
            for (int l = 0; l + 1 < k; ++l) link(l - 1, l, GaussQ(1));
            link(k - 2, k - 1, GaussQ(2));
            break;
    }
    // boundary factors
    GaussQ kap(p.spec.kappa());
    auto put = [&](int set, int sign, std::vector<GaussQ> xs) {
        eq[set].sign *= sign;
        for (auto& x : xs) eq[set].inv.push_back(x);
    };
    switch (p.family) {
        case Family::CUSTOM: break;
        case Family::D1: put(p.series == Series::SoEven ? k - 2 : k - 1, -1, {GaussQ(2) * p.xi.at("xi") + kap}); break;
        case Family::D2:
            if (p.series == Series::SoEven && k == 2) {
                put(0, -1, {GaussQ(2) * p.xi.at("xi1") + GaussQ(1)});
                put(1, -1, {GaussQ(2) * p.xi.at("xi1") + GaussQ(1)});
            } else {
                put(0, -1, {GaussQ(2) * p.xi.at("xi1") + GaussQ(1)});
            }
            break;
        case Family::D3: {
            GaussQ x = GaussQ(2) * p.xi.at("xi") + GaussQ(p.m);
            if (p.series == Series::SoEven && p.m == k - 1) {
                put(k - 2, -1, {GaussQ(1)});
                put(k - 1, -1, {GaussQ(1)});
            } else {
                put(p.m - 1, -1, {x});
            }
            break;
        }
        case Family::D4:
            put(0, -1, {GaussQ(2) * p.xi.at("xi3") + GaussQ(1)});
            put(1, -1, {GaussQ(2) * p.xi.at("xi2") + GaussQ(1)});
            break;
        default: throw ChainError("no Bethe equations for boundary family " + to_string(p.family));
    }
    return eq;
}

cplx loge(cplx x, cplx z) {
    cplx h = cplx(0, 0.5) * x;
    return std::log(z + h) - std::log(z - h);
}
cplx dloge(cplx x, cplx z) {
    cplx h = cplx(0, 0.5) * x;
    return 1.0 / (z + h) - 1.0 / (z - h);
}

struct Flat {
    std::vector<int> set_of;
    std::vector<int> offset;
    int total = 0;
};

Flat flatten(const std::vector<std::vector<cplx>>& roots) {
    Flat f;
    for (std::size_t s = 0; s < roots.size(); ++s) {
        f.offset.push_back(f.total);
        for (std::size_t j = 0; j < roots[s].size(); ++j) f.set_of.push_back(static_cast<int>(s));
        f.total += static_cast<int>(roots[s].size());
    }
    return f;
}

// Log-sums F (unreduced) and optionally the Jacobian dF/dlambda.
std::vector<cplx> log_sums(const BetheProblem& p, const std::vector<NodeEq>& eq, const std::vector<std::vector<cplx>>& roots,
                           Eigen::MatrixXcd* J) {
    Flat f = flatten(roots);
    std::vector<cplx> F(f.total, 0.0);
    if (J) *J = Eigen::MatrixXcd::Zero(f.total, f.total);
    for (int s = 0; s < static_cast<int>(roots.size()); ++s) {
        const NodeEq& e = eq[s];
        cplx self = e.self.to_complex();
        for (int i = 0; i < static_cast<int>(roots[s].size()); ++i) {
            int row = f.offset[s] + i;
            cplx z = roots[s][i];
            cplx acc = 0, dii = 0;
            if (e.drive) {
                acc += 2.0 * p.N * loge(e.drive->to_complex(), z);
                dii += 2.0 * p.N * dloge(e.drive->to_complex(), z);
            }
            if (e.sign < 0) acc += cplx(0, std::numbers::pi);
            for (const auto& x : e.inv) {
                acc -= loge(x.to_complex(), z);
                dii -= dloge(x.to_complex(), z);
            }
            for (int j = 0; j < static_cast<int>(roots[s].size()); ++j) {
                if (j == i) continue;
                cplx w = roots[s][j];
                acc -= loge(self, z - w) + loge(self, z + w);
                dii -= dloge(self, z - w) + dloge(self, z + w);
                if (J) (*J)(row, f.offset[s] + j) -= -dloge(self, z - w) + dloge(self, z + w);
            }
            for (const auto& ed : e.edges) {
                cplx c = -ed.c.to_complex();
                for (int j = 0; j < static_cast<int>(roots[ed.to].size()); ++j) {
                    cplx w = roots[ed.to][j];
                    acc -= loge(c, z - w) + loge(c, z + w);
                    dii -= dloge(c, z - w) + dloge(c, z + w);
                    if (J) (*J)(row, f.offset[ed.to] + j) -= -dloge(c, z - w) + dloge(c, z + w);
                }
            }
            F[row] = acc;
            if (J) (*J)(row, row) += dii;
        }
    }
    return F;
}

long branch_of(cplx F) { return std::lround(F.imag() / (2 * std::numbers::pi)); }
cplx reduce(cplx F) { return F - cplx(0, 2 * std::numbers::pi * static_cast<double>(branch_of(F))); }

double max_norm(const std::vector<cplx>& v) {
    double m = 0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

bool singular(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots) {
    const double eps = 1e-6;
    for (const auto& set : roots) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (std::abs(set[i]) < 1e-4 || std::abs(set[i]) > 1e4) return true;
            if (!std::isfinite(set[i].real()) || !std::isfinite(set[i].imag())) return true;
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (std::abs(set[i] - set[j]) < eps || std::abs(set[i] + set[j]) < eps) return true;
        }
    }
    (void)p;
    return false;
}

}  // namespace

std::string to_string(Series s) {
    switch (s) {
        case Series::SoOdd: return "so-odd";
        case Series::SoEven: return "so-even";
        case Series::Sp: return "sp";
    }
    return "?";
}

Series parse_series(const std::string& s) {
    if (s == "so-odd") return Series::SoOdd;
    if (s == "so-even") return Series::SoEven;
    if (s == "sp") return Series::Sp;
    throw std::invalid_argument("unknown series '" + s + "' (so-odd, so-even, sp)");
}

std::pair<Series, int> series_of(const GradingSpec& s) {
    int d = s.dim();
    if (s.is_pure_sp()) return {Series::Sp, d / 2};
    if (!s.is_pure_so()) throw ChainError("Bethe equations are implemented for so(n) and sp(n) only");
    if (d < 3) throw ChainError("so(2) has no Bethe equations");
    return d % 2 ? std::pair{Series::SoOdd, (d - 1) / 2} : std::pair{Series::SoEven, d / 2};
}

GradingSpec algebra_of(Series s, int k) {
    switch (s) {
        case Series::SoOdd: return parse_algebra("so:" + std::to_string(2 * k + 1));
        case Series::SoEven: return parse_algebra("so:" + std::to_string(2 * k));
        case Series::Sp: return parse_algebra("sp:" + std::to_string(2 * k));
    }
    throw std::invalid_argument("bad series");
}

BetheProblem make_problem(const ChainContext& ctx) {
    if (!is_identity_k(ctx.kplus)) throw ChainError("the Bethe equations assume K+ = 1");
    auto [series, k] = series_of(ctx.spec);
    BetheProblem p{ctx.spec, series, k, ctx.N, ctx.kminus, Family::CUSTOM, {}, 0};
    if (!is_identity_k(ctx.kminus)) {
        p.family = ctx.kminus.family;
        if (p.family == Family::CUSTOM) throw ChainError("the Bethe equations need K- = 1 or a catalog diagonal family");
        p.xi = physical_xi(ctx.kminus);
        if (p.family == Family::D3) {
            p.m = leading_block(ctx.kminus);
            if (p.m < 1 || p.m > k) throw ChainError("D3 with an empty block is a multiple of the identity; use K- = 1");
        }
    }
    if (p.family == Family::D2 && series == Series::Sp) throw ChainError("D2 does not exist for sp(n)");
    if (p.family == Family::D4 && !(series == Series::SoEven && k == 2)) throw ChainError("D4 exists only for so(4)");
    if (p.family == Family::D1 && series == Series::SoOdd) throw ChainError("D1 does not exist for so(2k+1)");
    structure(p);  // validates the family
    return p;
}

BetheProblem make_problem(Series s, int k, int N, const std::optional<KSolution>& kminus) {
    return make_problem(make_chain(algebra_of(s, k), N, kminus));
}

ChainContext chain_of(const BetheProblem& p) { return make_chain(p.spec, p.N, p.kminus); }

std::vector<int> BetheState::occupation() const {
    std::vector<int> M;
    for (const auto& s : roots) M.push_back(static_cast<int>(s.size()));
    return M;
}

std::string set_label(Series s, int k, int set) {
    if (s == Series::SoEven && set == k - 2) return "+";
    if (s == Series::SoEven && set == k - 1) return "-";
    return std::to_string(set + 1);
}

std::vector<cplx> dressing(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots, cplx lambda) {
    return dressing_impl<cplx>(p, roots, lambda);
}

std::vector<RatFunc> dressing_exact(const BetheProblem& p, const std::vector<std::vector<GaussQ>>& roots) {
    std::vector<std::vector<RatFunc>> r;
    for (const auto& s : roots) {
        r.emplace_back();
        for (const auto& x : s) r.back().push_back(RatFunc(x));
    }
    return dressing_impl<RatFunc>(p, r, RatFunc::var());
}

namespace {

template <class T>
T assemble(const BetheProblem& p, const std::vector<T>& g, const std::vector<T>& A, const T& lam) {
    int d = p.spec.dim(), N = p.N;
    GaussQ ik = I() * GaussQ(p.spec.kappa());
    T one = k_<T>(GaussQ(1));
    T a = (lam + k_<T>(I())) * (lam + k_<T>(ik));
    T b = lam * (lam + k_<T>(ik));
    T c = lam * (lam + k_<T>(ik - I()));
    auto pw = [&](T x) {
        T r = one;
        for (int i = 0; i < 2 * N; ++i) r = r * x;
        return r;
    };
    T mid = k_<T>(GaussQ(0));
    for (int l = 1; l <= d - 2; ++l) mid = mid + g[l] * A[l];
    return pw(a) * g[0] * A[0] + pw(b) * mid + pw(c) * g[d - 1] * A[d - 1];
}

}  // namespace

cplx dressing_eigenvalue(const BetheState& s, cplx lambda) {
    const BetheProblem& p = s.problem;
    auto gr = boundary_g(chain_of(p));
    std::vector<cplx> g;
    for (const auto& x : gr) g.push_back(x.eval(lambda));
    return assemble<cplx>(p, g, dressing(p, s.roots, lambda), lambda);
}

RatFunc dressing_eigenvalue_exact(const BetheProblem& p, const std::vector<std::vector<GaussQ>>& roots) {
    auto g = boundary_g(chain_of(p));
    return assemble<RatFunc>(p, g, dressing_exact(p, roots), RatFunc::var());
}

std::vector<cplx> bae_residual(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots) {
    if (static_cast<int>(roots.size()) != p.k) throw ChainError("expected " + std::to_string(p.k) + " root sets");
    if (singular(p, roots)) throw ChainError("root collision (or a root at 0) within a set");
    auto F = log_sums(p, structure(p), roots, nullptr);
    for (auto& x : F) x = reduce(x);
    return F;
}

std::vector<std::vector<long>> bae_branches(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots) {
    auto F = log_sums(p, structure(p), roots, nullptr);
    std::vector<std::vector<long>> out;
    std::size_t r = 0;
    for (const auto& s : roots) {
        out.emplace_back();
        for (std::size_t j = 0; j < s.size(); ++j) out.back().push_back(branch_of(F[r++]));
    }
    return out;
}

std::vector<std::vector<cplx>> canonical_roots(const std::vector<std::vector<cplx>>& roots) {
    auto out = roots;
    for (auto& s : out) {
        for (auto& z : s)
            if (z.real() < -1e-12 || (std::abs(z.real()) <= 1e-12 && z.imag() < 0)) z = -z;
        std::sort(s.begin(), s.end(), [](cplx a, cplx b) {
            if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
            return a.imag() < b.imag();
        });
    }
    return out;
}

std::optional<BetheState> polish(const BetheProblem& p, std::vector<std::vector<cplx>> roots, const SolveOptions& opt) {
    auto eq = structure(p);
    Flat f = flatten(roots);
    if (f.total == 0) return BetheState{p, roots, {}, 0.0, true};
    auto residual = [&](const std::vector<std::vector<cplx>>& r, Eigen::MatrixXcd* J) {
        auto F = log_sums(p, eq, r, J);
        for (auto& x : F) x = reduce(x);
        return F;
    };
    Eigen::MatrixXcd J;
    for (int it = 0; it < opt.max_iter; ++it) {
        if (singular(p, roots)) return std::nullopt;
        auto F = residual(roots, &J);
        double nrm = max_norm(F);
        if (!std::isfinite(nrm)) return std::nullopt;
        if (nrm < opt.tol) {
            // A rank-deficient Jacobian means a continuous family of solutions, which does
            // not describe a single eigenstate (equations satisfied identically, or roots
            // sliding along a singular string).
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) < 1e-7 * std::max(1.0, sv(0))) return std::nullopt;
            BetheState st{p, canonical_roots(roots), {}, nrm, true};
            st.branch = bae_branches(p, st.roots);
            st.residual = max_norm(bae_residual(p, st.roots));
            return st;
        }
        Eigen::VectorXcd rhs(f.total);
        for (int i = 0; i < f.total; ++i) rhs(i) = F[i];
        Eigen::VectorXcd step = J.fullPivLu().solve(rhs);
        if (!step.allFinite()) return std::nullopt;
        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 12; ++bt) {
            auto trial = roots;
            for (int i = 0; i < f.total; ++i) trial[f.set_of[i]][i - f.offset[f.set_of[i]]] -= t * step(i);
            if (!singular(p, trial)) {
                double n2 = max_norm(residual(trial, nullptr));
                if (std::isfinite(n2) && n2 < nrm) {
                    roots = trial;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!accepted) return std::nullopt;
    }
    return std::nullopt;
}

std::vector<BetheState> solve_bae(const BetheProblem& p, const std::vector<int>& M, const SolveOptions& opt) {
    if (static_cast<int>(M.size()) != p.k) throw ChainError("M must have " + std::to_string(p.k) + " entries");
    int total = 0;
    for (int m : M) {
        if (m < 0) throw ChainError("negative occupation number");
        total += m;
    }
    std::vector<std::vector<cplx>> empty(p.k);
    if (total == 0) return {BetheState{p, empty, std::vector<std::vector<long>>(p.k), 0.0, true}};

    int nthreads = opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, opt.seeds);
    auto worker = [&](int tid) {
        std::mt19937_64 rng(opt.rng_seed + 7919ull * static_cast<unsigned>(tid));
        std::uniform_real_distribution<double> re(0.05, 2.5), im(-1.2, 1.2), coin(0, 1);
        std::vector<BetheState> found;
        for (int sd = tid; sd < opt.seeds; sd += nthreads) {
            std::vector<std::vector<cplx>> start(p.k);
            for (int s = 0; s < p.k; ++s) {
                int j = 0;
                while (j < M[s]) {
                    double r = re(rng);
                    double c = coin(rng);
                    if (c < 0.5) {
                        start[s].push_back(cplx(r, 0.0));
                        ++j;
                    } else if (c < 0.75 && j + 2 <= M[s]) {
                        double off = coin(rng) < 0.5 ? 0.5 : 0.25;
                        start[s].push_back(cplx(r, off));
                        start[s].push_back(cplx(r, -off));
                        j += 2;
                    } else if (c < 0.85) {
                        start[s].push_back(cplx(0.02 * r, 1.6 * r));  // near the imaginary axis
                        ++j;
                    } else {
                        start[s].push_back(cplx(r, im(rng)));
                        ++j;
                    }
                }
            }
            if (auto st = polish(p, start, opt)) found.push_back(*st);
        }
        return found;
    };
    std::vector<std::future<std::vector<BetheState>>> jobs;
    for (int t = 0; t < nthreads; ++t) jobs.push_back(std::async(std::launch::async, worker, t));
    std::vector<BetheState> out;
    for (auto& j : jobs) {
        for (auto& st : j.get()) {
            bool dup = false;
            for (const auto& o : out) {
                double dist = 0;
                for (int s = 0; s < p.k; ++s)
                    for (std::size_t i = 0; i < st.roots[s].size(); ++i) dist = std::max(dist, std::abs(st.roots[s][i] - o.roots[s][i]));
                if (dist < 1e-7) {
                    dup = true;
                    break;
                }
            }
            if (!dup) out.push_back(st);
        }
    }
    std::sort(out.begin(), out.end(), [](const BetheState& a, const BetheState& b) {
        for (std::size_t s = 0; s < a.roots.size(); ++s)
            for (std::size_t i = 0; i < a.roots[s].size(); ++i) {
                if (std::abs(a.roots[s][i].real() - b.roots[s][i].real()) > 1e-9) return a.roots[s][i].real() < b.roots[s][i].real();
                if (std::abs(a.roots[s][i].imag() - b.roots[s][i].imag()) > 1e-9) return a.roots[s][i].imag() < b.roots[s][i].imag();
            }
        return false;
    });
    return out;
}

double energy(const BetheState& s) {
    const BetheProblem& p = s.problem;
    std::vector<int> first{0};
    if (p.series == Series::SoEven && p.k == 2) first = {0, 1};
    double e = 0;
    for (int set : first)
        for (cplx z : s.roots[set]) e += std::real(1.0 / (z * z + 0.25));
    return -e / (2 * std::numbers::pi);
}

std::vector<int> quantum_numbers(const BetheProblem& p, const std::vector<int>& M) {
    int k = p.k;
    auto Mof = [&](int l) { return l == 0 ? p.N : M[l - 1]; };  // 1-based node
    std::vector<int> S(k);
    switch (p.series) {
        case Series::SoOdd:
            for (int l = 1; l <= k; ++l) S[l - 1] = Mof(l - 1) - Mof(l);
            break;
        case Series::SoEven: {
            int mp = M[k - 2], mm = M[k - 1];
            for (int l = 1; l <= k - 2; ++l) S[l - 1] = Mof(l - 1) - Mof(l);
            S[k - 2] = Mof(k - 2) - mp - mm;
            S[k - 1] = mp - mm;
            break;
        }
        case Series::Sp:
            for (int l = 1; l < k; ++l) S[l - 1] = Mof(l - 1) - Mof(l);
            S[k - 1] = Mof(k - 1) - 2 * Mof(k);
            break;
    }
    return S;
}

}  // namespace ospk
