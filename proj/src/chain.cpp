#include "ospk/chain.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace ospk {

namespace {

long long ipow(int d, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= d;
    return r;
}

RatFunc lam() { return RatFunc::var(); }
RatFunc cst(const GaussQ& c) { return RatFunc(c); }
GaussQ I() { return GaussQ::I(); }
GaussQ half(long p) { return GaussQ::frac(p, 2); }

// f(-l - i kappa)
RatFunc cross(const RatFunc& f, const GaussQ& ik) { return f.compose(RatFunc(QPoly(std::vector<GaussQ>{-ik, GaussQ(-1)}))); }

bool is_identity(const GMat<RatFunc>& k) { return k == GMat<RatFunc>::identity(k.spec, 1); }

bool is_diagonal(const GMat<RatFunc>& k) {
    bool diag = true;
    k.m.for_each([&](int i, int j, const RatFunc&) { diag = diag && i == j; });
    return diag;
}

template <class S>
S to_scalar(const GaussQ& q) {
    using R = typename S::value_type;
    auto part = [](const mpq_class& x) {
        return static_cast<R>(x.get_num().get_d()) / static_cast<R>(x.get_den().get_d());
    };
    return S(part(q.re()), part(q.im()));
}

template <class S>
S eval_poly(const QPoly& p, const S& x) {
    S r(0);
    for (int k = p.degree(); k >= 0; --k) r = r * x + to_scalar<S>(p.coeff(k));
    return r;
}

template <class S>
S eval_rat(const RatFunc& f, const S& x) {
    S den = eval_poly(f.den(), x);
    if (den == S(0)) throw PoleError("transfer matrix: boundary matrix has a pole at the sample point");
    return eval_poly(f.num(), x) / den;
}

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> eval_local(const GMat<RatFunc>& a, const S& x) {
    int n = a.m.rows();
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    a.m.for_each([&](int i, int j, const RatFunc& v) { out(i, j) = eval_rat(v, x); });
    return out;
}

// Applies a two-factor operator R (first leg on factor p, second on q) to the rows of X.
template <class M>
void apply_pair(M& X, const M& R, int F, int d, int p, int q) {
    long long sp = ipow(d, F - 1 - p), sq = ipow(d, F - 1 - q);
    long long rows = X.rows();
    std::vector<long long> idx(d * d);
    M Y(d * d, X.cols());
    for (long long base = 0; base < rows; ++base) {
        if ((base / sp) % d != 0 || (base / sq) % d != 0) continue;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) idx[a * d + b] = base + a * sp + b * sq;
        for (int r = 0; r < d * d; ++r) Y.row(r) = X.row(idx[r]);
        M Z = R * Y;
        for (int r = 0; r < d * d; ++r) X.row(idx[r]) = Z.row(r);
    }
}

// Applies a one-factor operator to factor 0 (the slow index).
template <class M>
void apply_aux(M& X, const M& K, long long block) {
    using S = typename M::Scalar;
    int d = static_cast<int>(K.rows());
    M out = M::Zero(X.rows(), X.cols());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (K(a, b) != S(0)) out.middleRows(a * block, block) += K(a, b) * X.middleRows(b * block, block);
    X.swap(out);
}

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> transfer_impl(const ChainContext& ctx, const S& lambda) {
    using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    int d = ctx.dim(), N = ctx.N, F = N + 1;
    long long D = ctx.space_dim();
    double bytes = 2.0 * sizeof(S) * d * static_cast<double>(D) * static_cast<double>(D);
    if (bytes > static_cast<double>(ctx.mem_budget_bytes))
        throw ChainError("transfer matrix exceeds the memory budget (" + std::to_string(static_cast<long long>(bytes / (1 << 20))) + " MB needed)");
    M R = eval_local(r_matrix(ctx.spec, Normalization::PhysicalLambda).matrix, lambda);
    M Km = eval_local(ctx.kminus.matrix, lambda), Kp = eval_local(ctx.kplus.matrix, lambda);
    M t = M::Zero(D, D);
    for (int a = 0; a < d; ++a) {
        M X = M::Zero(d * D, D);
        X.middleRows(a * D, D).setIdentity();
        for (int j = N; j >= 1; --j) apply_pair(X, R, F, d, j, 0);
        apply_aux(X, Km, D);
        for (int j = 1; j <= N; ++j) apply_pair(X, R, F, d, 0, j);
        apply_aux(X, Kp, D);
        t += X.middleRows(a * D, D);
    }
    return t;
}

std::pair<GMat<MPoly>, QPoly> clear_den(const GMat<RatFunc>& k) {
    QPoly D(GaussQ(1));
    k.m.for_each([&](int, int, const RatFunc& v) {
        QPoly g = gcd(D, v.den());
        D = D * divmod(v.den(), g).first;
    });
    return {k_poly(k, 0), D};
}

void check_chain_spec(const GradingSpec& s) {
    if (!(s.is_pure_so() || s.is_pure_sp()) || !s.all_even())
        throw ChainError("open chains are implemented for so(n) and sp(n) only, got " + s.pretty());
    if (s.dim() < 2) throw ChainError("chain needs dimension >= 2");
}

}  // namespace

long long ChainContext::space_dim() const { return ipow(spec.dim(), N); }

int leading_block(const KSolution& k) {
    int m = 0, d = k.spec.dim();
    RatFunc a0 = k.matrix.m.get(0, 0);
    while (m < d && k.matrix.m.get(m, m) == a0) ++m;
    return m;
}

bool is_identity_k(const KSolution& k) { return is_identity(k.matrix); }

double max_abs(const CMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

KSolution identity_k(const GradingSpec& s) {
    return make_custom(s, GMat<RatFunc>::identity(s, 1), Normalization::PhysicalLambda);
}

ChainContext make_chain(const GradingSpec& s, int N, std::optional<KSolution> kminus, std::optional<KSolution> kplus) {
    check_chain_spec(s);
    if (N < 1) throw ChainError("need N >= 1 sites");
    KSolution km = kminus ? to_physical(*kminus) : identity_k(s);
    KSolution kp = kplus ? to_physical(*kplus) : dualize_k(identity_k(s));
    if (km.spec != s || kp.spec != s) throw ChainError("boundary matrix belongs to a different algebra");
    ChainContext ctx{s, N, km, kp};
    return ctx;
}

CMat transfer_matrix(const ChainContext& ctx, cplx lambda) { return transfer_impl(ctx, lambda); }

CMatL transfer_matrix_ld(const ChainContext& ctx, cplxl lambda) { return transfer_impl(ctx, lambda); }

GMat<RatFunc> transfer_matrix_exact(const ChainContext& ctx) {
    const GradingSpec& s = ctx.spec;
    int N = ctx.N, F = N + 1;
    if (N > 2 || ctx.space_dim() > 25) throw ChainError("exact transfer matrix is limited to N <= 2 and dimension <= 25");
    GMat<MPoly> R = r_poly(s, Normalization::PhysicalLambda, MPoly::var(0));
    auto [km, dm] = clear_den(ctx.kminus.matrix);
    auto [kp, dp] = clear_den(ctx.kplus.matrix);
    GMat<MPoly> rest = GMat<MPoly>::identity(s, N);
    GMat<MPoly> op = graded_kron(km, rest);
    for (int j = 1; j <= N; ++j) op = op * embed(R, F, j, 0);
    for (int j = 1; j <= N; ++j) op = embed(R, F, 0, j) * op;
    op = graded_kron(kp, rest) * op;
    long long Dq = ctx.space_dim();
    GMat<MPoly> tr(s, N);
    op.m.for_each([&](int r, int c, const MPoly& v) {
        if (r / Dq == c / Dq) tr.m.add(static_cast<int>(r % Dq), static_cast<int>(c % Dq), v);
    });
    QPoly den = dm * dp;
    GMat<RatFunc> out(s, N);
    tr.m.for_each([&](int i, int j, const MPoly& v) { out.m.set(i, j, RatFunc(v.to_upoly(0), den)); });
    return out;
}

std::vector<RatFunc> bulk_g(const GradingSpec& s) {
    check_chain_spec(s);
    int d = s.dim(), k = d / 2;
    bool odd = d % 2 == 1;
    GaussQ kap(s.kappa()), ik = I() * kap;
    GaussQ pm = s.is_pure_so() ? GaussQ(1) : GaussQ(-1);
    RatFunc x = lam();
    RatFunc mid = x + cst(ik * half(1));                // l + i kappa/2
    RatFunc num_s = x + cst(ik * half(1) + pm * I() * half(1));  // l + i kappa/2 +- i/2
    RatFunc xk = x + cst(ik);
    std::vector<RatFunc> g(d);
    g[0] = num_s * xk / (mid * (x + cst(I() * half(1))));
    for (int l = 1; l < k; ++l) g[l] = x * num_s * xk / (mid * (x + cst(I() * half(l))) * (x + cst(I() * half(l + 1))));
    int first_crossed = k;
    if (odd) {
        g[k] = x * xk / ((x + cst(I() * half(k))) * (x + cst(I() * half(k - 1))));
        first_crossed = k + 1;
    }
    for (int l = first_crossed; l < d; ++l) g[l] = cross(g[d - l - 1], ik);
    return g;
}

std::vector<RatFunc> boundary_g(const ChainContext& ctx) {
    const GradingSpec& s = ctx.spec;
    if (!is_identity(ctx.kplus.matrix)) throw ChainError("the pseudo-vacuum formula assumes K+ = 1");
    const KSolution& km = ctx.kminus;
    if (!is_diagonal(km.matrix)) throw ChainError("the pseudo-vacuum formula needs a diagonal K-");
    std::vector<RatFunc> g = bulk_g(s);
    if (is_identity(km.matrix)) return g;
    int d = s.dim(), k = d / 2;
    GaussQ kap(s.kappa()), ik = I() * kap;
    GaussQ pm = s.is_pure_so() ? GaussQ(1) : GaussQ(-1);
    RatFunc x = lam();
    auto xi = physical_xi(km);
    switch (km.family) {
        case Family::D1: {
            GaussQ ixi = I() * xi.at("xi");
            for (int l = 0; l < d; ++l) g[l] *= l < k ? -x + cst(ixi) : x + cst(ixi + ik);
            return g;
        }
        case Family::D2: {
            GaussQ i1 = I() * xi.at("xi1");
            RatFunc lin = x + cst(i1);
            RatFunc shifted = (x + cst(i1 + I())) / lin;
            g[0] *= (-x + cst(i1)) / lin;
            for (int l = 1; l < d - 1; ++l) g[l] *= shifted;
            g[d - 1] *= shifted * (x + cst(i1 + ik)) / (-x + cst(-ik + i1 + I()));
            return g;
        }
        case Family::D3: {
            GaussQ ixi = I() * xi.at("xi");
            // m = number of leading alpha entries
            int m = leading_block(km);
            RatFunc up = x + cst(ik * half(1) + pm * I() * half(1));
            RatFunc dn = x + cst(ik * half(1) - pm * I() * half(1));
            for (int l = 0; l < d; ++l) {
                if (l < m)
                    g[l] *= -x + cst(ixi);
                else if (l < d - m)
                    g[l] *= up;
                else
                    g[l] *= (-x + cst(-ik - ixi)) * up / dn;
            }
            return g;
        }
        case Family::D4: {
            GaussQ im = I() * xi.at("xi2"), ip = I() * xi.at("xi3");
            g[0] *= (-x + cst(im)) * (-x + cst(ip));
            g[1] *= (x + cst(im + I())) * (-x + cst(ip));
            g[2] *= (x + cst(ip + I())) * (-x + cst(im));
            g[3] *= (x + cst(im + I())) * (x + cst(ip + I()));
            return g;
        }
        default: throw ChainError("no pseudo-vacuum formula for family " + to_string(km.family));
    }
}

RatFunc pseudo_vacuum_eigenvalue(const ChainContext& ctx) {
    const GradingSpec& s = ctx.spec;
    auto g = boundary_g(ctx);
    int d = s.dim(), N = ctx.N;
    GaussQ ik = I() * GaussQ(s.kappa());
    RatFunc x = lam();
    RatFunc a = (x + cst(I())) * (x + cst(ik));
    RatFunc b = x * (x + cst(ik));
    RatFunc c = x * (x + cst(ik - I()));
    RatFunc out = a.pow(2 * N) * g[0] + c.pow(2 * N) * g[d - 1];
    RatFunc mid;
    for (int l = 1; l <= d - 2; ++l) mid += g[l];
    return out + b.pow(2 * N) * mid;
}

std::vector<int> basis_weight(const GradingSpec& s, int N, long long idx) {
    int d = s.dim(), k = d / 2;
    std::vector<int> w(k, 0);
    for (int site = 0; site < N; ++site) {
        int a = static_cast<int>(idx % d);
        idx /= d;
        for (int l = 0; l < k; ++l) {
            if (a == l) ++w[l];
            if (a == s.bar(l)) --w[l];
        }
    }
    return w;
}

std::vector<CMat> cartan_generators(const ChainContext& ctx) {
    long long D = ctx.space_dim();
    int k = ctx.dim() / 2;
    std::vector<CMat> out(k, CMat::Zero(D, D));
    for (long long i = 0; i < D; ++i) {
        auto w = basis_weight(ctx.spec, ctx.N, i);
        for (int l = 0; l < k; ++l) out[l](i, i) = w[l];
    }
    return out;
}

SpectrumRecord spectrum(const ChainContext& ctx, cplx lambda) {
    long long D = ctx.space_dim();
    if (D > 4096) throw ChainError("spectrum is limited to dimension 4096");
    CMat t = transfer_matrix(ctx, lambda);
    std::map<std::vector<int>, std::vector<long long>> sectors;
    for (long long i = 0; i < D; ++i) sectors[basis_weight(ctx.spec, ctx.N, i)].push_back(i);
    double off = 0;
    for (long long i = 0; i < D; ++i)
        for (long long j = 0; j < D; ++j)
            if (basis_weight(ctx.spec, ctx.N, i) != basis_weight(ctx.spec, ctx.N, j)) off = std::max(off, std::abs(t(i, j)));
    bool blocked = off <= 1e-12 * std::max(1.0, max_abs(t));
    if (!blocked) {
        sectors.clear();
        std::vector<long long> all(D);
        for (long long i = 0; i < D; ++i) all[i] = i;
        sectors[{}] = all;
    }
    SpectrumRecord rec;
    rec.lambda = lambda;
    rec.eigenvectors = CMat::Zero(D, D);
    long long col = 0;
    for (const auto& [w, idx] : sectors) {
        long long n = static_cast<long long>(idx.size());
        CMat blk(n, n);
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) blk(i, j) = t(idx[i], idx[j]);
        Eigen::ComplexEigenSolver<CMat> es(blk);
        if (es.info() != Eigen::Success) throw ChainError("eigensolver did not converge");
        for (long long e = 0; e < n; ++e) {
            CVec v = CVec::Zero(D);
            for (long long i = 0; i < n; ++i) v(idx[i]) = es.eigenvectors()(i, e);
            cplx ev = es.eigenvalues()(e);
            rec.eigenvalues.push_back(ev);
            rec.residuals.push_back((t * v - ev * v).norm() / v.norm());
            rec.sectors.push_back(blocked ? w : std::vector<int>{});
            rec.eigenvectors.col(col++) = v;
        }
    }
    return rec;
}

CMat hamiltonian(const ChainContext& ctx, double h, double agree) {
    auto dc = [&](double s) { return ((transfer_matrix(ctx, cplx(s)) - transfer_matrix(ctx, cplx(-s))) / (2 * s)).eval(); };
    CMat d1 = dc(h), d2 = dc(h / 2);
    CMat rich = (4.0 * d2 - d1) / 3.0;
    double scale = std::max(1.0, max_abs(rich));
    if (max_abs(rich - d2) > agree * scale) throw ChainError("Richardson estimates for dt/dl disagree");
    return rich;
}

CMat normalized_hamiltonian(const ChainContext& ctx) {
    CMat t0 = transfer_matrix(ctx, 0.0);
    cplx scale = t0(0, 0);
    if (max_abs(t0 - scale * CMat::Identity(t0.rows(), t0.cols())) > 1e-9 * std::abs(scale))
        throw ChainError("t(0) is not a multiple of the identity for this boundary");
    return (cplx(0, 1) / scale) * hamiltonian(ctx);
}

}  // namespace ospk
