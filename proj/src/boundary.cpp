#include "ospk/boundary.hpp"

#include <algorithm>
#include <set>

#include <Eigen/Eigenvalues>

namespace ospk {

std::string to_string(Family f) {
    switch (f) {
        case Family::D1: return "D1";
        case Family::D2: return "D2";
        case Family::D3: return "D3";
        case Family::D4: return "D4";
        case Family::D5: return "D5";
        case Family::ANTIDIAG: return "ANTIDIAG";
        case Family::C1: return "C1";
        case Family::C2: return "C2";
        case Family::CUSTOM: return "CUSTOM";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::D1, Family::D2, Family::D3, Family::D4, Family::D5, Family::ANTIDIAG, Family::C1, Family::C2,
                     Family::CUSTOM})
        if (to_string(f) == s) return f;
    throw BoundaryError("unknown family '" + s + "'");
}

Param Param::parse(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "oo" || s == "inf" || s == "infinity" || s == "\xE2\x88\x9E") return infinity();
    RatFunc f = parse_ratfunc(s);
    if (f.is_constant()) return number(f.num().coeff(0));
    return function(f);
}

std::string Param::str() const {
    switch (kind) {
        case Kind::Number: return value.str();
        case Kind::Infinity: return "oo";
        case Kind::Function: return fn.str("u");
    }
    return "?";
}

RatFunc f_of(const Param& c) {
    if (c.is_infinite()) return RatFunc(-1);
    if (c.kind != Param::Kind::Number) throw BoundaryError("parameter c must be a number or oo");
    QPoly x = QPoly::x();
    return RatFunc(QPoly(GaussQ(1)) + x.scaled(c.value), QPoly(GaussQ(1)) - x.scaled(c.value));
}

namespace {

std::optional<Param> find(const ParamMap& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) return std::nullopt;
    return it->second;
}

Param require(const ParamMap& p, const std::string& key, const std::string& fam) {
    auto v = find(p, key);
    if (!v) throw BoundaryError(fam + ": missing parameter '" + key + "'");
    return *v;
}

int get_int(const ParamMap& p, const std::string& key, const std::string& fam, std::optional<int> dflt = std::nullopt) {
    auto v = find(p, key);
    if (!v) {
        if (dflt) return *dflt;
        throw BoundaryError(fam + ": missing integer parameter '" + key + "'");
    }
    if (v->kind != Param::Kind::Number || !v->value.is_real() || v->value.re().get_den() != 1)
        throw BoundaryError(fam + ": parameter '" + key + "' must be an integer");
    return static_cast<int>(v->value.re().get_num().get_si());
}

GaussQ get_number(const ParamMap& p, const std::string& key, const std::string& fam, std::optional<GaussQ> dflt = std::nullopt) {
    auto v = find(p, key);
    if (!v) {
        if (dflt) return *dflt;
        throw BoundaryError(fam + ": missing parameter '" + key + "'");
    }
    if (v->kind != Param::Kind::Number) throw BoundaryError(fam + ": parameter '" + key + "' must be a finite number");
    return v->value;
}

// 1/x with 0 <-> infinity.
Param reciprocal(const Param& x, bool negate) {
    if (x.is_infinite()) return Param::number(GaussQ(0));
    if (x.value.is_zero()) return Param::infinity();
    GaussQ r = x.value.inverse();
    return Param::number(negate ? -r : r);
}

// c from either "c" or the physical "xi" (xi = 1/c, or xi = -1/c when negate).
Param c_param(const ParamMap& p, const std::string& ckey, const std::string& xikey, bool negate, const std::string& fam) {
    if (auto c = find(p, ckey)) return *c;
    if (auto xi = find(p, xikey)) return reciprocal(*xi, negate);
    throw BoundaryError(fam + ": missing parameter '" + ckey + "' (or '" + xikey + "')");
}

std::string ext(int i) { return std::to_string(i + 1); }

void set_diag(GMat<RatFunc>& K, int i, const RatFunc& v) { K.m.set(i, i, v); }

struct Built {
    GMat<RatFunc> K;
    ParamMap params;
};

Built build(const GradingSpec& s, Family fam, const ParamMap& p, bool check) {
    const std::string F = to_string(fam);
    const int m = s.m(), n = s.n(), d = s.dim();
    GMat<RatFunc> K(s, 1);
    ParamMap out;
    auto fail = [&](const std::string& why) { throw BoundaryError(F + " on " + s.pretty() + ": " + why); };

    switch (fam) {
        case Family::D1: {
            if (check && m % 2 != 0) fail("requires even m (no extension to odd m)");
            Param c = c_param(p, "c", "xi", false, F);
            RatFunc f = f_of(c);
            for (int i = 0; i < d; ++i) set_diag(K, i, RatFunc(1));
            for (int i = 0; i < m / 2; ++i) set_diag(K, s.bar(i), f);
            for (int j = 0; j < n / 2; ++j) set_diag(K, s.bar(m + j), f);
            out["c"] = c;
            break;
        }
        case Family::D2: {
            if (check && m < 2) fail("requires m >= 2");
            GaussQ a = GaussQ(s.kappa()) - GaussQ(s.theta0());  // kappa - theta0
            Param c1 = c_param(p, "c1", "xi1", true, F);
            std::optional<Param> cm = find(p, "cm");
            if (!cm) cm = find(p, "c" + std::to_string(m));
            if (!cm) {
                if (auto xin = find(p, "xin")) cm = reciprocal(*xin, true);
            }
            if (!cm) {
                // solve the quadric for c_m
                if (c1.is_infinite()) {
                    cm = a.is_zero() ? Param::infinity() : Param::number(-a.inverse());
                } else {
                    GaussQ den = a * c1.value + GaussQ(1);
                    cm = den.is_zero() ? Param::infinity() : Param::number(-c1.value / den);
                }
            }
            if (check) {
                bool ok;
                if (!c1.is_infinite() && !cm->is_infinite())
                    ok = (a * c1.value * cm->value + c1.value + cm->value).is_zero();
                else if (c1.is_infinite() && cm->is_infinite())
                    ok = a.is_zero();
                else
                    ok = (a * (c1.is_infinite() ? cm->value : c1.value) + GaussQ(1)).is_zero();
                if (!ok) fail("parameters violate (kappa-theta0) c1 cm + c1 + cm = 0");
            }
            for (int i = 0; i < d; ++i) set_diag(K, i, RatFunc(1));
            set_diag(K, 0, f_of(c1));
            set_diag(K, m - 1, f_of(*cm));
            out["c1"] = c1;
            out["cm"] = *cm;
            break;
        }
        case Family::D3: {
            int m1 = get_int(p, "m1", F, 0), n1 = get_int(p, "n1", F, 0);
            if (m1 < 0 || 2 * m1 > m || n1 < 0 || 2 * n1 > n) fail("m1 or n1 out of range");
            GaussQ den = GaussQ(s.kappa()) - GaussQ(s.theta0() * (2 * m1 - 2 * n1 - 1));
            Param c = den.is_zero() ? Param::infinity() : Param::number(GaussQ(2) / den);
            if (auto given = find(p, "c"); given && check && !(*given == c)) fail("c must equal 2/(kappa - theta0(2 m1 - 2 n1 - 1)) = " + c.str());
            RatFunc f = f_of(c);
            for (int i = 0; i < d; ++i) set_diag(K, i, f);
            for (int i = 0; i < m1; ++i) {
                set_diag(K, i, RatFunc(1));
                set_diag(K, s.bar(i), RatFunc(1));
            }
            for (int j = 0; j < n1; ++j) {
                set_diag(K, m + j, RatFunc(1));
                set_diag(K, s.bar(m + j), RatFunc(1));
            }
            out["m1"] = Param::number(GaussQ(m1));
            out["n1"] = Param::number(GaussQ(n1));
            out["c"] = c;
            break;
        }
        case Family::D4: {
            if (check && !(m == 4 && n == 0)) fail("only defined for so(4)");
            if (d != 4) fail("needs a four-dimensional representation");
            Param c2 = c_param(p, "c2", "xi2", false, F);
            Param c3 = c_param(p, "c3", "xi3", false, F);
            RatFunc f2 = f_of(c2), f3 = f_of(c3);
            set_diag(K, 0, RatFunc(1));
            set_diag(K, 1, f2);
            set_diag(K, 2, f3);
            set_diag(K, 3, f2 * f3);
            out["c2"] = c2;
            out["c3"] = c3;
            break;
        }
        case Family::D5: {
            if (check && !(m == 2 && n == 0)) fail("only defined for so(2)");
            if (d != 2) fail("needs a two-dimensional representation");
            for (int i = 0; i < 2; ++i) {
                Param k = require(p, "k" + ext(i), F);
                if (k.is_infinite()) fail("entries must be finite");
                set_diag(K, i, k.kind == Param::Kind::Function ? k.fn : RatFunc(k.value));
                out["k" + ext(i)] = k;
            }
            break;
        }
        case Family::ANTIDIAG: {
            bool pure = (n == 0 && m % 2 == 0) || m == 0;
            if (check && !pure) fail("antidiagonal solutions exist only for pure so(2m) or sp(2n)");
            for (int i = 0; i < d; ++i) {
                int ib = s.bar(i);
                if (ib < i) continue;
                GaussQ li = get_number(p, "l" + ext(i), F, GaussQ(1));
                if (li.is_zero()) fail("l" + ext(i) + " must be nonzero");
                GaussQ lb = ib == i ? li : get_number(p, "l" + ext(ib), F, li.inverse());
                if (check && !(li * lb).is_one()) fail("l_i l_ibar = 1 violated");
                K.m.set(i, ib, RatFunc(li));
                K.m.set(ib, i, RatFunc(lb));
                out["l" + ext(i)] = Param::number(li);
                if (ib != i) out["l" + ext(ib)] = Param::number(lb);
            }
            break;
        }
        case Family::C1: {
            if (check && (m % 2 != 0 || n < 2)) fail("requires even m and n >= 2");
            for (int i = 0; i < m; ++i) set_diag(K, i, RatFunc(i < m / 2 ? 1 : -1));
            for (int j = 0; j < n / 2; ++j) {
                int i = m + j, ib = s.bar(i);
                GaussQ k = get_number(p, "k" + ext(i), F, GaussQ(0));
                GaussQ li = get_number(p, "l" + ext(i), F, GaussQ(1));
                std::optional<GaussQ> dflt;
                if (!li.is_zero()) dflt = (GaussQ(1) - k * k) / li;
                GaussQ lb = get_number(p, "l" + ext(ib), F, dflt);
                if (check && !(k * k + li * lb).is_one()) fail("k_i^2 + l_i l_ibar = 1 violated at i=" + ext(i));
                set_diag(K, i, RatFunc(k));
                set_diag(K, ib, RatFunc(-k));
                K.m.set(i, ib, RatFunc(li));
                K.m.set(ib, i, RatFunc(lb));
                out["k" + ext(i)] = Param::number(k);
                out["l" + ext(i)] = Param::number(li);
                out["l" + ext(ib)] = Param::number(lb);
            }
            break;
        }
        case Family::C2: {
            int m1 = get_int(p, "m1", F, 0), m2 = get_int(p, "m2", F, 0);
            if (m % 2 != 0) fail("requires even m");
            if (check) {
                if (m2 < 0 || m1 < m2) fail("need m1 >= m2 >= 0");
                if (m1 + m2 > m / 2 - 1) fail("need m1 + m2 <= m/2 - 1");
                if (m1 - m2 > n / 2) fail("need m1 - m2 <= n/2");
                if ((m1 - m2 - n / 2) % 2 != 0) fail("need m1 - m2 = n/2 mod 2");
            }
            int n1 = (n + 2 * m1 - 2 * m2) / 4;
            for (int q = 0; q < m / 2; ++q) {
                int i = q, ib = s.bar(q);
                if (q < m1 + m2) {
                    RatFunc v(q < m1 ? 1 : -1);
                    set_diag(K, i, v);
                    set_diag(K, ib, v);
                } else {
                    GaussQ li = get_number(p, "l" + ext(i), F, GaussQ(1));
                    if (li.is_zero()) fail("l" + ext(i) + " must be nonzero");
                    K.m.set(i, ib, RatFunc(li));
                    K.m.set(ib, i, RatFunc(li.inverse()));
                    out["l" + ext(i)] = Param::number(li);
                }
            }
            for (int j = 0; j < n / 2; ++j) {
                RatFunc v(j < n1 ? 1 : -1);
                set_diag(K, m + j, v);
                set_diag(K, s.bar(m + j), v);
            }
            out["m1"] = Param::number(GaussQ(m1));
            out["m2"] = Param::number(GaussQ(m2));
            break;
        }
        case Family::CUSTOM: fail("use make_custom for explicit matrices");
    }
    return {K, out};
}

}  // namespace

KSolution make_k(const GradingSpec& s, Family f, const ParamMap& params) {
    Built b = build(s, f, params, true);
    return {s, f, b.params, b.K, Normalization::RationalU};
}

KSolution force_k(const GradingSpec& s, Family f, const ParamMap& params) {
    Built b = build(s, f, params, false);
    return {s, f, b.params, b.K, Normalization::RationalU};
}

KSolution make_custom(const GradingSpec& s, const GMat<RatFunc>& m, Normalization norm) {
    if (m.factors != 1 || m.spec != s) throw BoundaryError("custom K must be a single-factor matrix of the same algebra");
    return {s, Family::CUSTOM, {}, m, norm};
}

std::map<std::string, GaussQ> physical_xi(const KSolution& k) {
    std::map<std::string, GaussQ> xi;
    auto inv = [](const Param& c, bool negate) {
        if (c.is_infinite()) return GaussQ(0);
        if (c.value.is_zero()) throw BoundaryError("c = 0 has no finite xi");
        return negate ? -c.value.inverse() : c.value.inverse();
    };
    switch (k.family) {
        case Family::D1:
        case Family::D3: xi["xi"] = inv(k.params.at("c"), false); break;
        case Family::D2:
            xi["xi1"] = inv(k.params.at("c1"), true);
            xi["xin"] = inv(k.params.at("cm"), true);
            break;
        case Family::D4:
            xi["xi2"] = inv(k.params.at("c2"), false);
            xi["xi3"] = inv(k.params.at("c3"), false);
            break;
        default: break;
    }
    return xi;
}

RatFunc physical_scalar(const KSolution& k) {
    RatFunc lam = RatFunc::var();
    GaussQ I = GaussQ::I();
    auto xi = physical_xi(k);
    switch (k.family) {
        case Family::D1:
        case Family::D3: return -lam + RatFunc(I * xi.at("xi"));
        case Family::D4: return (-lam + RatFunc(I * xi.at("xi2"))) * (-lam + RatFunc(I * xi.at("xi3")));
        default: return RatFunc(1);
    }
}

KSolution to_physical(const KSolution& k) {
    if (k.norm == Normalization::PhysicalLambda) return k;
    RatFunc sub(QPoly::x().scaled(-GaussQ::I()));
    RatFunc sc = physical_scalar(k);
    KSolution out = k;
    out.norm = Normalization::PhysicalLambda;
    out.matrix = GMat<RatFunc>(k.spec, 1);
    k.matrix.m.for_each([&](int i, int j, const RatFunc& v) { out.matrix.m.set(i, j, v.compose(sub) * sc); });
    return out;
}

GMat<MPoly> k_poly(const GMat<RatFunc>& k, int var) {
    QPoly D(GaussQ(1));
    k.m.for_each([&](int, int, const RatFunc& v) {
        QPoly g = gcd(D, v.den());
        D = D * divmod(v.den(), g).first;
    });
    MPoly x = MPoly::var(var);
    GMat<MPoly> out(k.spec, k.factors);
    k.m.for_each([&](int i, int j, const RatFunc& v) {
        QPoly scaled = v.num() * divmod(D, v.den()).first;
        out.m.set(i, j, MPoly::from_upoly(scaled, x));
    });
    return out;
}

GMat<MPoly> reflection_residual(const GradingSpec& s, const GMat<MPoly>& Ku, const GMat<MPoly>& Kv, Normalization norm) {
    MPoly u = MPoly::var(0), v = MPoly::var(1);
    auto I1 = GMat<MPoly>::identity(s, 1);
    auto K1 = graded_kron(Ku, I1), K2 = graded_kron(I1, Kv);
    auto Rm = r_poly(s, norm, u - v), Rp = r_poly(s, norm, u + v);
    return Rm * K1 * Rp * K2 - K2 * Rp * K1 * Rm;
}

std::vector<MPoly> constraint_polys(const GMat<MPoly>& residual) {
    std::map<std::string, MPoly> uniq;
    residual.m.for_each([&](int, int, const MPoly& e) {
        for (auto& [key, c] : e.coefficients_in({0, 1})) {
            MPoly norm = c.scaled(c.terms().begin()->second.inverse());
            uniq.emplace(norm.str(), norm);
        }
    });
    std::vector<MPoly> out;
    for (auto& [k, v] : uniq) out.push_back(v);
    return out;
}

VerifyReport verify_reflection(const KSolution& k) {
    Stopwatch sw;
    VerifyReport rep;
    rep.identity = "reflection";
    rep.algebra = k.spec.descriptor();
    auto Ku = k_poly(k.matrix, 0), Kv = k_poly(k.matrix, 1);
    auto res = reflection_residual(k.spec, Ku, Kv, k.norm);
    rep.witness = first_witness(res);
    rep.ok = !rep.witness;
    rep.max_degree = max_entry_degree(Ku) + 2;
    rep.elapsed_ms = sw.ms();
    return rep;
}

VerifyReport verify_dual_reflection(const KSolution& kp) {
    Stopwatch sw;
    VerifyReport rep;
    rep.identity = "dual-reflection";
    rep.algebra = kp.spec.descriptor();
    if (kp.norm != Normalization::PhysicalLambda) throw BoundaryError("dual reflection equation is stated in the physical normalization");
    const GradingSpec& s = kp.spec;
    MPoly u = MPoly::var(0), v = MPoly::var(1);
    auto I1 = GMat<MPoly>::identity(s, 1);
    auto K1t = partial_transpose(graded_kron(k_poly(kp.matrix, 0), I1), 0);
    auto K2t = partial_transpose(graded_kron(I1, k_poly(kp.matrix, 1)), 1);
    MPoly shift(GaussQ(s.kappa()) * GaussQ(-2) * GaussQ::I());
    auto Ra = r_poly(s, Normalization::PhysicalLambda, v - u);
    auto Rb = r_poly(s, Normalization::PhysicalLambda, -u - v + shift);
    auto res = Ra * K1t * Rb * K2t - K2t * Rb * K1t * Ra;
    rep.witness = first_witness(res);
    rep.ok = !rep.witness;
    rep.elapsed_ms = sw.ms();
    return rep;
}

KSolution dualize_k(const KSolution& km) {
    if (km.norm != Normalization::PhysicalLambda) throw BoundaryError("dualize_k expects the physical normalization");
    GaussQ ik = GaussQ::I() * GaussQ(km.spec.kappa());
    RatFunc sub(QPoly(std::vector<GaussQ>{-ik, GaussQ(-1)}));
    GMat<RatFunc> shifted(km.spec, 1);
    km.matrix.m.for_each([&](int i, int j, const RatFunc& v) { shifted.m.set(i, j, v.compose(sub)); });
    KSolution out = km;
    out.matrix = super_transpose(shifted);
    return out;
}

bool is_super_orthogonal(const GMat<GaussQ>& U) {
    return U.factors == 1 && U * super_transpose(U) == GMat<GaussQ>::identity(U.spec, 1);
}

KSolution transform_k(const KSolution& k, TransformMode mode, const GMat<GaussQ>* U) {
    KSolution out = k;
    out.family = Family::CUSTOM;
    GMat<RatFunc> M = mode == TransformMode::Conjugate ? k.matrix : super_transpose(k.matrix);
    if (mode != TransformMode::Transpose) {
        if (!U) throw BoundaryError("conjugation needs a matrix U");
        if (U->spec != k.spec || !is_super_orthogonal(*U)) throw BoundaryError("U U^t = 1 fails: U is not in the (super)orthogonal/symplectic group");
        auto Ur = GMat<RatFunc>(k.spec, 1, U->m.map<RatFunc>([](const GaussQ& x) { return RatFunc(x); }));
        M = Ur * M * super_transpose(Ur);
    }
    out.matrix = M;
    out.params.clear();
    return out;
}

// ---- classification ------------------------------------------------------

namespace {

enum Label { ONE = 0, F1 = 1, F2 = 2, NEG = 3 };

struct Pairs {
    std::vector<std::pair<int, int>> so, sp;  // (i, ibar) with i < ibar
    int middle = -1;
};

Pairs pairs_of(const GradingSpec& s) {
    Pairs p;
    for (int i = 0; i < s.m() / 2; ++i) p.so.emplace_back(i, s.bar(i));
    if (s.m() % 2) p.middle = s.m() / 2;
    for (int j = 0; j < s.n() / 2; ++j) p.sp.emplace_back(s.m() + j, s.bar(s.m() + j));
    return p;
}

// Index permutations preserving the block splitting and the conjugate pairs.
std::vector<std::vector<int>> relabel_group(const GradingSpec& s) {
    Pairs P = pairs_of(s);
    std::vector<std::vector<int>> out;
    std::vector<int> so_perm(P.so.size()), sp_perm(P.sp.size());
    for (std::size_t k = 0; k < so_perm.size(); ++k) so_perm[k] = static_cast<int>(k);
    do {
        for (std::size_t k = 0; k < sp_perm.size(); ++k) sp_perm[k] = static_cast<int>(k);
        do {
            std::size_t np = P.so.size() + P.sp.size();
            for (unsigned flips = 0; flips < (1u << np); ++flips) {
                std::vector<int> g(s.dim());
                if (P.middle >= 0) g[P.middle] = P.middle;
                for (std::size_t k = 0; k < P.so.size(); ++k) {
                    auto [a, b] = P.so[k];
                    auto [ta, tb] = P.so[so_perm[k]];
                    bool f = flips >> k & 1u;
                    g[a] = f ? tb : ta;
                    g[b] = f ? ta : tb;
                }
                for (std::size_t k = 0; k < P.sp.size(); ++k) {
                    auto [a, b] = P.sp[k];
                    auto [ta, tb] = P.sp[sp_perm[k]];
                    bool f = flips >> (k + P.so.size()) & 1u;
                    g[a] = f ? tb : ta;
                    g[b] = f ? ta : tb;
                }
                out.push_back(std::move(g));
            }
        } while (std::next_permutation(sp_perm.begin(), sp_perm.end()));
    } while (std::next_permutation(so_perm.begin(), so_perm.end()));
    return out;
}

std::vector<int> canonical(const std::vector<int>& lab, const std::vector<std::vector<int>>& group, bool swap12) {
    std::vector<int> best;
    for (int sw = 0; sw < (swap12 ? 2 : 1); ++sw) {
        std::vector<int> l = lab;
        if (sw)
            for (int& x : l) x = x == F1 ? F2 : x == F2 ? F1 : x;
        for (const auto& g : group) {
            std::vector<int> t(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) t[g[i]] = l[i];
            if (best.empty() || t < best) best = t;
        }
    }
    return best;
}

// Diagonal K with class values 1, f(c1), f(c2), -1 (c_k = MPoly variable 1+k),
// denominators cleared.
GMat<MPoly> class_k(const GradingSpec& s, const std::vector<int>& lab, int var) {
    MPoly x = MPoly::var(var);
    MPoly c1 = MPoly::var(2), c2 = MPoly::var(3);
    bool has1 = std::count(lab.begin(), lab.end(), F1) > 0, has2 = std::count(lab.begin(), lab.end(), F2) > 0;
    MPoly d1 = has1 ? MPoly(1) - c1 * x : MPoly(1), d2 = has2 ? MPoly(1) - c2 * x : MPoly(1);
    GMat<MPoly> K(s, 1);
    for (std::size_t i = 0; i < lab.size(); ++i) {
        MPoly v;
        switch (lab[i]) {
            case ONE: v = d1 * d2; break;
            case F1: v = (MPoly(1) + c1 * x) * d2; break;
            case F2: v = d1 * (MPoly(1) + c2 * x); break;
            case NEG: v = -(d1 * d2); break;
        }
        K.m.set(static_cast<int>(i), static_cast<int>(i), v);
    }
    return K;
}

std::vector<MPoly> class_constraints(const GradingSpec& s, const std::vector<int>& lab) {
    return constraint_polys(reflection_residual(s, class_k(s, lab, 0), class_k(s, lab, 1), Normalization::RationalU));
}

// Nonzero roots of a univariate polynomial that are Gaussian rationals.
std::vector<GaussQ> rational_roots(QPoly g) {
    std::vector<GaussQ> roots;
    while (g.degree() > 0 && g.coeff(0).is_zero()) g = divmod(g, QPoly::x()).first;
    if (g.degree() <= 0) return roots;
    if (g.degree() == 1) {
        roots.push_back(-g.coeff(0) / g.coeff(1));
        return roots;
    }
    int deg = g.degree();
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
    std::complex<double> lead = g.lead().to_complex();
    for (int k = 0; k < deg; ++k) C(0, k) = -g.coeff(deg - 1 - k).to_complex() / lead;
    for (int k = 1; k < deg; ++k) C(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
    for (int k = 0; k < deg; ++k) {
        auto z = es.eigenvalues()(k);
        GaussQ r(rationalize(z.real(), 1e-8), rationalize(z.imag(), 1e-8));
        if (g.eval(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

QPoly2 strip_monomials(QPoly2 g) {
    while (g.degree() > 0 && g.coeff(0).is_zero_poly()) {
        std::vector<QPoly> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = QPoly2(std::move(c));
    }
    for (;;) {
        bool all = !g.is_zero_poly();
        for (const auto& c : g.coeffs()) all = all && (c.is_zero_poly() || c.coeff(0).is_zero());
        if (!all || g.coeffs().empty()) break;
        std::vector<QPoly> c;
        for (const auto& a : g.coeffs()) c.push_back(a.is_zero_poly() ? a : divmod(a, QPoly::x()).first);
        QPoly2 h(std::move(c));
        if (h == g) break;
        g = h;
    }
    return g;
}

MPoly from_qpoly2(const QPoly2& g, int iu, int iv) {
    MPoly r;
    for (int k = 0; k <= g.degree(); ++k) r += MPoly::from_upoly(g.coeff(k), MPoly::var(iu)) * MPoly::var(iv).pow(k);
    return r;
}

// Sample point on the one-parameter set g(c1, c2) = 0: c1 = t, c2 the rational root.
std::optional<std::pair<GaussQ, GaussQ>> curve_point(const QPoly2& g) {
    for (long t : {3L, 5L, 7L, -2L, 11L}) {
        GaussQ c1 = GaussQ::frac(1, t);
        std::vector<GaussQ> coeffs;
        for (const auto& a : g.coeffs()) coeffs.push_back(a.eval(c1));
        auto roots = rational_roots(QPoly(coeffs));
        if (!roots.empty()) return std::make_pair(c1, roots.front());
    }
    return std::nullopt;
}

bool verify_labels(const GradingSpec& s, const std::vector<int>& lab, const std::vector<GaussQ>& cs) {
    GMat<MPoly> Ku = class_k(s, lab, 0), Kv = class_k(s, lab, 1);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        Ku = GMat<MPoly>(s, 1, Ku.m.map<MPoly>([&](const MPoly& e) { return e.substitute(static_cast<int>(2 + k), cs[k]); }));
        Kv = GMat<MPoly>(s, 1, Kv.m.map<MPoly>([&](const MPoly& e) { return e.substitute(static_cast<int>(2 + k), cs[k]); }));
    }
    return reflection_residual(s, Ku, Kv, Normalization::RationalU).m.is_zero_matrix();
}

std::string poly_str(const MPoly& p, const std::vector<std::string>& names) { return p.str(names); }

}  // namespace

std::string ClassifiedFamily::describe() const {
    std::string out = family;
    for (auto& [k, v] : ints) out += " " + k + "=" + std::to_string(v);
    if (fixed) out += " " + *fixed;
    for (auto& c : constraints) out += " [" + c + " = 0]";
    if (constraints.empty() && !fixed && !params.empty()) {
        out += " free:";
        for (auto& p : params) out += " " + p;
    }
    return out;
}

std::vector<ClassifiedFamily> classify_diagonal(const GradingSpec& s) {
    std::vector<ClassifiedFamily> out;
    const int d = s.dim();
    if (s.m() == 2 && s.n() == 0) {
        ClassifiedFamily f;
        f.family = "D5";
        f.params = {"k1(u)", "k2(u)"};
        // kappa = 0: any diagonal pair of functions; spot-check one instance.
        KSolution k = make_k(s, Family::D5, {{"k1", Param::parse("u^2+1")}, {"k2", Param::parse("(3u-2)/(u+5)")}});
        f.verified = verify_reflection(k).ok;
        out.push_back(f);
        return out;
    }
    Pairs P = pairs_of(s);
    auto group = relabel_group(s);

    // enumerate labelings over {ONE, F1, F2}
    std::set<std::vector<int>> seen;
    std::vector<int> lab(d, 0);
    long total = 1;
    for (int i = 0; i < d; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (int i = 0; i < d; ++i) {
            lab[i] = static_cast<int>(c % 3);
            c /= 3;
        }
        bool h0 = false, h1 = false, h2 = false;
        for (int x : lab) {
            h0 |= x == ONE;
            h1 |= x == F1;
            h2 |= x == F2;
        }
        if (!h0 || !h1 || (h2 && !h1)) continue;
        if (h2) {
            // cocycle rule: no three pairwise non-conjugate indices in three distinct classes
            bool bad = false;
            for (int a = 0; a < d && !bad; ++a)
                for (int b = a + 1; b < d && !bad; ++b)
                    for (int e = b + 1; e < d && !bad; ++e) {
                        if (s.bar(a) == b || s.bar(a) == e || s.bar(b) == e) continue;
                        std::set<int> cl{lab[a], lab[b], lab[e]};
                        bad = cl.size() == 3;
                    }
            if (bad) continue;
        }
        // odd m: a single-parameter shape is normalized with the middle index in the f(c) class
        if (!h2 && P.middle >= 0 && lab[P.middle] == ONE) continue;
        seen.insert(canonical(lab, group, h2));
    }

    auto pair_labels = [&](const std::vector<int>& l, std::pair<int, int> pr) { return std::make_pair(l[pr.first], l[pr.second]); };

    for (const auto& L : seen) {
        bool two = std::count(L.begin(), L.end(), F2) > 0;
        auto cons = class_constraints(s, L);
        ClassifiedFamily fam;
        fam.labels = L;
        int split = 0, unsplit = 0;
        for (auto pr : P.so) (pair_labels(L, pr).first != pair_labels(L, pr).second ? split : unsplit)++;
        for (auto pr : P.sp) (pair_labels(L, pr).first != pair_labels(L, pr).second ? split : unsplit)++;
        if (!two) {
            fam.params = {"c"};
            std::vector<GaussQ> sample;
            bool keep = false;
            if (cons.empty()) {
                keep = true;
                sample = {GaussQ::frac(1, 3)};
            } else {
                QPoly g;
                for (const auto& p : cons) g = gcd(g, p.to_upoly(2));
                auto roots = rational_roots(g);
                if (!roots.empty()) {
                    keep = true;
                    fam.fixed = "c=" + roots.front().str();
                    if (roots.size() > 1)
                        for (std::size_t k = 1; k < roots.size(); ++k) *fam.fixed += "," + roots[k].str();
                    sample = {roots.front()};
                } else {
                    std::vector<int> neg = L;
                    for (int& x : neg)
                        if (x == F1) x = NEG;
                    if (class_constraints(s, neg).empty()) {
                        keep = true;
                        fam.fixed = "c=oo";
                        fam.verified = true;
                    }
                }
            }
            if (!keep) continue;
            if (!sample.empty()) fam.verified = verify_labels(s, L, sample);
            bool middle_f = P.middle < 0 || L[P.middle] == F1;
            if (unsplit == 0 && P.middle < 0) {
                fam.family = "D1";
            } else if (split == 0 && middle_f) {
                fam.family = "D3";
                int m1 = 0, n1 = 0;
                for (auto pr : P.so) m1 += L[pr.first] == ONE;
                for (auto pr : P.sp) n1 += L[pr.first] == ONE;
                fam.ints = {{"m1", m1}, {"n1", n1}};
            } else {
                fam.family = "shape";
            }
        } else {
            fam.params = {"c1", "c2"};
            QPoly2 g;
            for (const auto& p : cons) g = gcd(g, p.to_qpoly2(2, 3));
            if (cons.empty()) {
                fam.verified = verify_labels(s, L, {GaussQ::frac(1, 3), GaussQ::frac(1, 5)});
            } else {
                g = strip_monomials(g);
                // c1 = c2 merges the two classes: not a genuine three-valued solution
                QPoly2 merge = lift_v(QPoly::x()) - lift_u(QPoly::x());
                for (;;) {
                    try {
                        g = exact_div(g, merge);
                    } catch (const std::domain_error&) {
                        break;
                    }
                }
                if (g.degree() <= 0 && g.coeff(0).degree() <= 0) continue;  // only isolated or trivial points
                MPoly gm = from_qpoly2(g, 2, 3);
                MPoly::Mono lin{};
                lin[2] = 1;
                auto it = gm.terms().find(lin);
                gm = gm.scaled((it != gm.terms().end() ? it->second : gm.terms().begin()->second).inverse());
                fam.constraints = {poly_str(gm, {"u", "v", "c1", "c2"})};
                if (auto pt = curve_point(g)) fam.verified = verify_labels(s, L, {pt->first, pt->second});
            }
            int n12 = 0;
            for (auto pr : P.so) {
                auto [a, b] = pair_labels(L, pr);
                n12 += (a == F1 && b == F2) || (a == F2 && b == F1);
            }
            bool others_one = std::count(L.begin(), L.end(), ONE) == d - 2;
            fam.family = (n12 == 1 && others_one) ? "D2" : "shape";
        }
        out.push_back(fam);
    }

    if (d == 4) {
        // the D4 ansatz diag(1, f(c2), f(c3), f(c2) f(c3)) with symbolic c2, c3
        auto dk = [&](int var) {
            MPoly x = MPoly::var(var), c2 = MPoly::var(2), c3 = MPoly::var(3);
            MPoly n2 = MPoly(1) + c2 * x, d2 = MPoly(1) - c2 * x, n3 = MPoly(1) + c3 * x, d3 = MPoly(1) - c3 * x;
            GMat<MPoly> K(s, 1);
            K.m.set(0, 0, d2 * d3);
            K.m.set(1, 1, n2 * d3);
            K.m.set(2, 2, d2 * n3);
            K.m.set(3, 3, n2 * n3);
            return K;
        };
        if (reflection_residual(s, dk(0), dk(1), Normalization::RationalU).m.is_zero_matrix()) {
            ClassifiedFamily f;
            f.family = "D4";
            f.params = {"c2", "c3"};
            f.verified = true;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](const ClassifiedFamily& a, const ClassifiedFamily& b) { return a.describe() < b.describe(); });
    return out;
}

std::vector<std::vector<GaussQ>> antidiagonal_solutions(const GradingSpec& s) {
    const int d = s.dim();
    if (d + 2 > MPoly::kMaxVars) throw BoundaryError("antidiagonal solver: dimension too large");
    auto ak = [&](int) {
        GMat<MPoly> K(s, 1);
        for (int i = 0; i < d; ++i) K.m.set(i, s.bar(i), MPoly::var(2 + i));
        return K;
    };
    auto cons = constraint_polys(reflection_residual(s, ak(0), ak(1), Normalization::RationalU));
    const std::vector<GaussQ> grid{GaussQ(1), GaussQ(-1), GaussQ(2), GaussQ(-2), GaussQ::frac(1, 2), GaussQ::frac(-1, 2)};
    std::vector<std::vector<GaussQ>> sols;
    long total = 1;
    for (int i = 1; i < d; ++i) total *= static_cast<long>(grid.size());
    std::vector<GaussQ> pt(2 + d, GaussQ(0));
    for (long code = 0; code < total; ++code) {
        long c = code;
        pt[2] = GaussQ(1);
        for (int i = 1; i < d; ++i) {
            pt[2 + i] = grid[c % grid.size()];
            c /= static_cast<long>(grid.size());
        }
        bool ok = true;
        for (const auto& p : cons) {
            if (!p.eval_exact(pt).is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) sols.emplace_back(pt.begin() + 2, pt.end());
    }
    return sols;
}

QPoly mixed_slope_constraint(const KSolution& k0, const std::vector<GaussQ>& dir) {
    const GradingSpec& s = k0.spec;
    if (static_cast<int>(dir.size()) != s.dim()) throw BoundaryError("direction has the wrong length");
    auto build_k = [&](int var) {
        GMat<MPoly> K = k_poly(k0.matrix, var);
        for (int i = 0; i < s.dim(); ++i) K.m.add(i, i, MPoly::var(2) * MPoly::var(var).scaled(dir[i]));
        return K;
    };
    auto cons = constraint_polys(reflection_residual(s, build_k(0), build_k(1), k0.norm));
    QPoly g;
    for (const auto& p : cons) g = gcd(g, p.to_upoly(2));
    return g;
}

}  // namespace ospk
