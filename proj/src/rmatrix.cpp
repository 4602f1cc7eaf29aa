#include "ospk/rmatrix.hpp"

namespace ospk {

std::string to_string(Normalization n) { return n == Normalization::RationalU ? "rational-u" : "physical"; }

namespace {

GaussQ kappa_of(const GradingSpec& s) { return GaussQ(s.kappa()); }

// a I + b P + c Q for scalar-valued coefficients in any entry type.
template <class T>
GMat<T> combine(const GradingSpec& s, const T& a, const T& b, const T& c) {
    GMat<T> out = GMat<T>::identity(s, 2).scaled(a);
    out = out + make_P<T>(s).scaled(b);
    out = out + make_Q<T>(s).scaled(c);
    return out;
}

}  // namespace

RMatrixHandle r_matrix(const GradingSpec& s, Normalization norm) {
    RatFunc x = RatFunc::var();
    GaussQ k = kappa_of(s);
    if (norm == Normalization::RationalU) {
        return {s, norm, combine<RatFunc>(s, RatFunc(1), x.inverse(), -(x + RatFunc(k)).inverse())};
    }
    GaussQ I = GaussQ::I();
    RatFunc ik(I * k);
    return {s, norm, combine<RatFunc>(s, x * (x + ik), RatFunc(I) * (x + ik), RatFunc(-I) * x)};
}

GMat<MPoly> r_poly(const GradingSpec& s, Normalization norm, const MPoly& x, bool flip_q) {
    GaussQ k = kappa_of(s);
    MPoly qsign(flip_q ? -1L : 1L);
    if (norm == Normalization::RationalU) {
        MPoly xk = x + MPoly(k);
        return combine<MPoly>(s, x * xk, xk, -x * qsign);
    }
    GaussQ I = GaussQ::I();
    MPoly xk = x + MPoly(I * k);
    return combine<MPoly>(s, x * xk, xk.scaled(I), x.scaled(-I) * qsign);
}

std::optional<std::string> first_witness(const GMat<MPoly>& r, const std::vector<std::string>& names) {
    for (int i = 0; i < r.m.rows(); ++i) {
        const auto& row = r.m.row(i);
        if (row.empty()) continue;
        const auto& [j, v] = *row.begin();
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + v.str(names);
    }
    return std::nullopt;
}

int max_entry_degree(const GMat<MPoly>& a) {
    int d = 0;
    a.m.for_each([&](int, int, const MPoly& v) { d = std::max(d, v.total_degree()); });
    return d;
}

VerifyReport verify_ybe(const GradingSpec& s, bool flip_q) {
    Stopwatch sw;
    MPoly u = MPoly::var(0), v = MPoly::var(1);
    auto R12 = embed(r_poly(s, Normalization::RationalU, u, flip_q), 3, 0, 1);
    auto R13 = embed(r_poly(s, Normalization::RationalU, u + v, flip_q), 3, 0, 2);
    auto R23 = embed(r_poly(s, Normalization::RationalU, v, flip_q), 3, 1, 2);
    auto lhs = R12 * R13 * R23;
    auto rhs = R23 * R13 * R12;
    auto res = lhs - rhs;
    VerifyReport rep;
    rep.identity = flip_q ? "ybe(mutated)" : "ybe";
    rep.algebra = s.descriptor();
    rep.witness = first_witness(res);
    rep.ok = !rep.witness;
    rep.max_degree = max_entry_degree(lhs);
    rep.elapsed_ms = sw.ms();
    return rep;
}

VerifyReport verify_crossing_unitarity(const GradingSpec& s) {
    Stopwatch sw;
    VerifyReport rep;
    rep.identity = "crossing-unitarity";
    rep.algebra = s.descriptor();
    MPoly l = MPoly::var(0);
    GaussQ k = kappa_of(s);
    GaussQ I = GaussQ::I();
    auto R = r_poly(s, Normalization::PhysicalLambda, l);
    auto Rm = r_poly(s, Normalization::PhysicalLambda, -l);
    MPoly scalar = (l * l + MPoly(k * k)) * (l * l + MPoly(1));
    auto uni = R * Rm - GMat<MPoly>::identity(s, 2).scaled(scalar);
    auto cross = R - partial_transpose(r_poly(s, Normalization::PhysicalLambda, -l - MPoly(I * k)), 0);
    rep.witness = first_witness(uni, {"lambda"});
    if (rep.witness) {
        rep.witness = "unitarity: " + *rep.witness;
    } else if (auto w = first_witness(cross, {"lambda"})) {
        rep.witness = "crossing: " + *w;
    }
    rep.ok = !rep.witness;
    rep.max_degree = max_entry_degree(R * Rm);
    rep.elapsed_ms = sw.ms();
    return rep;
}

VerifyReport verify_double_transpose(const GradingSpec& s) {
    Stopwatch sw;
    VerifyReport rep;
    rep.identity = "r-t1t2";
    rep.algebra = s.descriptor();
    auto R = r_poly(s, Normalization::RationalU, MPoly::var(0));
    rep.witness = first_witness(partial_transpose(partial_transpose(R, 0), 1) - R);
    rep.ok = !rep.witness;
    rep.max_degree = max_entry_degree(R);
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace ospk

namespace ospk {

VerifyReport verify_pq_algebra(const GradingSpec& s) {
    Stopwatch sw;
    VerifyReport rep;
    rep.identity = "pq-algebra";
    rep.algebra = s.descriptor();
    auto P = make_P<MPoly>(s), Q = make_Q<MPoly>(s);
    auto I = GMat<MPoly>::identity(s, 2);
    MPoly t0(GaussQ(s.theta0())), tq(GaussQ(s.theta0() * (s.m() - s.n())));
    auto scale = [](GMat<MPoly> a, const MPoly& c) {
        GMat<MPoly> out(a.spec, a.factors);
        a.m.for_each([&](int i, int j, const MPoly& v) { out.m.set(i, j, v * c); });
        return out;
    };
    // P^2 = I, PQ = QP = theta0 Q, Q^2 = theta0 (m - n) Q
    for (const auto& [name, res] : {std::pair{"P^2 - I", P * P - I}, std::pair{"PQ - theta0 Q", P * Q - scale(Q, t0)},
                                    std::pair{"QP - theta0 Q", Q * P - scale(Q, t0)},
                                    std::pair{"Q^2 - theta0 (m-n) Q", Q * Q - scale(Q, tq)}}) {
        if (auto w = first_witness(res)) {
            rep.witness = std::string(name) + ": " + *w;
            break;
        }
    }
    rep.ok = !rep.witness;
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace ospk
