#include "ospk/mpoly.hpp"

#include <stdexcept>

namespace ospk {

MPoly MPoly::var(int k) {
    if (k < 0 || k >= kMaxVars) throw std::out_of_range("MPoly::var");
    MPoly p;
    Mono m{};
    m[k] = 1;
    p.t_[m] = GaussQ(1);
    return p;
}

MPoly MPoly::from_upoly(const QPoly& q, const MPoly& x) {
    MPoly r;
    for (int k = q.degree(); k >= 0; --k) r = r * x + MPoly(q.coeff(k));
    return r;
}

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) {
        int s = 0;
        for (auto e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

int MPoly::degree_in(int k) const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [m, c] : t_) d = std::max<int>(d, m[k]);
    return d;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.t_) {
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.t_) {
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    if (a.t_.empty() || b.t_.empty()) return r;
    for (const auto& [ma, ca] : a.t_) {
        for (const auto& [mb, cb] : b.t_) {
            MPoly::Mono m;
            for (int k = 0; k < MPoly::kMaxVars; ++k) {
                int e = ma[k] + mb[k];
                if (e > 255) throw std::overflow_error("MPoly: exponent overflow");
                m[k] = static_cast<std::uint8_t>(e);
            }
            GaussQ c = ca * cb;
            auto it = r.t_.find(m);
            if (it == r.t_.end()) {
                r.t_.emplace(m, std::move(c));
            } else {
                it->second += c;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    }
    return r;
}

MPoly MPoly::pow(int k) const {
    if (k < 0) throw std::domain_error("MPoly::pow: negative exponent");
    MPoly r(1), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

MPoly MPoly::scaled(const GaussQ& s) const {
    if (s.is_zero()) return MPoly();
    MPoly r = *this;
    for (auto& [m, c] : r.t_) c *= s;
    return r;
}

MPoly MPoly::substitute(int k, const MPoly& e) const {
    // group by exponent of variable k, then Horner
    std::map<int, MPoly> by_pow;
    for (const auto& [m, c] : t_) {
        Mono rest = m;
        int d = rest[k];
        rest[k] = 0;
        MPoly term;
        term.t_[rest] = c;
        by_pow[d] += term;
    }
    if (by_pow.empty()) return MPoly();
    MPoly r;
    int top = by_pow.rbegin()->first;
    for (int d = top; d >= 0; --d) {
        r = r * e;
        auto it = by_pow.find(d);
        if (it != by_pow.end()) r += it->second;
    }
    return r;
}

MPoly MPoly::substitute(int k, const GaussQ& c) const { return substitute(k, MPoly(c)); }

std::map<std::vector<int>, MPoly> MPoly::coefficients_in(const std::vector<int>& vars) const {
    std::map<std::vector<int>, MPoly> out;
    for (const auto& [m, c] : t_) {
        std::vector<int> key;
        Mono rest = m;
        for (int v : vars) {
            key.push_back(m[v]);
            rest[v] = 0;
        }
        MPoly term;
        term.t_[rest] = c;
        out[key] += term;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

QPoly MPoly::to_upoly(int k) const {
    std::vector<GaussQ> c(std::max(degree_in(k) + 1, 0), GaussQ(0));
    for (const auto& [m, a] : t_) {
        for (int j = 0; j < kMaxVars; ++j)
            if (j != k && m[j] != 0) throw std::domain_error("MPoly::to_upoly: extra variable");
        c[m[k]] += a;
    }
    return QPoly(std::move(c));
}

QPoly2 MPoly::to_qpoly2(int iu, int iv) const {
    std::vector<std::vector<GaussQ>> c(std::max(degree_in(iv) + 1, 0));
    int du = std::max(degree_in(iu) + 1, 0);
    for (auto& row : c) row.assign(du, GaussQ(0));
    for (const auto& [m, a] : t_) {
        for (int j = 0; j < kMaxVars; ++j)
            if (j != iu && j != iv && m[j] != 0) throw std::domain_error("MPoly::to_qpoly2: extra variable");
        c[m[iv]][m[iu]] += a;
    }
    std::vector<QPoly> out;
    for (auto& row : c) out.emplace_back(std::move(row));
    return QPoly2(std::move(out));
}

GaussQ MPoly::eval_exact(const std::vector<GaussQ>& pt) const {
    GaussQ r(0);
    for (const auto& [m, c] : t_) {
        GaussQ t = c;
        for (int k = 0; k < kMaxVars; ++k)
            for (int e = 0; e < m[k]; ++e) {
                if (k >= static_cast<int>(pt.size())) throw std::out_of_range("MPoly::eval_exact: point too short");
                t *= pt[k];
            }
        r += t;
    }
    return r;
}

std::complex<double> MPoly::eval(const std::vector<std::complex<double>>& pt) const {
    std::complex<double> r = 0;
    for (const auto& [m, c] : t_) {
        std::complex<double> t = c.to_complex();
        for (int k = 0; k < kMaxVars; ++k)
            if (m[k]) {
                if (k >= static_cast<int>(pt.size())) throw std::out_of_range("MPoly::eval: point too short");
                t *= std::pow(pt[k], static_cast<int>(m[k]));
            }
        r += t;
    }
    return r;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    static const char* defaults[] = {"u", "v", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9", "p10", "p11", "p12", "p13", "p14", "p15"};
    std::string out;
    bool first = true;
    for (const auto& [m, c] : t_) {
        bool has_var = false;
        std::string vars;
        for (int k = 0; k < kMaxVars; ++k) {
            if (!m[k]) continue;
            has_var = true;
            vars += k < static_cast<int>(names.size()) ? names[k] : defaults[k];
            if (m[k] > 1) vars += "^" + std::to_string(m[k]);
        }
        std::string cs = c.str();
        bool compound = !c.is_real() && sgn(c.re()) != 0;
        if (compound) cs = "(" + cs + ")";
        if (has_var && c.is_one()) cs = "";
        if (has_var && c == GaussQ(-1)) cs = "-";
        if (!first && (cs.empty() || cs[0] != '-')) out += "+";
        out += cs + vars;
        first = false;
    }
    return out;
}

}  // namespace ospk
