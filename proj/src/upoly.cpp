#include "ospk/upoly.hpp"

#include <stdexcept>

namespace ospk {

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero_poly()) throw std::domain_error("divmod: zero divisor");
    std::vector<GaussQ> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {QPoly(), a};
    std::vector<GaussQ> q(da - db + 1, GaussQ(0));
    GaussQ inv = b.lead().inverse();
    for (int k = da; k >= db; --k) {
        if (r[k].is_zero()) continue;
        GaussQ f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(j);
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly monic(const QPoly& p) {
    if (p.is_zero_poly()) return p;
    return p.scaled(p.lead().inverse());
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero_poly()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

QPoly content(const QPoly2& p) {
    QPoly g;
    for (const auto& c : p.coeffs()) {
        g = gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

QPoly2 primitive_part(const QPoly2& p) {
    if (p.is_zero_poly()) return p;
    QPoly c = content(p);
    std::vector<QPoly> out;
    out.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) {
        auto [q, r] = divmod(a, c);
        out.push_back(q);
    }
    return QPoly2(std::move(out));
}

QPoly2 pseudo_rem(const QPoly2& a, const QPoly2& b) {
    if (b.is_zero_poly()) throw std::domain_error("pseudo_rem: zero divisor");
    QPoly2 r = a;
    int db = b.degree();
    const QPoly& lb = b.lead();
    while (!r.is_zero_poly() && r.degree() >= db) {
        int shift = r.degree() - db;
        QPoly lr = r.lead();
        r = QPoly2(r.scaled(lb)) - QPoly2::monomial(lr, shift) * b;
    }
    return r;
}

QPoly2 gcd(const QPoly2& a, const QPoly2& b) {
    if (a.is_zero_poly()) return b.is_zero_poly() ? b : primitive_part(b).scaled(QPoly(content(b)));
    if (b.is_zero_poly()) return gcd(b, a);
    QPoly c = gcd(content(a), content(b));
    QPoly2 x = primitive_part(a), y = primitive_part(b);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero_poly()) {
        QPoly2 r = pseudo_rem(x, y);
        x = std::move(y);
        y = r.is_zero_poly() ? r : primitive_part(r);
    }
    if (x.degree() == 0) return QPoly2(c);
    QPoly2 g = primitive_part(x).scaled(c);
    // normalize leading u-coefficient of the leading v-coefficient to 1
    return g.scaled(QPoly(g.lead().lead().inverse()));
}

QPoly2 exact_div(const QPoly2& a, const QPoly2& b) {
    if (b.is_zero_poly()) throw std::domain_error("exact_div: zero divisor");
    QPoly2 r = a;
    int db = b.degree();
    std::vector<QPoly> q(a.degree() >= db ? a.degree() - db + 1 : 0);
    while (!r.is_zero_poly() && r.degree() >= db) {
        int shift = r.degree() - db;
        auto [qc, rem] = divmod(r.lead(), b.lead());
        if (!rem.is_zero_poly()) throw std::domain_error("exact_div: not divisible");
        q[shift] = qc;
        r -= QPoly2::monomial(qc, shift) * b;
    }
    if (!r.is_zero_poly()) throw std::domain_error("exact_div: not divisible");
    return QPoly2(std::move(q));
}

QPoly2 lift_u(const QPoly& p) { return QPoly2(p); }

QPoly2 lift_v(const QPoly& p) {
    std::vector<QPoly> out;
    for (const auto& c : p.coeffs()) out.emplace_back(c);
    return QPoly2(std::move(out));
}

namespace {

std::string coeff_str(const GaussQ& c, bool leading, bool has_var) {
    std::string s = c.str();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (has_var) {
        if (c.is_one()) return leading ? "" : "+";
        if (c == GaussQ(-1)) return "-";
    }
    if (compound) s = "(" + s + ")";
    if (!leading && s[0] != '-') s = "+" + s;
    return s;
}

}  // namespace

std::string to_string(const QPoly& p, const std::string& var) {
    if (p.is_zero_poly()) return "0";
    std::string out;
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
        const GaussQ& c = p.coeff(k);
        if (c.is_zero()) continue;
        out += coeff_str(c, first, k > 0);
        if (k > 0) {
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        first = false;
    }
    return out;
}

std::string to_string(const QPoly2& p, const std::string& u, const std::string& v) {
    if (p.is_zero_poly()) return "0";
    std::string out;
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
        const QPoly& c = p.coeff(k);
        if (c.is_zero_poly()) continue;
        std::string cs = to_string(c, u);
        bool single = c.coeffs().size() == 1 || (c.degree() >= 0 && [&] {
                          int nz = 0;
                          for (const auto& a : c.coeffs()) nz += !a.is_zero();
                          return nz == 1;
                      }());
        if (k > 0) {
            if (cs == "1")
                cs = "";
            else if (cs == "-1")
                cs = "-";
            else if (!single)
                cs = "(" + cs + ")";
        }
        if (!first && (cs.empty() || cs[0] != '-')) out += "+";
        out += cs;
        if (k > 0) {
            out += v;
            if (k > 1) out += "^" + std::to_string(k);
        }
        first = false;
    }
    return out;
}

}  // namespace ospk
