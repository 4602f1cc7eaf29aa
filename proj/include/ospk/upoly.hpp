#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ospk/gaussq.hpp"

namespace ospk {

// Dense univariate polynomial, c_[k] is the coefficient of x^k.
// C needs +, -, *, a zero value C(0), a unit C(1) and is_zero(const C&).
template <class C>
class UPoly {
public:
    UPoly() = default;
    UPoly(const C& c) {  // NOLINT: constants promote
        if (!is_zero(c)) c_.push_back(c);
    }
    explicit UPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() { return UPoly(std::vector<C>{C(0), C(1)}); }
    static UPoly monomial(const C& a, int k) {
        std::vector<C> v(k + 1, C(0));
        v[k] = a;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero_poly() const { return c_.empty(); }
    const C& lead() const { return c_.back(); }
    C coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : C(0); }
    const std::vector<C>& coeffs() const { return c_; }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return UPoly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    UPoly scaled(const C& s) const {
        UPoly r = *this;
        for (auto& a : r.c_) a = a * s;
        r.trim();
        return r;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    template <class T>
    T eval(const T& x) const {
        T r(0);
        for (std::size_t k = c_.size(); k-- > 0;) r = r * x + T(c_[k]);
        return r;
    }

    // p(q(x))
    UPoly compose(const UPoly& q) const {
        UPoly r;
        for (std::size_t k = c_.size(); k-- > 0;) r = r * q + UPoly(c_[k]);
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<C> r(c_.size() - 1, C(0));
        for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * C(static_cast<long>(k));
        return UPoly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<C> c_;
};

template <class C>
bool is_zero(const UPoly<C>& p) {
    return p.is_zero_poly();
}

using QPoly = UPoly<GaussQ>;   // polynomials in one variable over Q(i)
using QPoly2 = UPoly<QPoly>;   // outer variable v, inner variable u

// Field division: a = q*b + r with deg r < deg b.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& p);
QPoly gcd(QPoly a, QPoly b);  // monic; gcd(0,0) = 0

// Bivariate helpers over Q(i)[u][v].
QPoly content(const QPoly2& p);        // monic gcd of the u-coefficients
QPoly2 primitive_part(const QPoly2& p);
QPoly2 pseudo_rem(const QPoly2& a, const QPoly2& b);
QPoly2 gcd(const QPoly2& a, const QPoly2& b);
QPoly2 exact_div(const QPoly2& a, const QPoly2& b);  // throws if not exact
QPoly2 lift_u(const QPoly& p);                       // p(u) as a v-constant
QPoly2 lift_v(const QPoly& p);                       // p(v)

// Pretty printing with a variable name; coefficients parenthesized when needed.
std::string to_string(const QPoly& p, const std::string& var = "u");
std::string to_string(const QPoly2& p, const std::string& u = "u", const std::string& v = "v");

}  // namespace ospk
