#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "ospk/upoly.hpp"

namespace ospk {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Rational function of one variable with Q(i) coefficients, kept in canonical form:
// gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : num_(), den_(GaussQ(1)) {}
    RatFunc(const GaussQ& c) : num_(c), den_(GaussQ(1)) {}  // NOLINT
    RatFunc(long c) : RatFunc(GaussQ(c)) {}                  // NOLINT
    RatFunc(const QPoly& p) : num_(p), den_(GaussQ(1)) {}    // NOLINT
    RatFunc(QPoly num, QPoly den);

    static RatFunc var() { return RatFunc(QPoly::x()); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero_poly(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc inverse() const;
    RatFunc pow(int k) const;
    RatFunc compose(const RatFunc& x) const;  // f(x(.))

    std::complex<double> eval(std::complex<double> x) const;  // throws PoleError
    GaussQ eval_exact(const GaussQ& x) const;                  // throws PoleError

    std::string str(const std::string& var = "u") const;

private:
    RatFunc(QPoly num, QPoly den, bool /*already canonical*/) : num_(std::move(num)), den_(std::move(den)) {}
    QPoly num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

// Rational function of two variables (u inner, v outer), canonical as above with the
// leading u-coefficient of the leading v-coefficient of the denominator equal to 1.
class RatFunc2 {
public:
    RatFunc2() : num_(), den_(QPoly(GaussQ(1))) {}
    RatFunc2(const GaussQ& c) : num_(QPoly(c)), den_(QPoly(GaussQ(1))) {}  // NOLINT
    RatFunc2(QPoly2 num, QPoly2 den);
    static RatFunc2 u() { return RatFunc2(lift_u(QPoly::x()), QPoly2(QPoly(GaussQ(1)))); }
    static RatFunc2 v() { return RatFunc2(lift_v(QPoly::x()), QPoly2(QPoly(GaussQ(1)))); }
    static RatFunc2 from_u(const RatFunc& f) { return RatFunc2(lift_u(f.num()), lift_u(f.den())); }
    static RatFunc2 from_v(const RatFunc& f) { return RatFunc2(lift_v(f.num()), lift_v(f.den())); }

    const QPoly2& num() const { return num_; }
    const QPoly2& den() const { return den_; }
    bool is_zero() const { return num_.is_zero_poly(); }
    bool depends_on_v() const { return num_.degree() > 0 || den_.degree() > 0; }
    RatFunc to_univariate() const;  // throws if v appears

    RatFunc2 operator-() const { return RatFunc2(-num_, den_, true); }
    friend RatFunc2 operator+(const RatFunc2& a, const RatFunc2& b);
    friend RatFunc2 operator-(const RatFunc2& a, const RatFunc2& b) { return a + (-b); }
    friend RatFunc2 operator*(const RatFunc2& a, const RatFunc2& b);
    friend RatFunc2 operator/(const RatFunc2& a, const RatFunc2& b);
    friend bool operator==(const RatFunc2& a, const RatFunc2& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    RatFunc2 pow(int k) const;

    std::complex<double> eval(std::complex<double> u, std::complex<double> v) const;

    std::string str(const std::string& uname = "u", const std::string& vname = "v") const;

private:
    RatFunc2(QPoly2 num, QPoly2 den, bool) : num_(std::move(num)), den_(std::move(den)) {}
    QPoly2 num_, den_;
};

inline bool is_zero(const RatFunc2& f) { return f.is_zero(); }

// Parses expressions such as "(1+2u)/(1-2u)", "3/2", "(1+i)*u^2 - v", "oo" is not accepted here.
// Variables: `u` and `v`; `x`, `l` and `lambda` are accepted as aliases of `u`.
RatFunc2 parse_ratfunc2(const std::string& s);
RatFunc parse_ratfunc(const std::string& s);

// e_x(lambda) = (lambda + i x/2) / (lambda - i x/2)
RatFunc e_fn(const GaussQ& x);

}  // namespace ospk
