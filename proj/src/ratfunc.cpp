#include "ospk/ratfunc.hpp"

#include <cctype>
#include <cmath>

namespace ospk {

// ---- univariate ----------------------------------------------------------

RatFunc::RatFunc(QPoly num, QPoly den) {
    if (den.is_zero_poly()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero_poly()) {
        num_ = QPoly();
        den_ = QPoly(GaussQ(1));
        return;
    }
    QPoly g = gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    GaussQ s = den.lead().inverse();
    num_ = num.scaled(s);
    den_ = den.scaled(s);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, QPoly(GaussQ(1)), true);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc r(1), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

RatFunc RatFunc::compose(const RatFunc& x) const {
    RatFunc n, d;
    for (int k = num_.degree(); k >= 0; --k) n = n * x + RatFunc(num_.coeff(k));
    for (int k = den_.degree(); k >= 0; --k) d = d * x + RatFunc(den_.coeff(k));
    return n / d;
}

std::complex<double> RatFunc::eval(std::complex<double> x) const {
    std::complex<double> d = den_.eval(x);
    double scale = 0;
    double ax = std::abs(x);
    for (int k = 0; k <= den_.degree(); ++k) scale += std::abs(den_.coeff(k).to_complex()) * std::pow(ax, k);
    if (std::abs(d) <= 1e-14 * std::max(scale, 1e-300)) throw PoleError("RatFunc::eval: pole at " + std::to_string(x.real()) + "+" + std::to_string(x.imag()) + "i");
    return num_.eval(x) / d;
}

GaussQ RatFunc::eval_exact(const GaussQ& x) const {
    GaussQ d = den_.eval(x);
    if (d.is_zero()) throw PoleError("RatFunc::eval_exact: pole at " + x.str());
    return num_.eval(x) / d;
}

std::string RatFunc::str(const std::string& var) const {
    std::string n = to_string(num_, var);
    if (den_.degree() == 0) return n;
    std::string d = to_string(den_, var);
    bool n_atom = num_.degree() <= 0 && (num_.is_zero_poly() || num_.coeff(0).is_real());
    return (n_atom ? n : "(" + n + ")") + "/(" + d + ")";
}

RatFunc e_fn(const GaussQ& x) {
    GaussQ half = x * GaussQ::I() * GaussQ::frac(1, 2);
    QPoly lam = QPoly::x();
    return RatFunc(lam + QPoly(half), lam - QPoly(half));
}

// ---- bivariate -----------------------------------------------------------

RatFunc2::RatFunc2(QPoly2 num, QPoly2 den) {
    if (den.is_zero_poly()) throw std::domain_error("RatFunc2: zero denominator");
    if (num.is_zero_poly()) {
        num_ = QPoly2();
        den_ = QPoly2(QPoly(GaussQ(1)));
        return;
    }
    QPoly2 g = gcd(num, den);
    if (!(g.degree() == 0 && g.lead().degree() == 0)) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    QPoly s(den.lead().lead().inverse());
    num_ = num.scaled(s);
    den_ = den.scaled(s);
}

RatFunc2 operator+(const RatFunc2& a, const RatFunc2& b) {
    if (a.den_ == b.den_) return RatFunc2(a.num_ + b.num_, a.den_);
    return RatFunc2(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc2 operator*(const RatFunc2& a, const RatFunc2& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc2();
    return RatFunc2(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc2 operator/(const RatFunc2& a, const RatFunc2& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc2: division by zero");
    return RatFunc2(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc2 RatFunc2::pow(int k) const {
    if (k < 0) return (RatFunc2(GaussQ(1)) / *this).pow(-k);
    RatFunc2 r(GaussQ(1)), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

RatFunc RatFunc2::to_univariate() const {
    if (depends_on_v()) throw std::domain_error("RatFunc2: depends on v");
    return RatFunc(num_.coeff(0), den_.coeff(0));
}

namespace {

std::complex<double> eval2(const QPoly2& p, std::complex<double> u, std::complex<double> v) {
    std::complex<double> r = 0;
    for (int k = p.degree(); k >= 0; --k) r = r * v + p.coeff(k).eval(u);
    return r;
}

}  // namespace

std::complex<double> RatFunc2::eval(std::complex<double> u, std::complex<double> v) const {
    std::complex<double> d = eval2(den_, u, v);
    if (std::abs(d) < 1e-300) throw PoleError("RatFunc2::eval: pole");
    return eval2(num_, u, v) / d;
}

std::string RatFunc2::str(const std::string& un, const std::string& vn) const {
    std::string n = to_string(num_, un, vn);
    if (den_.degree() == 0 && den_.lead().degree() == 0) return n;
    return "(" + n + ")/(" + to_string(den_, un, vn) + ")";
}

// ---- parser --------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    RatFunc2 run() {
        RatFunc2 r = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse_ratfunc: " + what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'i' || c == 'u' || c == 'v' ||
               c == 'x' || c == 'l' || c == '.';
    }

    RatFunc2 expr() {
        int sign = 1;
        if (peek('+')) {
            ++pos_;
        } else if (peek('-')) {
            ++pos_;
            sign = -1;
        }
        RatFunc2 r = term();
        if (sign < 0) r = -r;
        while (peek('+') || peek('-')) {
            char op = s_[pos_++];
            RatFunc2 t = term();
            r = op == '+' ? r + t : r - t;
        }
        return r;
    }

    RatFunc2 term() {
        RatFunc2 r = power();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                r = r * power();
            } else if (peek('/')) {
                ++pos_;
                r = r / power();
            } else if (starts_primary()) {
                r = r * power();  // implicit product such as 2u or 3i
            } else {
                break;
            }
        }
        return r;
    }

    RatFunc2 power() {
        RatFunc2 b = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            bool neg = false;
            if (peek('-')) {
                ++pos_;
                neg = true;
            }
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            int k = std::stoi(s_.substr(start, pos_ - start));
            b = b.pow(neg ? -k : k);
        }
        return b;
    }

    RatFunc2 primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc2 r = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return r;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            return RatFunc2(GaussQ::parse(s_.substr(start, pos_ - start)));
        }
        if (s_.compare(pos_, 6, "lambda") == 0) {
            pos_ += 6;
            return RatFunc2::u();
        }
        ++pos_;
        switch (c) {
            case 'i': return RatFunc2(GaussQ::I());
            case 'u':
            case 'x':
            case 'l': return RatFunc2::u();
            case 'v': return RatFunc2::v();
            default: --pos_; fail(std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc2 parse_ratfunc2(const std::string& s) { return Parser(s).run(); }

RatFunc parse_ratfunc(const std::string& s) { return parse_ratfunc2(s).to_univariate(); }

}  // namespace ospk
