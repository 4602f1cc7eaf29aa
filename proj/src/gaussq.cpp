#include "ospk/gaussq.hpp"

#include <cmath>
#include <stdexcept>

namespace ospk {

GaussQ GaussQ::inverse() const {
    if (is_zero()) throw std::domain_error("GaussQ: division by zero");
    mpq_class n = norm();
    return GaussQ(re_ / n, -im_ / n);
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = i;
    return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
    if (o.is_zero()) throw std::domain_error("GaussQ: division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string GaussQ::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string ims;
    if (im_ == 1)
        ims = "i";
    else if (im_ == -1)
        ims = "-i";
    else
        ims = im_.get_str() + "i";
    if (sgn(re_) == 0) return ims;
    std::string s = re_.get_str();
    if (sgn(im_) > 0) s += "+";
    return s + ims;
}

namespace {

mpq_class parse_rational(const std::string& t) {
    if (t.empty() || t == "+") return 1;
    if (t == "-") return -1;
    std::string s = t[0] == '+' ? t.substr(1) : t;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal, exact
        bool neg = !s.empty() && s[0] == '-';
        std::string body = neg ? s.substr(1) : s;
        dot = body.find('.');
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        mpz_class num(digits.empty() ? "0" : digits);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
        mpq_class q(num, den);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    }
    mpq_class q(s);
    q.canonicalize();
    return q;
}

}  // namespace

GaussQ GaussQ::parse(const std::string& in) {
    std::string s;
    for (char c : in)
        if (c != ' ' && c != '(' && c != ')') s += c;
    if (s.empty()) throw std::invalid_argument("GaussQ::parse: empty");
    if (s.back() != 'i') return GaussQ(parse_rational(s));
    // split at the last +/- that is not the leading sign and not inside an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s.substr(0, s.size() - 1)
                                                     : s.substr(split, s.size() - split - 1);
    if (!im_part.empty() && im_part.back() == '*') im_part.pop_back();
    mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
    return GaussQ(re, parse_rational(im_part));
}

mpq_class rationalize(double x, double tol, long max_den) {
    if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite");
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::fabs(x - static_cast<double>(p1) / q1) < tol) break;
        double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    mpq_class q{mpz_class(p1), mpz_class(q1)};
    q.canonicalize();
    return q;
}

}  // namespace ospk
