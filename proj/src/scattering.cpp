#include "ospk/scattering.hpp"

#include <cmath>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

namespace ospk {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

struct GslOff {
    GslOff() { gsl_set_error_handler_off(); }
};
const GslOff gsl_off;

// ln Gamma(a) - ln Gamma(b)
cplx lg_ratio(cplx a, cplx b) { return log_gamma(a) - log_gamma(b); }

double xi_at(const std::map<std::string, double>& m, const std::string& key) {
    auto it = m.find(key);
    if (it == m.end()) throw std::invalid_argument("missing boundary parameter " + key);
    return it->second;
}

int rank_of(const AmplitudeSpec& a) { return a.series == Series::SoOdd ? (a.n - 1) / 2 : a.n / 2; }
double kappa_of(const AmplitudeSpec& a) { return a.series == Series::Sp ? a.n / 2.0 + 1 : a.n / 2.0 - 1; }

// Sum of the Gamma-ratio pattern G((il + x)/d + p) / G((-il + x)/d + p).
cplx lg_odd(double lambda, double x, double d, double p) {
    return lg_ratio((kI * lambda + x) / d + p, (-kI * lambda + x) / d + p);
}

// ln of Gamma(x)/Gamma(-x) = -Gamma(1+x)/Gamma(1-x); regular at x = 0.
cplx lg_reflect(cplx x) { return cplx(0, kPi) + lg_ratio(1.0 + x, 1.0 - x); }

}  // namespace

cplx log_gamma(cplx z) {
    if (z.imag() == 0 && z.real() <= 0 && z.real() == std::round(z.real()))
        throw ScatteringError("log Gamma pole at " + std::to_string(z.real()));
    gsl_sf_result lnr, arg;
    int st = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    if (st != GSL_SUCCESS || !std::isfinite(lnr.val))
        throw ScatteringError("log Gamma pole or overflow at " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                              std::to_string(z.imag()) + "i");
    return {lnr.val, arg.val};
}

double sine_transform(const std::function<double(double)>& f, double lambda, double abs_err) {
    if (lambda == 0) return 0;
    // Cut where the integrand envelope is negligible, then integrate the oscillation
    // on [0, L] adaptively.
    double L = 4;
    while (L < 4000 && std::abs(f(L)) / L > abs_err * 1e-3) L *= 1.5;
    struct P {
        const std::function<double(double)>* f;
        double l;
    } p{&f, lambda};
    gsl_function F;
    F.function = [](double w, void* v) {
        auto* q = static_cast<P*>(v);
        if (w == 0) return q->l * (*q->f)(0.0);
        return std::sin(w * q->l) * (*q->f)(w) / w;
    };
    F.params = &p;
    const size_t limit = 20000;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(limit);
    double res = 0, err = 0;
    int st = gsl_integration_qag(&F, 0, L, abs_err, 0, limit, GSL_INTEG_GAUSS61, ws, &res, &err);
    gsl_integration_workspace_free(ws);
    if (st != GSL_SUCCESS && err > 1e3 * abs_err) throw ScatteringError(std::string("quadrature failed: ") + gsl_strerror(st));
    return res;
}

cplx pv_fourier_integral(const std::function<double(double)>& f, double lambda, double abs_err) {
    return -2.0 * kI * sine_transform(f, lambda, abs_err);
}

double gamma_identity_integral(double mu) {
    gsl_function F;
    F.function = [](double w, void* v) {
        double m = *static_cast<double*>(v);
        if (w < 1e-300) w = 1e-300;
        double g = 0.5 * std::exp(-m * w / 2) / std::cosh(w / 2);
        return (g - 0.5 * std::exp(-2 * w)) / w;
    };
    F.params = &mu;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    double res = 0, err = 0;
    int st = gsl_integration_qagiu(&F, 0, 1e-13, 1e-13, 2000, ws, &res, &err);
    gsl_integration_workspace_free(ws);
    if (st != GSL_SUCCESS && err > 1e-9) throw ScatteringError(std::string("quadrature failed: ") + gsl_strerror(st));
    return res;
}

double gamma_identity_closed(double mu) { return std::lgamma((mu + 1) / 4) - std::lgamma((mu + 3) / 4); }

double duplication_residual(cplx z) {
    cplx lhs = (2.0 * z - 1.0) * std::log(2.0) + log_gamma(z + 0.5) + log_gamma(z);
    cplx rhs = 0.5 * std::log(kPi) + log_gamma(2.0 * z);
    return std::abs(std::exp(lhs - rhs) - 1.0);
}

cplx bulk_sb(int k, double lambda) {
    auto g = [k](double w) {
        w = std::abs(w);
        // cosh(k w/2) / (2 cosh(w/2) cosh((k+1) w/2)), overflow-safe
        double r = std::exp(-w / 2) * (1 + std::exp(-k * w)) / ((1 + std::exp(-w)) * (1 + std::exp(-(k + 1) * w)));
        return r;
    };
    return std::exp(-pv_fourier_integral(g, lambda));
}

cplx bulk_amplitude(Series s, int n, double lambda) {
    double d = s == Series::Sp ? n + 2.0 : n - 2.0;
    if (s != Series::Sp && n < 5) throw ScatteringError("the bulk amplitude formula needs so(n) with n >= 5");
    if (s == Series::Sp && (n < 2 || n % 2)) throw ScatteringError("sp(n) needs even n >= 2");
    cplx il = kI * lambda;
    cplx t = std::tan(kPi * (il - 1.0) / d) / std::tan(kPi * (il + 1.0) / d);
    cplx lg = lg_reflect(il / d) + lg_ratio(-il / d + 0.5, il / d + 0.5) + lg_ratio((-il + 1.0) / d, (il + 1.0) / d) +
              lg_ratio((il + 1.0) / d + 0.5, (-il + 1.0) / d + 0.5);
    cplx out = t * std::exp(lg);
    if (s == Series::Sp) out *= bulk_sb(n / 2, lambda);
    return out;
}

std::map<std::string, double> renormalized(const AmplitudeSpec& a) {
    validate(a);
    double shift = a.series == Series::Sp ? 1.0 : 0.5;
    std::map<std::string, double> r;
    switch (a.family) {
        case Family::D1: r["xi'"] = xi_at(a.xi, "xi") - shift; break;
        case Family::D2: {
            double x1 = xi_at(a.xi, "xi1");
            double xn = a.xi.count("xin") ? a.xi.at("xin") : kappa_of(a) - 1 - x1;
            r["xi1'"] = x1 - 0.5;
            r["xin'"] = xn + 0.5;
            break;
        }
        case Family::D3: r["xi'"] = a.n / 4.0 - a.m; break;
        case Family::D4:
            r["xi2'"] = xi_at(a.xi, "xi2") - 0.5;
            r["xi3'"] = xi_at(a.xi, "xi3") - 0.5;
            break;
        default: break;
    }
    return r;
}

void validate(const AmplitudeSpec& a) {
    bool odd = a.n % 2;
    if (a.series == Series::SoOdd && !odd) throw std::invalid_argument("so-odd needs odd n");
    if (a.series != Series::SoOdd && odd) throw std::invalid_argument(to_string(a.series) + " needs even n");
    if (a.n < 3) throw std::invalid_argument("n too small");
    int k = rank_of(a);
    switch (a.family) {
        case Family::CUSTOM: break;
        case Family::D1:
            if (a.series == Series::SoOdd) throw std::invalid_argument("D1 does not exist for so(2k+1)");
            xi_at(a.xi, "xi");
            break;
        case Family::D2: {
            if (a.series == Series::Sp) throw std::invalid_argument("D2 exists for so(n) only");
            double x1 = xi_at(a.xi, "xi1");
            if (a.xi.count("xin") && std::abs(x1 + a.xi.at("xin") - (kappa_of(a) - 1)) > 1e-12)
                throw std::invalid_argument("D2 needs xi1 + xin = kappa - 1");
            break;
        }
        case Family::D3:
            if (a.m < 1 || a.m > k - 1) throw std::invalid_argument("D3 needs 1 <= m <= k-1");
            break;
        case Family::D4:
            if (!(a.series == Series::SoEven && a.n == 4)) throw std::invalid_argument("D4 exists only for so(4)");
            xi_at(a.xi, "xi2");
            xi_at(a.xi, "xi3");
            break;
        default: throw std::invalid_argument("no amplitude for family " + to_string(a.family));
    }
}

cplx y0(int n, double lambda) {
    double d = n - 2.0;
    cplx il = kI * lambda;
    auto s = [](cplx x) { return std::sin(kPi * x); };
    return s((il + 0.5) / d - 0.25) / s((il - 0.5) / d + 0.25) * s((il - 0.5) / d + 0.5) / s((il + 0.5) / d - 0.5) *
           s(il / d + 0.25) / s(il / d - 0.25);
}

cplx k0_closed(int n, double lambda) {
    if (n < 4) throw ScatteringError("k0 closed form needs so(n), n >= 4");
    double d = n - 2.0;
    cplx il = kI * lambda;
    cplx lg = lg_reflect(il / d) + lg_ratio(-il / d + 0.75, il / d + 0.75) +
              lg_ratio((il + 0.5) / d + 0.75, (-il + 0.5) / d + 0.75) + lg_ratio((-il + 0.5) / d + 0.5, (il + 0.5) / d + 0.5);
    return y0(n, lambda) * std::exp(lg);
}

cplx k1_closed(const AmplitudeSpec& a, double lambda, int tau) {
    auto r = renormalized(a);
    double d = a.series == Series::Sp ? a.n + 2.0 : a.n - 2.0;
    cplx il = kI * lambda;
    // G((il+x)/d + 1/2) / G((-il+x)/d + 1/2) * G((-il+x)/d + 1) / G((il+x)/d + 1)
    auto d1 = [&](double x) { return lg_odd(lambda, x, d, 0.5) - lg_odd(lambda, x, d, 1.0); };
    switch (a.family) {
        case Family::CUSTOM: return 1.0;
        case Family::D1: return std::exp(d1(r.at("xi'")));
        case Family::D2: {
            double x1 = r.at("xi1'"), xn = r.at("xin'");
            cplx t = std::tan(kPi * (il - xn) / d) / std::tan(kPi * (il + xn) / d);
            return t * std::exp(d1(x1) + lg_odd(lambda, xn, d, 0.5) - lg_odd(lambda, xn, d, 0.0));
        }
        case Family::D3: {
            double x = r.at("xi'");
            if (a.series == Series::Sp) {
                cplx t = std::tan(kPi * ((il - 0.5) / d - 0.25)) / std::tan(kPi * ((il + 0.5) / d + 0.25));
                return t * std::exp(d1(x) - lg_odd(lambda, 0.5, d, 0.25) + lg_odd(lambda, 0.5, d, 0.75));
            }
            return std::exp(d1(x) - lg_odd(lambda, 0.5, d, 0.75) + lg_odd(lambda, 0.5, d, 0.25));
        }
        case Family::D4: {
            double x = tau > 0 ? r.at("xi3'") : r.at("xi2'");
            return std::exp(lg_odd(lambda, x, 2, 0.25) - lg_odd(lambda, x, 2, 0.75));
        }
        default: throw ScatteringError("no closed k1 for family " + to_string(a.family));
    }
}

cplx boundary_amplitude_closed(const AmplitudeSpec& a, double lambda, int tau) {
    if (a.series == Series::Sp) throw ScatteringError("sp(n) has no closed k0; use k0_integral");
    return k0_closed(a.n, lambda) * k1_closed(a, lambda, tau);
}

KernelContext kernel_context(const AmplitudeSpec& a) {
    validate(a);
    KernelContext c;
    c.series = a.series;
    c.k = rank_of(a);
    c.family = a.family;
    double shift = a.series == Series::Sp ? 1.0 : 0.5;
    switch (a.family) {
        case Family::D1: c.xi["xi"] = xi_at(a.xi, "xi"); break;
        case Family::D2: c.xi["xi1"] = xi_at(a.xi, "xi1"); break;
        case Family::D3:
            c.m = a.m;
            c.xi["xi"] = a.n / 4.0 - a.m + shift;
            break;
        case Family::D4:
            c.xi["xi2"] = xi_at(a.xi, "xi2");
            c.xi["xi3"] = xi_at(a.xi, "xi3");
            break;
        default: break;
    }
    return c;
}

cplx k0_integral(const AmplitudeSpec& a, double lambda, int tau) {
    KernelContext c = kernel_context(a);
    int sea = (a.series == Series::SoEven && c.k == 2 && tau < 0) ? 1 : 0;
    auto f = [&](double w) { return density_correction_hat(c, w).phi0(sea); };
    return std::exp(-0.5 * pv_fourier_integral(f, lambda));
}

cplx k1_integral(const AmplitudeSpec& a, double lambda, int tau) {
    KernelContext c = kernel_context(a);
    int sea = (a.series == Series::SoEven && c.k == 2 && tau < 0) ? 1 : 0;
    auto f = [&](double w) { return density_correction_hat(c, w).phi1(sea); };
    return std::exp(-pv_fourier_integral(f, lambda));
}

double duality_difference(const AmplitudeSpec& a, double w) {
    if (a.family != Family::D1) throw std::invalid_argument("duality difference is defined here for D1");
    KernelContext c = kernel_context(a);
    KernelContext dual = c;
    dual.xi["xi"] = -c.xi["xi"];
    return density_correction_hat(dual, w).phi1(0) - density_correction_hat(c, w).phi1(0);
}

cplx duality_ratio(const AmplitudeSpec& a, double lambda) {
    auto f = [&](double w) { return duality_difference(a, w); };
    return std::exp(-pv_fourier_integral(f, lambda));
}

cplx e_fn(double x, cplx lambda) { return (lambda + kI * (x / 2)) / (lambda - kI * (x / 2)); }

}  // namespace ospk
