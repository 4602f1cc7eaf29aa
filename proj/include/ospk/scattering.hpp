#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>

#include "ospk/thermo.hpp"

namespace ospk {

struct ScatteringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Principal-branch log Gamma for complex argument; throws ScatteringError at poles.
cplx log_gamma(cplx z);

// int_0^inf sin(w l) f(w) / w dw for an even, exponentially decaying f.
double sine_transform(const std::function<double(double)>& f, double lambda, double abs_err = 1e-12);
// PV int_{-inf}^{inf} dw/w f(|w|) e^{-i w l}. The cosine part vanishes by oddness, so
// this is -2i times the sine transform.
cplx pv_fourier_integral(const std::function<double(double)>& f, double lambda, double abs_err = 1e-12);

// (1/2) int_0^inf dw/w e^{-mu w/2} / cosh(w/2), made finite by subtracting (1/2) e^{-2w}/w,
// the subtraction under which it equals ln Gamma((mu+1)/4) - ln Gamma((mu+3)/4).
double gamma_identity_integral(double mu);
double gamma_identity_closed(double mu);

// Relative error of the duplication formula 2^{2x-1} G(x+1/2) G(x) = sqrt(pi) G(2x) at z.
double duplication_residual(cplx z);

// so(n), n >= 5 (the printed form has n-2 in denominators), or sp(n) with the S_b factor.
cplx bulk_amplitude(Series s, int n, double lambda);
cplx bulk_sb(int k, double lambda);  // sp integral factor

struct AmplitudeSpec {
    Series series = Series::SoEven;
    int n = 6;
    Family family = Family::CUSTOM;     // CUSTOM: k0 only
    std::map<std::string, double> xi;   // physical parameters: xi, xi1, xin, xi2, xi3
    int m = 0;                          // D3
};

// Renormalized parameters: xi' = xi - 1/2 (so), xi - 1 (sp); D2 xi'_1 = xi_1 - 1/2,
// xi'_n = xi_n + 1/2; D4 xi'_tau = xi_tau - 1/2; D3 xi' = n/4 - m (fixed).
std::map<std::string, double> renormalized(const AmplitudeSpec& a);
void validate(const AmplitudeSpec& a);

// xi-independent overall factor, Gamma/sin product (so only).
cplx k0_closed(int n, double lambda);
cplx y0(int n, double lambda);
// xi-dependent factor. D4 takes tau = +1 or -1.
cplx k1_closed(const AmplitudeSpec& a, double lambda, int tau = +1);
cplx boundary_amplitude_closed(const AmplitudeSpec& a, double lambda, int tau = +1);

// Thermodynamic data for the amplitude's chain (first sea, no holes).
KernelContext kernel_context(const AmplitudeSpec& a);
// k0 = exp{-(1/2) int dw/w Phi0^1 e^{-i w l}}, k1 = exp{-int dw/w Phi1^1 e^{-i w l}}.
// For D4, tau picks the (+) or (-) first sea.
cplx k0_integral(const AmplitudeSpec& a, double lambda, int tau = +1);
cplx k1_integral(const AmplitudeSpec& a, double lambda, int tau = +1);

// Phi1^1(w, -xi) - Phi1^1(w, xi) for D1.
double duality_difference(const AmplitudeSpec& a, double w);
// exp{-int dw/w [Phi1^1(-xi) - Phi1^1(xi)] e^{-i w l}}, the beta/alpha ratio it implies.
cplx duality_ratio(const AmplitudeSpec& a, double lambda);
// e_x(l) = (l + i x/2) / (l - i x/2).
cplx e_fn(double x, cplx lambda);

}  // namespace ospk
