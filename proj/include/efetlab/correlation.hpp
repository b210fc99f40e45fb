#pragma once

#include <functional>

#include "efetlab/taylor.hpp"

namespace efet {

// Shifted semi-disk Omega_h = { Re(lambda) > -kappa, |lambda + kappa| < R - kappa }
// with kappa = floor(h/2) + 1/2.
struct SemiDisk {
    unsigned h = 0;
    Real kappa;
    Real R;

    SemiDisk(unsigned h, const Real& R);
    bool contains(const Complex& lambda) const;
};

// F_h(z) = sum_n omega_n conj(omega_{n+h}) z^{2n} / (n! (n+h)!), direct
// series with certified truncation.
EvalResult corr_series(const TaylorFunction& F, unsigned h, const Complex& z);

// F_h^sharp(z) = F_h(sqrt z) = sum_n omega_n conj(omega_{n+h}) z^n / (n! (n+h)!);
// entire, so the series needs no branch choice.
EvalResult corr_sharp(const TaylorFunction& F, unsigned h, const Complex& z);

// Contour representation: (1/2 pi i) of the integral over |s| = 1 of
// F(sz) F*(conj(s) z) (s/z)^h ds/s, with F*(w) = conj(F(conj(w))).
Complex corr_contour(const TaylorFunction& F, unsigned h, const Complex& z);

// Analytic interpolation of n -> omega_n conj(omega_{n+h}):
//   g_h(lambda) = Gamma(lambda+1) Gamma(lambda+h+1) *
//                 (1/2 pi i) * integral over { w = 2 log(R-kappa) + it, |t| <= pi }
//                 of F_h^sharp(e^w) e^{-lambda w} dw,
// assembled in log space so the Gamma growth and the integral's decay cancel
// before exponentiation.
Complex interp_g(const TaylorFunction& F, unsigned h, const Complex& lambda, const Real& R);

// Pi_h(s) = prod_{1 <= l <= floor(h/2)} (s + (l - 1/2)) / (s - (l - 1/2)).
Complex pi_h_product(const Complex& s, unsigned h);

// k(phi) = cos phi + phi sin phi on [-pi/2, pi/2].
Real k_phi(const Real& phi, const PrecisionContext& ctx);

struct RatioDiagnostics {
    Real d1;  // max | |g(s)| - 1 |
    Real d2;  // max | g(s+step)/g(s) - 1 |
    Real d3;  // max | g(s)^2 / (g(s-step) g(s+step)) - 1 |
};

// Maxima over integer-spaced samples of [a, b]; g must be evaluable one
// step beyond both ends.
RatioDiagnostics ratio_diagnostics(const std::function<Complex(const Real&)>& g, const Real& a,
                                   const Real& b, const PrecisionContext& ctx,
                                   const Real& step = Real(1));

// Max over n in [n_lo, n_hi] of the deviation of the shift ratio
// omega_{n+1} conj(omega_{n+d+1}) / (omega_n conj(omega_{n+d})) from
// e^{-2 pi i (2 beta d)} for the quadratic-phase family.
Real quadratic_ratio_check(const Rational& beta, const Rational& gamma, const Rational& delta,
                           unsigned d, unsigned long long n_lo, unsigned long long n_hi,
                           const PrecisionContext& ctx);

}  // namespace efet
