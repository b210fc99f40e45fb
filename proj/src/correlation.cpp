#include "efetlab/correlation.hpp"

#include "efetlab/quadrature.hpp"
#include "efetlab/special.hpp"

namespace efet {

SemiDisk::SemiDisk(unsigned h, const Real& R) : h(h), kappa(Real(h / 2) + Real(0.5)), R(R) {}

bool SemiDisk::contains(const Complex& lambda) const {
    return lambda.re > -kappa && abs(lambda + Complex(kappa)) < R - kappa;
}

namespace {

// shared series core: sum omega_n conj(omega_{n+h}) q^n / (n! (n+h)!)
EvalResult corr_core(const TaylorFunction& F, unsigned h, const Complex& q) {
    const PrecisionContext& ctx = F.context();
    const CoefficientSequence& seq = F.sequence();
    PrecisionContext::Scope scope(ctx);

    Real aq = abs(q);
    double C = seq.C_high() > 0 ? seq.C_high() : 1.0;
    Real C2(C * C);

    // term = q^n/(n!(n+h)!), base = |q|^n/(n!(n+h)!)
    Complex term(Real(1));
    Real base(1);
    for (unsigned k = 1; k <= h; ++k) {
        term /= Real(k);
        base /= Real(k);
    }
    Complex sum;
    Real eps = ctx.eps();
    std::size_t cap = seq.kind() == SeqKind::Explicit ? seq.explicit_size()
                                                      : static_cast<std::size_t>(-1);
    for (unsigned long long n = 0;; ++n) {
        if (n + h >= cap) return {sum, Real(0)};
        sum += F.coefficient(n) * conj(F.coefficient(n + h)) * term;
        Real nb = base * aq / (Real(n + 1) * Real(n + 1 + h));
        // tail is geometric with ratio <= 1/2 once (n+2)(n+h+2) > 2|q|
        if (Real(n + 2) * Real(n + h + 2) > 2 * aq && 2 * C2 * nb < eps * (abs(sum) + 1))
            return {sum, 2 * C2 * nb};
        term *= q / (Real(n + 1) * Real(n + 1 + h));
        base = nb;
    }
}

}  // namespace

EvalResult corr_series(const TaylorFunction& F, unsigned h, const Complex& z) {
    return corr_core(F, h, z * z);
}

EvalResult corr_sharp(const TaylorFunction& F, unsigned h, const Complex& z) {
    return corr_core(F, h, z);
}

Complex corr_contour(const TaylorFunction& F, unsigned h, const Complex& z) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Complex zz = to_scope(z);
    if (h > 0 && zz.re == 0 && zz.im == 0)
        throw DomainError("corr_contour: z must be nonzero when h > 0");

    Complex zbar = conj(zz);
    auto integrand = [&](const Complex& s) {
        // on |s|=1: F*(conj(s) z) = conj(F(s conj(z)))
        Complex a = F.eval(s * zz).value;
        Complex b = conj(F.eval(s * zbar).value);
        Complex v = a * b / s;
        if (h > 0) v *= pow_int(s / zz, static_cast<long>(h));
        return v;
    };
    return circle_quadrature(integrand, Complex(), Real(1), ctx);
}

Complex interp_g(const TaylorFunction& F, unsigned h, const Complex& lambda, const Real& R) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Complex lam = to_scope(lambda);
    Real r = to_scope(R);

    Real kappa = Real(h / 2) + Real(0.5);
    Real rh = r - kappa;
    if (!(rh > 1)) throw DomainError("interp_g: need R - kappa > 1");
    if (Real(h) > r) throw DomainError("interp_g: need h <= R");
    if (lam.re <= -Real(h + 1)) throw DomainError("interp_g: Re(lambda) <= -(h+1)");

    // log_gamma throws DomainError itself at the poles of either factor
    Complex lg1 = log_gamma(lam + Complex(1.0), ctx);
    Complex lg2 = log_gamma(lam + Complex(Real(h + 1)), ctx);

    Real pi = const_pi();
    Real x0 = 2 * boost::multiprecision::log(rh);

    // The integrand is evaluated thousands of times along the segment, so
    // freeze the Taylor coefficients of F_h^sharp once: c_n = omega_n
    // conj(omega_{n+h}) / (n!(n+h)!), truncated where the tail at |z| = rh^2
    // drops below the working epsilon.
    const CoefficientSequence& seq = F.sequence();
    Real q = rh * rh;
    double C = seq.C_high() > 0 ? seq.C_high() : 1.0;
    std::vector<Complex> coeff;
    {
        Real fact(1);  // 1/(n!(n+h)!)
        for (unsigned k = 1; k <= h; ++k) fact /= Real(k);
        Real base = fact;  // q^n/(n!(n+h)!) drives the tail test
        Real eps = ctx.eps();
        std::size_t cap = seq.kind() == SeqKind::Explicit ? seq.explicit_size()
                                                          : static_cast<std::size_t>(-1);
        Real mass(0);
        for (unsigned long long n = 0; n + h < cap; ++n) {
            coeff.push_back(F.coefficient(n) * conj(F.coefficient(n + h)) * fact);
            mass += Real(C * C) * base;
            Real nb = base * q / (Real(n + 1) * Real(n + 1 + h));
            if (Real(n + 2) * Real(n + h + 2) > 2 * q && 2 * Real(C * C) * nb < eps * (mass + 1))
                break;
            fact /= Real(n + 1) * Real(n + 1 + h);
            base = nb;
        }
    }
    auto horner = [&](const Complex& z) {
        Complex acc;
        for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * z + coeff[i];
        return acc;
    };

    // composite Gauss-Legendre in t over [-pi, pi] with panel doubling; the
    // order grows with the precision so panel counts stay small
    unsigned bits = ctx.precision_bits() + ctx.guard_bits();
    unsigned order = std::max(15u, bits / 3);
    std::vector<Real> xs, ws;
    gauss_legendre(order, bits, xs, ws);

    // The rounding-noise floor of the sum is set by the largest integrand
    // sample on the contour (which for scrambled phases can dwarf the t=0
    // value), so track it while integrating.
    Real max_mag(0);
    auto sample = [&](const Real& t) {
        Complex w(x0, t);
        Complex v = horner(exp(w)) * exp(-(lam * w));
        Real m = abs(v);
        if (m > max_mag) max_mag = m;
        return v;
    };

    Complex prev;
    Complex total;
    bool converged = false;
    for (unsigned panels = 2; panels <= 1024; panels *= 2) {
        total = Complex();
        for (unsigned p = 0; p < panels; ++p) {
            Real ta = -pi + 2 * pi * Real(p) / Real(panels);
            Real tb = -pi + 2 * pi * Real(p + 1) / Real(panels);
            Real mid = (ta + tb) / 2, half = (tb - ta) / 2;
            for (unsigned i = 0; i < xs.size(); ++i)
                total += sample(mid + half * xs[i]) * (ws[i] * half);
        }
        Real conv_tol = pow2(8 - static_cast<long>(bits)) * (2 * pi * max_mag + 1);
        if (panels > 2 && abs(total - prev) <= conv_tol) {
            converged = true;
            break;
        }
        prev = total;
    }
    if (!converged)
        throw ConvergenceError("interp_g: contour quadrature did not stabilize",
                               static_cast<double>(abs(total)), 0.0);
    // times i dt and the 1/(2 pi i) normalization
    Complex integral = total / (2 * pi);

    // headroom check: if the result sits below the rounding floor of the
    // largest contour sample, the remaining digits are cancellation noise
    Real floor_ = max_mag * pow2(16 - static_cast<long>(ctx.precision_bits()));
    if (abs(integral) <= floor_)
        throw PrecisionError("interp_g: integral below cancellation floor, raise precision");

    // log-space assembly
    return exp(lg1 + lg2 + log(integral));
}

Complex pi_h_product(const Complex& s, unsigned h) {
    Complex prod(Real(1));
    for (unsigned l = 1; l <= h / 2; ++l) {
        Complex c(Real(l) - Real(0.5));
        Complex denom = s - c;
        if (denom.re == 0 && denom.im == 0)
            throw DomainError("pi_h_product: pole at s = l - 1/2");
        prod *= (s + c) / denom;
    }
    return prod;
}

Real k_phi(const Real& phi, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Real p = to_scope(phi);
    if (2 * boost::multiprecision::abs(p) > const_pi() * (1 + pow2(-40)))
        throw DomainError("k_phi: |phi| must be <= pi/2");
    return boost::multiprecision::cos(p) + p * boost::multiprecision::sin(p);
}

RatioDiagnostics ratio_diagnostics(const std::function<Complex(const Real&)>& g, const Real& a,
                                   const Real& b, const PrecisionContext& ctx, const Real& step) {
    PrecisionContext::Scope scope(ctx);
    if (step <= 0) throw DomainError("ratio_diagnostics: step must be positive");
    RatioDiagnostics out{Real(0), Real(0), Real(0)};
    for (Real s = to_scope(a); s <= b; s += step) {
        Complex g0 = g(s);
        Complex gp = g(s + step);
        Complex gm = g(s - step);
        if (abs(g0) == 0 || abs(gp) == 0 || abs(gm) == 0)
            throw EvaluationError("ratio_diagnostics: g vanishes at a sample");
        Real d1 = boost::multiprecision::abs(abs(g0) - 1);
        Real d2 = abs(gp / g0 - Complex(1.0));
        Real d3 = abs(g0 * g0 / (gm * gp) - Complex(1.0));
        if (d1 > out.d1) out.d1 = d1;
        if (d2 > out.d2) out.d2 = d2;
        if (d3 > out.d3) out.d3 = d3;
    }
    return out;
}

Real quadratic_ratio_check(const Rational& beta, const Rational& gamma, const Rational& delta,
                           unsigned d, unsigned long long n_lo, unsigned long long n_hi,
                           const PrecisionContext& ctx) {
    if (d < 1) throw DomainError("quadratic_ratio_check: d must be >= 1");
    PrecisionContext::Scope scope(ctx);
    auto seq = CoefficientSequence::quadratic_phase(beta, gamma, delta);
    // e^{-2 pi i (2 beta d)} with the phase reduced exactly mod 1
    Rational two_beta_d(beta.num * 2 * static_cast<long long>(d), beta.den);
    Complex expect = conj(polar(Real(1), 2 * const_pi() * two_beta_d.frac_times(1, false)));
    Real worst(0);
    for (unsigned long long n = n_lo; n <= n_hi; ++n) {
        Complex num = seq.value(n + 1, ctx) * conj(seq.value(n + d + 1, ctx));
        Complex den = seq.value(n, ctx) * conj(seq.value(n + d, ctx));
        Real dev = abs(num / den - expect);
        if (dev > worst) worst = dev;
    }
    return worst;
}

}  // namespace efet
