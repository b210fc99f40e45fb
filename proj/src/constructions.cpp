#include "efetlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "efetlab/errors.hpp"
#include "efetlab/quadrature.hpp"

namespace efet {

Complex phi_borel(const Complex& s, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex ss = to_scope(s);
    if (ss.re == 0 && ss.im == 0) throw DomainError("phi_borel: s = 0");

    // C(s) = 2 int_0^inf t cos(t) e^{-s t^2} dt, rotated onto t = e^{i psi} tau
    // with psi = -arg(s)/2 so that s e^{2 i psi} = |s| and the Gaussian decays
    // at the fastest available rate.
    Real mod = abs(ss);
    Real psi = -arg(ss) / 2;
    Complex rot = polar(Real(1), psi);
    Complex rot2 = rot * rot;

    // truncation: |t cos t e^{-|s| tau^2}| <= tau e^{tau - |s| tau^2}; solve
    // |s| T^2 - T = M for the target M = (p + 64) ln 2
    Real M = Real(ctx.precision_bits() + 64) * boost::multiprecision::log(Real(2));
    Real T = (1 + boost::multiprecision::sqrt(1 + 4 * mod * M)) / (2 * mod);

    auto integrand = [&](const Complex& p) {
        // p travels the real segment [0, T]
        Complex t = rot * p;
        return 2 * rot2 * p * cos(t) * exp(-(Complex(mod) * p * p));
    };
    Complex C = segment_quadrature(integrand, Complex(), Complex(T), ctx);
    return Complex(2.0) / ss + C;
}

Complex g_factor_contour(const Complex& z, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex zz = to_scope(z);
    Real az = abs(zz);
    if (az == 0) return Complex(3.0);  // G(0) = F(0) = cos 0 + 2

    Real rho = 1 / boost::multiprecision::sqrt(az);
    if (rho > 1) rho = 1;
    auto integrand = [&](const Complex& s) {
        return exp(zz * (exp(s) - Complex(1.0))) * phi_borel(s, ctx);
    };
    return circle_quadrature(integrand, Complex(), rho, ctx);
}

SubharmonicExample::SubharmonicExample(const Real& R_, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    R = to_scope(R_);
    if (!(R > 25)) throw DomainError("SubharmonicExample: R must exceed 25 so alpha > 0");
    // 5 e^{2 alpha} = sqrt(R)
    alpha = boost::multiprecision::log(boost::multiprecision::sqrt(R) / 5) / 2;
}

Complex f_gauss(const Complex& w, const Real& alpha, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex ww = to_scope(w);
    Real a = to_scope(alpha);
    // sum_m (-alpha)^m w^{2m+1} / (m! (2m+1))
    Complex w2 = ww * ww;
    Complex pw = ww;       // (-alpha)^m w^{2m+1} / m!
    Real base = abs(ww);   // modulus of pw
    Real aw2 = a * norm(ww);
    Complex sum;
    Real eps = ctx.eps();
    for (unsigned m = 0;; ++m) {
        sum += pw / Real(2 * m + 1);
        pw *= -(a * w2) / Real(m + 1);
        base *= aw2 / Real(m + 1);
        // once the ratio drops under 1/2 the tail is geometric
        if (2 * (m + 1) > aw2 && 2 * base < eps * (abs(sum) + 1)) break;
        if (m > 100000) throw ConvergenceError("f_gauss: series did not settle", 0.0, 0.0);
    }
    return sum;
}

Real u_eval(const Complex& z, const SubharmonicExample& ex, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex zz = to_scope(z);
    if (abs(zz) > ex.R * (1 + pow2(-40))) throw DomainError("u_eval: |z| > R");
    if (zz.im < 0) zz.im = -zz.im;  // u(conj z) = u(z)
    Complex w = sqrt(zz / ex.R);
    return zz.re + boost::multiprecision::sqrt(ex.R) * f_gauss(w, ex.alpha, ctx).im;
}

Real riesz_mass(const Real& a, const Real& b, const SubharmonicExample& ex,
                const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Real aa = to_scope(a), bb = to_scope(b);
    if (aa < 0 || bb < aa || bb > ex.R * (1 + pow2(-40)))
        throw DomainError("riesz_mass: need 0 <= a <= b <= R");
    Real fa = f_gauss(Complex(boost::multiprecision::sqrt(aa / ex.R)), ex.alpha, ctx).re;
    Real fb = f_gauss(Complex(boost::multiprecision::sqrt(bb / ex.R)), ex.alpha, ctx).re;
    return 2 * boost::multiprecision::sqrt(ex.R) * (fb - fa);
}

ClaimsReport claims_check(const Real& alpha, unsigned grid_density, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    if (grid_density < 10) throw DomainError("claims_check: grid_density must be >= 10");
    Real a = to_scope(alpha);
    Real e2a = boost::multiprecision::exp(2 * a);
    Real em2a = boost::multiprecision::exp(-2 * a);
    ClaimsReport rep{Real(1e30), Real(1e30)};
    long g = static_cast<long>(grid_density);
    for (long i = -g; i <= g; ++i) {
        Real x = Real(i) / Real(g);
        for (long j = 0; j <= g; ++j) {
            Real y = Real(j) / Real(g);
            if (x * x + y * y > 1 + pow2(-40)) break;
            Complex zc(x, y);
            // Claim A: |Im e^{-alpha z^2}| < 5 e^{2a} y^2 + 2a|x| e^{-a x^2/2} y
            Real lhs_a = boost::multiprecision::abs(exp(-(Complex(a) * zc * zc)).im);
            Real rhs_a = 5 * e2a * y * y +
                         2 * a * boost::multiprecision::abs(x) *
                             boost::multiprecision::exp(-a * x * x / 2) * y;
            if (rhs_a - lhs_a < rep.margin_a) rep.margin_a = rhs_a - lhs_a;
            // Claim B: Im F(x + iy) < 10 e^{2a} y^2 + e^{-2a}
            Real lhs_b = f_gauss(zc, a, ctx).im;
            Real rhs_b = 10 * e2a * y * y + em2a;
            if (rhs_b - lhs_b < rep.margin_b) rep.margin_b = rhs_b - lhs_b;
        }
    }
    return rep;
}

DensityWitness combi_find(const std::function<bool(long long)>& membership, double d,
                          long long R) {
    if (!(d > 0) || d > 1) throw DomainError("combi_find: d must lie in (0, 1]");
    double c1 = std::min(d / 8, 0.25);
    double c2 = d * d * c1 / 10;
    // smallest R for which the expectation bound promises a nonempty witness
    // (c2 R >= 1)
    long long R_min = static_cast<long long>(std::ceil(10 / (d * d * c1)));
    if (R < R_min)
        throw WitnessNotFoundError("combi_find: R below the admissible minimum");

    long long L = static_cast<long long>(c1 * static_cast<double>(R));
    DensityWitness w;
    w.c1 = c1;
    w.c2 = c2;
    for (long long n = 1; n <= L; ++n)
        if (membership(n)) w.J.push_back(n);

    // segments [iL, (i+1)L) of [0, R], skipping the two first and two last
    long long nseg = R / L;
    long long need = static_cast<long long>(std::ceil(d / 2 * static_cast<double>(L)));
    bool found = false;
    for (long long i = 2; i + 2 < nseg; ++i) {
        // strict interior: 2 c1 R < x (L = floor(c1 R) can undershoot)
        long long x = std::max(i * L + 1,
                               static_cast<long long>(std::floor(2 * c1 * static_cast<double>(R))) + 1);
        std::vector<long long> K;
        for (long long n = x; n <= x + L; ++n)
            if (membership(n)) K.push_back(n);
        if (static_cast<long long>(K.size()) >= need) {
            w.x = x;
            w.K = std::move(K);
            found = true;
            break;
        }
    }
    if (!found)
        throw WitnessNotFoundError("combi_find: no segment reaches (d/2) c1 R members");

    std::unordered_set<long long> kset(w.K.begin(), w.K.end());
    long long best = -1, best_h = 0;
    for (long long h = w.x - L + 1; h <= w.x + L - 1; ++h) {
        long long cnt = 0;
        for (long long j : w.J)
            if (kset.count(j + h)) ++cnt;
        if (cnt > best) {
            best = cnt;
            best_h = h;
        }
    }
    // the window construction keeps h inside [c1 R, (1 - c1) R]; clamp anyway
    long long lo = L, hi = R - L;
    w.h = std::clamp(best_h, lo, hi);
    w.overlap = best;
    double threshold = c2 * static_cast<double>(R);
    if (static_cast<double>(best) < threshold)
        throw WitnessNotFoundError("combi_find: exhaustive h search missed the c2 R target");
    return w;
}

}  // namespace efet
