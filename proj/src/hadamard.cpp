#include "efetlab/hadamard.hpp"

#include <algorithm>

namespace efet {

namespace {

// Bernoulli numbers B_0..B_n by the defining recurrence, at the current
// default precision (local copy; the Stirling cache lives elsewhere).
std::vector<Real> bernoulli_upto(int n) {
    std::vector<Real> b(n + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Real sum = 0;
        Real binom = 1;
        for (int j = 0; j < m; ++j) {
            sum += binom * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -sum / (m + 1);
    }
    return b;
}

// sum_{k >= K} (k + 1/2)^{-j} by Euler-Maclaurin. The correction series is
// asymptotic; terms shrink until 2m ~ 2 pi (K + 1/2), so the loop stops at
// the target accuracy or at the smallest term, whichever comes first, and
// reports the stopping term as the remainder bound.
Real zeta_halfshift_tail(unsigned long long K, unsigned j, const std::vector<Real>& bern,
                         const Real& eps, Real& err) {
    Real c = Real(K) + Real(0.5);
    Real cj = boost::multiprecision::pow(c, -static_cast<int>(j));  // c^{-j}
    Real sum = c * cj / (j - 1);  // integral: c^{1-j}/(j-1)
    sum += cj / 2;
    // -B_{2m}/(2m)! f^{(2m-1)}(K) with
    // f^{(2m-1)}(K) = -[prod_{i=0}^{2m-2}(j+i)] c^{-j-2m+1}
    Real rise(j);        // running product j(j+1)...(j+2m-2)
    Real cpow = cj / c;  // c^{-j-2m+1}
    Real fact2m(2);      // (2m)!
    Real prev_mag(0);
    int max_m = static_cast<int>(bern.size() / 2) - 1;
    err = 0;
    for (int m = 1; m <= max_m; ++m) {
        Real term = bern[2 * m] * rise * cpow / fact2m;
        Real mag = boost::multiprecision::abs(term);
        if (m > 1 && mag >= prev_mag) {  // divergence onset: stop at the floor
            err = 2 * prev_mag;
            return sum;
        }
        sum += term;
        err = 2 * mag;
        if (mag < eps * (boost::multiprecision::abs(sum) + 1)) return sum;
        prev_mag = mag;
        rise *= Real(j + 2 * m - 1) * Real(j + 2 * m);
        cpow /= c * c;
        fact2m *= Real(2 * m + 1) * Real(2 * m + 2);
    }
    return sum;
}

}  // namespace

ZeroModel ZeroModel::cosine(const Real& R, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    ZeroModel m;
    m.R = to_scope(R);
    m.tail = TailKind::Cosine;
    m.sigma = 1.0;
    Real pi = const_pi();
    for (unsigned long long k = 0;; ++k) {
        Real x = (Real(k) + Real(0.5)) * pi;
        if (x > m.R) break;
        m.inside.push_back(Complex(x));
        m.inside.push_back(Complex(-x));
    }
    std::sort(m.inside.begin(), m.inside.end(), [](const Complex& a, const Complex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    return m;
}

std::vector<SumWithError> power_sums(const ZeroModel& model, const Real& R, unsigned J_max,
                                     const PrecisionContext& ctx) {
    if (J_max < 2) throw DomainError("power_sums: J_max must be >= 2");
    PrecisionContext::Scope scope(ctx);
    Real r = to_scope(R);
    std::vector<SumWithError> out;

    switch (model.tail) {
        case TailKind::None: {
            for (unsigned j = 2; j <= J_max; ++j) out.push_back({Complex(), Real(0)});
            break;
        }
        case TailKind::BoundOnly: {
            for (unsigned j = 2; j <= J_max; ++j) {
                Real env = 2 * Real(model.sigma) * Real(j) / Real(j - 1) *
                           boost::multiprecision::pow(r, 1 - static_cast<int>(j));
                out.push_back({Complex(), env});
            }
            break;
        }
        case TailKind::Cosine: {
            // zeros +-(k+1/2)pi with modulus > R; odd powers cancel exactly
            Real pi = const_pi();
            unsigned long long k0 = 0;
            while ((Real(k0) + Real(0.5)) * pi <= r) ++k0;
            // head length keeps the asymptotic floor e^{-2 pi K} below eps
            unsigned bits = ctx.precision_bits() + ctx.guard_bits();
            unsigned long long K = k0 + std::max<unsigned long long>(48, bits / 4);
            std::vector<Real> bern = bernoulli_upto(2 * (bits / 2 + 32));
            Real eps = ctx.eps();
            for (unsigned j = 2; j <= J_max; ++j) {
                if (j % 2 == 1) {
                    out.push_back({Complex(), Real(0)});
                    continue;
                }
                // 2 sum_{k>=k0} ((k+1/2) pi)^{-j}: direct head, E-M tail
                Real head(0);
                for (unsigned long long k = k0; k < K; ++k)
                    head += boost::multiprecision::pow((Real(k) + Real(0.5)) * pi,
                                                       -static_cast<int>(j));
                Real err;
                Real pj = boost::multiprecision::pow(pi, -static_cast<int>(j));
                Real tail = zeta_halfshift_tail(K, j, bern, eps, err) * pj;
                out.push_back({Complex(2 * (head + tail)), 2 * err * pj});
            }
            break;
        }
        case TailKind::SyntheticPower: {
            // pairs +-(2k)^{1/a}; moduli grow like k^{1/a} with 1/a > 2
            double a = model.power_exponent;
            Real inv_a = Real(1) / Real(a);
            Real eps = ctx.eps();
            for (unsigned j = 2; j <= J_max; ++j) {
                if (j % 2 == 1) {
                    out.push_back({Complex(), Real(0)});
                    continue;
                }
                Real sum(0);
                Real last(0);
                for (unsigned long long k = 1;; ++k) {
                    Real rho = boost::multiprecision::pow(Real(2 * k), inv_a);
                    if (rho <= r) continue;
                    Real t = 2 * boost::multiprecision::pow(rho, -static_cast<int>(j));
                    sum += t;
                    last = t;
                    if (t < eps * (sum + 1) || k > 2000000) break;
                }
                out.push_back({Complex(sum), 4 * last});
            }
            break;
        }
    }
    return out;
}

EvalResult h_R_eval(const Complex& z, const HadamardData& data, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex zz = to_scope(z);
    Real az = abs(zz);
    // one-ulp slack so |z| = R/2 reached through polar() stays admissible
    if (2 * az > data.R * (1 + pow2(-40))) throw DomainError("h_R_eval: need |z| <= R/2");

    Complex sum;
    Real err(0);
    Complex zp = zz * zz;  // z^j
    Real azp = az * az;
    for (unsigned j = 2; j < 2 + data.s.size(); ++j) {
        const SumWithError& sj = data.s[j - 2];
        sum -= sj.value * zp / Real(j);
        err += sj.error * azp / Real(j);
        zp *= zz;
        azp *= az;
    }
    // Claim-1 envelope for the truncated j > J_max block (absent only when
    // there are literally no zeros beyond R)
    if (data.model.tail != TailKind::None && az > 0) {
        unsigned J = 1 + static_cast<unsigned>(data.s.size());
        Real x = az / data.R;
        Real tail = 2 * Real(data.model.sigma) * data.R *
                    boost::multiprecision::pow(x, static_cast<int>(J + 1)) / (Real(J) * (1 - x));
        err += tail;
    }
    return {sum, err};
}

Complex pi_R_eval(const Complex& z, const ZeroModel& model, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex zz = to_scope(z);
    Complex prod(Real(1));
    for (const Complex& lam : model.inside) prod *= Complex(Real(1)) - zz / lam;
    return prod;
}

Complex a_R_estimate(const TaylorFunction& F, const ZeroModel& model, const Real& R) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Complex w0 = F.sequence().value(0, ctx);
    if (abs(w0) == 0) throw DomainError("a_R_estimate: requires F(0) != 0");
    Complex a = F.sequence().value(1, ctx) / w0;
    for (const Complex& lam : model.inside) a += Complex(Real(1)) / lam;
    (void)R;
    return a;
}

HadamardData build_hadamard_data(const TaylorFunction& F, const ZeroModel& model, const Real& R,
                                 unsigned J_max) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    HadamardData d;
    d.R = to_scope(R);
    d.model = model;
    d.a_R = a_R_estimate(F, model, R);
    d.s = power_sums(model, d.R, J_max, ctx);
    d.tail_unmodeled = model.tail == TailKind::BoundOnly;
    return d;
}

Real factorization_residual(const TaylorFunction& F, const HadamardData& data, const Real& max_r,
                            const Real& min_dist, unsigned grid_points) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Real worst(0);
    Real golden(0.6180339887498949);
    for (unsigned i = 0; i < grid_points; ++i) {
        Real u = (Real(i) + Real(0.5)) / Real(grid_points);
        Real rho = max_r * boost::multiprecision::sqrt(u);
        Real theta = 2 * const_pi() * golden * Real(i + 1);
        Complex z = polar(rho, theta);
        bool near = false;
        for (const Complex& lam : data.model.inside)
            if (abs(z - lam) < min_dist) {
                near = true;
                break;
            }
        if (near) continue;
        Complex fz = F.eval(z).value;
        Complex hz = h_R_eval(z, data, ctx).value;
        Complex pz = pi_R_eval(z, data.model, ctx);
        if (abs(pz) == 0) continue;
        Real dev = abs(fz * exp(-(data.a_R * z) - hz) / pz - Complex(Real(1)));
        if (dev > worst) worst = dev;
    }
    return worst;
}

namespace {

struct RotatedData {
    Real A;                       // |a_R|
    std::vector<Real> mag;        // |s_j|
    std::vector<Real> phase;      // arg s_j - j arg a_R
};

RotatedData rotate(const HadamardData& data) {
    RotatedData rd;
    rd.A = abs(data.a_R);
    Real phi = (rd.A > 0) ? arg(data.a_R) : Real(0);
    for (std::size_t i = 0; i < data.s.size(); ++i) {
        unsigned j = 2 + static_cast<unsigned>(i);
        Real m = abs(data.s[i].value);
        rd.mag.push_back(m);
        rd.phase.push_back(m > 0 ? arg(data.s[i].value) - Real(j) * phi : Real(0));
    }
    return rd;
}

}  // namespace

Real S_theta(const Real& r, const Real& theta, const HadamardData& data,
             const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    RotatedData rd = rotate(data);
    Real rr = to_scope(r), th = to_scope(theta);
    Real s = rd.A * rr * boost::multiprecision::cos(th);
    Real rp = rr * rr;
    for (std::size_t i = 0; i < rd.mag.size(); ++i) {
        unsigned j = 2 + static_cast<unsigned>(i);
        s -= rd.mag[i] / Real(j) * rp * boost::multiprecision::cos(Real(j) * th + rd.phase[i]);
        rp *= rr;
    }
    return s;
}

namespace {

// S'(theta)/(-r) and S''(theta)/(-r): Newton operates on
//   f(theta) = A sin(theta) - sum_j |s_j| r^{j-1} sin(j theta + theta_j) = 0,
// the stationarity condition of S.
void theta_equation(const RotatedData& rd, const Real& r, const Real& th, Real& f, Real& fp) {
    f = rd.A * boost::multiprecision::sin(th);
    fp = rd.A * boost::multiprecision::cos(th);
    Real rp = r;  // r^{j-1}
    for (std::size_t i = 0; i < rd.mag.size(); ++i) {
        unsigned j = 2 + static_cast<unsigned>(i);
        Real a = Real(j) * th + rd.phase[i];
        f -= rd.mag[i] * rp * boost::multiprecision::sin(a);
        fp -= rd.mag[i] * Real(j) * rp * boost::multiprecision::cos(a);
        rp *= r;
    }
}

}  // namespace

Real theta_star(const Real& r, const HadamardData& data, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    if (r <= 0) throw DomainError("theta_star: r must be positive");
    RotatedData rd = rotate(data);
    if (rd.A <= 0) throw DomainError("theta_star: requires a_R != 0");
    Real rr = to_scope(r);
    Real th(0);
    Real tol = ctx.tol();
    Real pi4 = const_pi() / 4;
    for (int it = 0; it < 80; ++it) {
        Real f, fp;
        theta_equation(rd, rr, th, f, fp);
        if (fp == 0)
            throw ConvergenceError("theta_star: vanishing derivative", static_cast<double>(th),
                                   0.0);
        Real step = f / fp;
        th -= step;
        if (boost::multiprecision::abs(th) > pi4)
            throw ConvergenceError("theta_star: Newton left |theta| <= pi/4",
                                   static_cast<double>(th), static_cast<double>(step));
        if (boost::multiprecision::abs(step) < tol * (1 + boost::multiprecision::abs(th))) break;
    }
    // maximality: S'' < 0 is fp > 0 in this normalization
    Real f, fp;
    theta_equation(rd, rr, th, f, fp);
    if (!(fp > 0))
        throw ConvergenceError("theta_star: second-order check failed (S'' >= 0)",
                               static_cast<double>(th), static_cast<double>(fp));
    return th;
}

Real g_R_eval(const Real& r, const HadamardData& data, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Real rr = to_scope(r);
    if (abs(data.a_R) == 0) {
        // no linear term to anchor the maximum near 0: fall back to a global
        // grid search plus golden-section refinement so the identity
        // g_R = max_theta S - r still holds
        Real pi = const_pi();
        const int N = 1440;
        Real best(-1);
        int best_i = 0;
        for (int i = 0; i < N; ++i) {
            Real th = -pi + 2 * pi * Real(i) / Real(N);
            Real v = S_theta(rr, th, data, ctx);
            if (i == 0 || v > best) {
                best = v;
                best_i = i;
            }
        }
        Real a = -pi + 2 * pi * Real(best_i - 1) / Real(N);
        Real b = -pi + 2 * pi * Real(best_i + 1) / Real(N);
        Real gr(0.3819660112501051);  // 2 - golden ratio
        Real x1 = a + gr * (b - a), x2 = b - gr * (b - a);
        Real f1 = S_theta(rr, x1, data, ctx), f2 = S_theta(rr, x2, data, ctx);
        for (int it = 0; it < 200; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = b - gr * (b - a);
                f2 = S_theta(rr, x2, data, ctx);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = a + gr * (b - a);
                f1 = S_theta(rr, x1, data, ctx);
            }
            if (b - a < ctx.eps()) break;
        }
        return (f1 > f2 ? f1 : f2) - rr;
    }
    Real th = theta_star(rr, data, ctx);
    return S_theta(rr, th, data, ctx) - rr;
}

Real harmonic_measure_slit(const Complex& zeta, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex z = to_scope(zeta);
    if (z.im == 0 && z.re == 1) throw DomainError("harmonic_measure_slit: zeta = 1 excluded");
    if (abs(z) > 1 + pow2(-40))
        throw DomainError("harmonic_measure_slit: zeta outside the closed unit disk");
    // branch 0 <= arg sqrt(zeta) <= pi: halve the argument taken in [0, 2pi)
    Real a = arg(z);
    if (a < 0) a += 2 * const_pi();
    Complex s = polar(boost::multiprecision::sqrt(abs(z)), a / 2);
    Complex w = (Complex(Real(1)) + s) / (Complex(Real(1)) - s);
    return 2 * arg(w) / const_pi();
}

Real v_R_eval(const Complex& z, const Real& eta, const Real& mu, const ZeroModel& model,
              const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    if (!(eta > 0)) throw DomainError("v_R_eval: eta must be positive");
    if (!(mu > 0) || !(2 * mu < 1)) throw DomainError("v_R_eval: mu must lie in (0, 1/2)");
    Complex zz = to_scope(z);
    Real e = to_scope(eta), m = to_scope(mu);
    Real r = abs(zz);
    Real theta = arg(zz);
    Real killing = e * boost::multiprecision::pow(r, m) *
                   boost::multiprecision::cos(m * (const_pi() -
                                                   boost::multiprecision::abs(theta)));
    Real logpi = boost::multiprecision::log(abs(pi_R_eval(zz, model, ctx)));
    return logpi - killing;  // -inf at the zeros, which is the documented flag
}

}  // namespace efet
