#include "efetlab/taylor.hpp"

namespace efet {

namespace {

// C_high * R^{N+1}/(N+1)! / (1 - R/(N+2)) with `lead` = R^{N+1}/(N+1)!.
Real tail_bound(const Real& lead, const Real& R, unsigned N, double C_high) {
    return Real(C_high) * lead / (1 - R / Real(N + 2));
}

}  // namespace

unsigned truncation_order(const Real& R, const PrecisionContext& ctx, double C_high) {
    if (R < 0) throw DomainError("truncation_order: R must be >= 0");
    PrecisionContext::Scope scope(ctx);
    Real r = to_scope(R);
    Real target = pow2(-static_cast<long>(ctx.precision_bits()) - 8);
    Real lead = r;  // R^{N+1}/(N+1)! at the current N (starting with N=0)
    for (unsigned N = 0;; ++N) {
        if (Real(N + 2) > 2 * r && tail_bound(lead, r, N, C_high) <= target) return N;
        lead *= r / Real(N + 2);
        if (N > 1u << 24) throw ConvergenceError("truncation_order: no admissible N", 0.0, 0.0);
    }
}

Complex TaylorFunction::coefficient(unsigned long long n) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& vals = cache_->values;
    if (n >= vals.size()) {
        PrecisionContext::Scope scope(ctx_);
        vals.reserve(n + 1);
        for (unsigned long long k = vals.size(); k <= n; ++k)
            vals.push_back(seq_.value(k, ctx_));
    }
    return vals[n];
}

EvalResult TaylorFunction::eval(const Complex& z) const {
    PrecisionContext::Scope scope(ctx_);
    Complex zz = to_scope(z);
    Real R = abs(zz);
    unsigned N = truncation_order(R, ctx_, seq_.C_high());
    bool finite_list = seq_.kind() == SeqKind::Explicit;
    if (finite_list && N + 1 > seq_.explicit_size())
        N = static_cast<unsigned>(seq_.explicit_size()) - 1;

    Complex term(Real(1));  // z^n / n!
    Complex sum;
    Real lead = R;  // R^{N+1}/(N+1)! built alongside
    for (unsigned n = 0; n <= N; ++n) {
        sum += coefficient(n) * term;
        term *= zz / Real(n + 1);
        if (n > 0) lead *= R / Real(n + 1);
    }
    Real err = finite_list ? Real(0) : tail_bound(lead, R, N, seq_.C_high());
    return {sum, err};
}

DerivPair TaylorFunction::eval_pair(const Complex& z) const {
    PrecisionContext::Scope scope(ctx_);
    Complex zz = to_scope(z);
    Real R = abs(zz);
    unsigned N = truncation_order(R, ctx_, seq_.C_high());
    bool finite_list = seq_.kind() == SeqKind::Explicit;
    if (finite_list && N + 2 > seq_.explicit_size())
        N = static_cast<unsigned>(seq_.explicit_size()) - 2;

    Complex term(Real(1));  // z^n / n!
    Complex f, fp;
    Real lead = R;
    for (unsigned n = 0; n <= N; ++n) {
        f += coefficient(n) * term;
        fp += coefficient(n + 1) * term;
        term *= zz / Real(n + 1);
        if (n > 0) lead *= R / Real(n + 1);
    }
    Real err = finite_list ? Real(0) : tail_bound(lead, R, N, seq_.C_high());
    return {f, fp, err};
}

Complex TaylorFunction::eval_log_derivative(const Complex& z) const {
    PrecisionContext::Scope scope(ctx_);
    DerivPair p = eval_pair(z);
    if (abs(p.f) <= 2 * p.error_bound + ctx_.eps())
        throw ProximityToZeroError("eval_log_derivative: |F(z)| within evaluation error of zero");
    return p.fp / p.f;
}

Real TaylorFunction::max_modulus(const Real& R) const {
    if (R < 0) throw DomainError("max_modulus: R must be >= 0");
    PrecisionContext::Scope scope(ctx_);
    Real r = to_scope(R);
    if (r == 0) return abs(eval(Complex()).value);

    const unsigned kGrid = 512;
    Real two_pi = 2 * const_pi();
    auto mod_at = [&](const Real& theta) { return abs(eval(polar(r, theta)).value); };

    unsigned best = 0;
    Real best_val(-1);
    std::vector<Real> grid(kGrid);
    for (unsigned k = 0; k < kGrid; ++k) {
        Real theta = two_pi * Real(k) / Real(kGrid);
        grid[k] = mod_at(theta);
        if (grid[k] > best_val) {
            best_val = grid[k];
            best = k;
        }
    }

    // golden-section on the bracketing arc around the best grid node
    Real a = two_pi * (Real(best) - 1) / Real(kGrid);
    Real b = two_pi * (Real(best) + 1) / Real(kGrid);
    Real gr = (boost::multiprecision::sqrt(Real(5)) - 1) / 2;
    Real x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    Real f1 = mod_at(x1), f2 = mod_at(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = mod_at(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = mod_at(x1);
        }
        if (b - a < two_pi * Real(1e-12)) break;
    }
    Real refined = f1 > f2 ? f1 : f2;
    return refined > best_val ? refined : best_val;
}

Real TaylorFunction::parseval_lower(const Real& R) const {
    if (R < 0) throw DomainError("parseval_lower: R must be >= 0");
    PrecisionContext::Scope scope(ctx_);
    Real r = to_scope(R);

    Real base(1);  // R^n / n!
    Real sum;
    Real eps = ctx_.eps();
    double C = seq_.C_high() > 0 ? seq_.C_high() : 1.0;
    std::size_t cap = seq_.kind() == SeqKind::Explicit ? seq_.explicit_size()
                                                       : static_cast<std::size_t>(-1);
    for (unsigned long long n = 0; n < cap; ++n) {
        sum += norm(coefficient(n)) * base * base;
        Real next = base * r / Real(n + 1);
        // tail majorized by geometric series with ratio <= 1/4 once n+1 > 2CR
        if (Real(n + 1) > 2 * Real(C) * r && 2 * Real(C * C) * next * next < eps * sum) break;
        base = next;
    }
    if (sum <= 0) throw DomainError("parseval_lower: vanishing coefficient mass");
    return boost::multiprecision::log(sum) / 2;
}

}  // namespace efet
