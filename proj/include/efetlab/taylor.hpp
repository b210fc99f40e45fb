#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "efetlab/sequence.hpp"

namespace efet {

struct EvalResult {
    Complex value;
    Real error_bound;
};

struct DerivPair {
    Complex f;
    Complex fp;
    Real error_bound;
};

// Smallest N with N+2 > 2R and
//   C_high * R^{N+1}/(N+1)! * (1 - R/(N+2))^{-1} <= 2^{-precision_bits-8};
// the geometric tail bound then certifies the partial sum uniformly on
// the closed disk |z| <= R.
unsigned truncation_order(const Real& R, const PrecisionContext& ctx, double C_high);

// F(z) = sum omega_n z^n / n! with certified truncation. Immutable; all
// member calls are pure and safe to run concurrently.
class TaylorFunction {
  public:
    TaylorFunction(CoefficientSequence seq, PrecisionContext ctx)
        : seq_(std::move(seq)), ctx_(ctx), cache_(std::make_shared<CoeffCache>()) {}

    const CoefficientSequence& sequence() const { return seq_; }
    const PrecisionContext& context() const { return ctx_; }

    // omega_n at the context precision, memoized (value() is pure and the
    // context is fixed, so caching is transparent); thread-safe.
    Complex coefficient(unsigned long long n) const;

    // Partial sum to truncation_order(|z|) plus the certified tail bound.
    EvalResult eval(const Complex& z) const;

    // F(z) and F'(z) from one pass over the coefficients; no zero guard.
    DerivPair eval_pair(const Complex& z) const;

    // F'(z)/F(z). Throws ProximityToZeroError when |F(z)| is not safely
    // above the evaluation error bound (contour should be nudged).
    Complex eval_log_derivative(const Complex& z) const;

    // Grid-plus-golden-section estimate of max_{|z|=R} |F|; a lower
    // estimate up to grid resolution, for diagnostics only.
    Real max_modulus(const Real& R) const;

    // (1/2) log sum_n |omega_n|^2 R^{2n}/(n!)^2, a rigorous lower bound
    // for log M_F(R).
    Real parseval_lower(const Real& R) const;

  private:
    struct CoeffCache {
        std::mutex mutex;
        std::vector<Complex> values;
    };

    CoefficientSequence seq_;
    PrecisionContext ctx_;
    std::shared_ptr<CoeffCache> cache_;  // shared across copies
};

}  // namespace efet
