#include "efetlab/special.hpp"

#include <mutex>
#include <vector>

namespace efet {

namespace {

constexpr int kStirlingTerms = 20;
constexpr double kStirlingSwitch = 32.0;

// Bernoulli numbers B_2, B_4, ..., B_40 at the given precision, via the
// defining recurrence sum_{j<=m} C(m+1,j) B_j = 0.
const std::vector<Real>& even_bernoulli(unsigned bits) {
    static std::mutex mu;
    static unsigned cached_bits = 0;
    static std::vector<Real> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (bits <= cached_bits && !cache.empty()) return cache;

    const int n = 2 * kStirlingTerms;
    std::vector<Real> b(n + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        // binom(m+1, j) built incrementally
        Real sum = 0;
        Real binom = 1;  // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            sum += binom * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -sum / (m + 1);
    }
    cache.clear();
    for (int k = 1; k <= kStirlingTerms; ++k) cache.push_back(b[2 * k]);
    cached_bits = bits;
    return cache;
}

// Stirling series for log Gamma, valid for Re(s) large.
Complex log_gamma_stirling(const Complex& s, unsigned bits) {
    const std::vector<Real>& bern = even_bernoulli(bits);
    Real half(0.5);
    Complex result = (s - Complex(half)) * log(s) - s;
    result += Complex(boost::multiprecision::log(2 * const_pi()) / 2);
    Complex inv = Complex(Real(1)) / s;
    Complex inv2 = inv * inv;
    Complex p = inv;  // s^{-(2k-1)}
    for (int k = 1; k <= kStirlingTerms; ++k) {
        result += Complex(bern[k - 1] / (2 * k * (2 * k - 1))) * p;
        p *= inv2;
    }
    return result;
}

}  // namespace

Complex log_gamma(const Complex& s, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Complex z = to_scope(s);
    if (z.im == 0 && z.re <= 0 && floor(z.re) == z.re)
        throw DomainError("log_gamma: pole at non-positive integer");

    // log Gamma(z) = log Gamma(z+m) - sum_{k=0}^{m-1} log(z+k)
    Complex shift_sum;
    Complex w = z;
    while (w.re < kStirlingSwitch) {
        if (w.re == 0 && w.im == 0)
            throw DomainError("log_gamma: pole reached during recurrence");
        shift_sum += log(w);
        w.re += 1;
    }
    Complex result = log_gamma_stirling(w, ctx.precision_bits() + ctx.guard_bits()) - shift_sum;
    if (!result.is_finite())
        throw PrecisionError("log_gamma: non-finite result, raise precision");
    return result;
}

Real bessel_i(unsigned h, const Real& x, const PrecisionContext& ctx) {
    PrecisionContext::Scope scope(ctx);
    Real half = to_scope(x) / 2;
    // leading term (x/2)^h / h!
    Real term = 1;
    for (unsigned k = 1; k <= h; ++k) term *= half / k;
    Real sum = term;
    Real x2 = half * half;
    Real bound = ctx.eps() / 16;
    for (unsigned long m = 1;; ++m) {
        term *= x2 / (Real(m) * Real(m + h));
        sum += term;
        // once the term ratio drops below 1/2, the tail is < 2*term
        if (m > 1 && x2 / (Real(m + 1) * Real(m + 1 + h)) < Real(0.5) &&
            term < bound * (sum == 0 ? Real(1) : boost::multiprecision::abs(sum) + 1))
            break;
    }
    return sum;
}

}  // namespace efet
