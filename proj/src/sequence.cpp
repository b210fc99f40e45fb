#include "efetlab/sequence.hpp"

#include <numeric>

namespace efet {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw DomainError("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Real Rational::frac_times(unsigned long long k, bool square) const {
    unsigned long long d = static_cast<unsigned long long>(den);
    long long nn = num % den;
    if (nn < 0) nn += den;
    unsigned long long kr = k % d;
    if (square) kr = static_cast<unsigned long long>(
        static_cast<unsigned __int128>(kr) * kr % d);
    unsigned long long t = static_cast<unsigned long long>(
        static_cast<unsigned __int128>(static_cast<unsigned long long>(nn)) * kr % d);
    return Real(t) / Real(d);
}

namespace {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t x = seed + (n + 1) * 0x9E3779B97F4A7C15ULL;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

double splitmix64_unit(std::uint64_t seed, std::uint64_t n) {
    return static_cast<double>(splitmix64_at(seed, n) >> 11) * 0x1.0p-53;
}

CoefficientSequence CoefficientSequence::constant(const Complex& theta, const Complex& alpha) {
    CoefficientSequence s;
    s.kind_ = SeqKind::Constant;
    s.theta_ = theta;
    s.alpha_ = alpha;
    double at = static_cast<double>(abs(theta));
    double aa = static_cast<double>(abs(alpha));
    s.sigma_hint_ = aa;
    if (aa == 1.0) {
        s.c_low_ = at;
        s.C_high_ = at;
        s.density_hint_ = (at == 1.0) ? 1.0 : 0.0;
    } else {
        s.C_high_ = at * std::max(1.0, aa);  // only valid per-index up to growth; callers
                                             // with |alpha| != 1 use sigma_hint instead
        s.c_low_ = 0;
    }
    return s;
}

CoefficientSequence CoefficientSequence::quadratic_phase(Rational beta, Rational gamma,
                                                         Rational delta) {
    CoefficientSequence s;
    s.kind_ = SeqKind::QuadraticPhase;
    s.beta_ = beta;
    s.gamma_ = gamma;
    s.delta_ = delta;
    s.c_low_ = s.C_high_ = 1;
    s.density_hint_ = 1;
    return s;
}

CoefficientSequence CoefficientSequence::cos_sqrt_plus2() {
    CoefficientSequence s;
    s.kind_ = SeqKind::CosSqrtPlus2;
    s.c_low_ = 1;
    s.C_high_ = 3;
    return s;
}

CoefficientSequence CoefficientSequence::random_unimodular(std::uint64_t seed) {
    CoefficientSequence s;
    s.kind_ = SeqKind::RandomUnimodular;
    s.seed_ = seed;
    s.c_low_ = s.C_high_ = 1;
    s.density_hint_ = 1;
    return s;
}

CoefficientSequence CoefficientSequence::masked(CoefficientSequence base,
                                                std::vector<bool> pattern) {
    if (pattern.empty()) throw DomainError("masked: empty pattern");
    CoefficientSequence s;
    s.kind_ = SeqKind::Masked;
    s.sigma_hint_ = base.sigma_hint_;
    s.c_low_ = base.c_low_ / 2;
    s.C_high_ = base.C_high_;
    std::size_t unmasked = 0;
    for (bool m : pattern)
        if (!m) ++unmasked;
    s.density_hint_ = base.density_hint_ * static_cast<double>(unmasked) /
                      static_cast<double>(pattern.size());
    s.base_ = std::make_shared<CoefficientSequence>(std::move(base));
    s.pattern_ = std::move(pattern);
    return s;
}

CoefficientSequence CoefficientSequence::explicit_list(std::vector<Complex> values) {
    if (values.empty()) throw DomainError("explicit_list: empty value list");
    CoefficientSequence s;
    s.kind_ = SeqKind::Explicit;
    double lo = 0, hi = 0;
    bool have_nonzero = false;
    for (const Complex& v : values) {
        double a = static_cast<double>(abs(v));
        if (a == 0) continue;
        if (!have_nonzero) {
            lo = hi = a;
            have_nonzero = true;
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    s.c_low_ = lo;
    s.C_high_ = hi;
    s.explicit_values_ = std::move(values);
    return s;
}

CoefficientSequence CoefficientSequence::cosine_oracle() {
    CoefficientSequence s;
    s.kind_ = SeqKind::CosineOracle;
    s.c_low_ = 1;  // on the even (nonzero) indices
    s.C_high_ = 1;
    s.density_hint_ = 0.5;
    return s;
}

CoefficientSequence CoefficientSequence::expm1_oracle() {
    CoefficientSequence s;
    s.kind_ = SeqKind::Expm1Oracle;
    s.c_low_ = 1;  // for n >= 1
    s.C_high_ = 1;
    s.density_hint_ = 1;
    return s;
}

std::string CoefficientSequence::kind_name() const {
    switch (kind_) {
        case SeqKind::Constant: return "constant";
        case SeqKind::QuadraticPhase: return "quadratic_phase";
        case SeqKind::CosSqrtPlus2: return "cos_sqrt_plus2";
        case SeqKind::RandomUnimodular: return "random_unimodular";
        case SeqKind::Masked: return "masked";
        case SeqKind::Explicit: return "explicit";
        case SeqKind::CosineOracle: return "cosine_oracle";
        case SeqKind::Expm1Oracle: return "expm1_oracle";
    }
    return "?";
}

Complex CoefficientSequence::value(unsigned long long n, const PrecisionContext& ctx) const {
    PrecisionContext::Scope scope(ctx);
    switch (kind_) {
        case SeqKind::Constant:
            return to_scope(theta_) * pow_int(to_scope(alpha_), static_cast<long>(n));
        case SeqKind::QuadraticPhase: {
            Real f = beta_.frac_times(n, true) + gamma_.frac_times(n, false) +
                     delta_.frac_times(1, false);
            return polar(Real(1), 2 * const_pi() * f);
        }
        case SeqKind::CosSqrtPlus2:
            return Complex(boost::multiprecision::cos(boost::multiprecision::sqrt(Real(n))) + 2);
        case SeqKind::RandomUnimodular: {
            Real u = Real(splitmix64_at(seed_, n) >> 11) / pow2(53);
            return polar(Real(1), 2 * const_pi() * u);
        }
        case SeqKind::Masked: {
            Complex v = base_->value(n, ctx);
            if (pattern_[n % pattern_.size()]) v *= Real(0.5);
            return v;
        }
        case SeqKind::Explicit:
            if (n >= explicit_values_.size())
                throw DomainError("explicit sequence: index beyond value list");
            return to_scope(explicit_values_[n]);
        case SeqKind::CosineOracle:
            if (n % 2 == 1) return Complex();
            return Complex(Real((n / 2) % 2 == 0 ? 1 : -1));
        case SeqKind::Expm1Oracle:
            return Complex(Real(n == 0 ? 0 : 1));
    }
    throw DomainError("sequence_value: unknown kind");
}

bool CoefficientSequence::unimodular_at(unsigned long long n) const {
    switch (kind_) {
        case SeqKind::Constant:
            return c_low_ == 1.0 && C_high_ == 1.0;
        case SeqKind::QuadraticPhase:
        case SeqKind::RandomUnimodular:
            return true;
        case SeqKind::CosSqrtPlus2:
            return false;
        case SeqKind::Masked:
            return !pattern_[n % pattern_.size()] && base_->unimodular_at(n);
        case SeqKind::Explicit:
            return false;
        case SeqKind::CosineOracle:
            return n % 2 == 0;
        case SeqKind::Expm1Oracle:
            return n >= 1;
    }
    return false;
}

}  // namespace efet
