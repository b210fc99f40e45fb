#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "efetlab/precision.hpp"

namespace efet {

// Exact rational parameter in [0,1). Quadratic-phase coefficients are kept
// as integers so that beta*n^2 can be reduced mod 1 without floating-point
// loss even for very large n.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    // fractional part of num/den * k (k reduced mod den first); exact.
    // If `square`, the multiplier is k^2.
    Real frac_times(unsigned long long k, bool square) const;
};

enum class SeqKind {
    Constant,
    QuadraticPhase,
    CosSqrtPlus2,
    RandomUnimodular,
    Masked,
    Explicit,
    CosineOracle,
    Expm1Oracle,
};

// Immutable description of a coefficient sequence (omega_n) together with
// its declared modulus bounds, exponential-type hint and the density of the
// unimodular index set. Construct through the named factories.
class CoefficientSequence {
  public:
    static CoefficientSequence constant(const Complex& theta, const Complex& alpha);
    static CoefficientSequence quadratic_phase(Rational beta, Rational gamma, Rational delta);
    static CoefficientSequence cos_sqrt_plus2();
    static CoefficientSequence random_unimodular(std::uint64_t seed);
    // Entries at indices where pattern[n % pattern.size()] is true are halved
    // (so they leave the unit circle); the rest of the base is untouched.
    static CoefficientSequence masked(CoefficientSequence base, std::vector<bool> pattern);
    static CoefficientSequence explicit_list(std::vector<Complex> values);
    static CoefficientSequence cosine_oracle();
    static CoefficientSequence expm1_oracle();

    SeqKind kind() const { return kind_; }
    std::string kind_name() const;

    // omega_n at the precision of ctx. Deterministic for fixed params/seed.
    Complex value(unsigned long long n, const PrecisionContext& ctx) const;

    // true iff |omega_n| = 1 by construction.
    bool unimodular_at(unsigned long long n) const;

    double c_low() const { return c_low_; }
    double C_high() const { return C_high_; }
    double sigma_hint() const { return sigma_hint_; }
    double density_hint() const { return density_hint_; }

    std::uint64_t seed() const { return seed_; }
    const Rational& beta() const { return beta_; }
    const Rational& gamma() const { return gamma_; }
    const Rational& delta() const { return delta_; }
    const std::vector<Complex>& values() const { return explicit_values_; }
    std::size_t explicit_size() const { return explicit_values_.size(); }

  private:
    CoefficientSequence() = default;

    SeqKind kind_ = SeqKind::Constant;
    double c_low_ = 0;
    double C_high_ = 0;
    double sigma_hint_ = 1;
    double density_hint_ = 0;

    Complex theta_{1.0};
    Complex alpha_{1.0};
    Rational beta_, gamma_, delta_;
    std::uint64_t seed_ = 0;
    std::shared_ptr<const CoefficientSequence> base_;
    std::vector<bool> pattern_;
    std::vector<Complex> explicit_values_;
};

inline Complex sequence_value(const CoefficientSequence& seq, unsigned long long n,
                              const PrecisionContext& ctx) {
    return seq.value(n, ctx);
}

// n-th draw of the stateless splitmix64 stream for `seed`, mapped to [0,1)
// with 53 random bits. Exposed so tests can pin expected values.
double splitmix64_unit(std::uint64_t seed, std::uint64_t n);

}  // namespace efet
