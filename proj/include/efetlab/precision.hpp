#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <utility>

#include "efetlab/errors.hpp"

namespace efet {

// Extended-precision real, variable precision at runtime. Expression
// templates are off so that Real composes cleanly with our Complex.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0, boost::multiprecision::allocate_dynamic>,
    boost::multiprecision::et_off>;

// Working precision for a computation. precision_bits is the mantissa size
// the caller reasons about; guard_bits are added internally when the scope
// is installed. All downstream tolerances derive from tol().
class PrecisionContext {
  public:
    explicit PrecisionContext(unsigned precision_bits = 128, unsigned guard_bits = 32)
        : precision_bits_(precision_bits), guard_bits_(guard_bits) {
        if (precision_bits < 64)
            throw DomainError("PrecisionContext: precision_bits must be >= 64");
    }

    unsigned precision_bits() const { return precision_bits_; }
    unsigned guard_bits() const { return guard_bits_; }

    // 2^(-precision_bits/2); strictly decreasing in precision_bits.
    Real tol() const;
    // 2^(-precision_bits): one-ulp scale at the declared precision.
    Real eps() const;

    PrecisionContext with_bits(unsigned bits) const { return PrecisionContext(bits, guard_bits_); }
    PrecisionContext doubled() const { return with_bits(2 * precision_bits_); }

    // RAII scope installing precision_bits + guard_bits as the default
    // mantissa size for newly constructed Reals. The default is process-wide
    // (MPFR via boost keeps one atomic default), so scopes at different
    // precisions must not be active concurrently; worker threads of a
    // parallel sweep simply inherit the scope installed by the coordinator.
    class Scope {
      public:
        explicit Scope(const PrecisionContext& ctx);
        ~Scope();
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

      private:
        unsigned saved_digits10_;
    };

  private:
    unsigned precision_bits_;
    unsigned guard_bits_;
};

// Complex value over Real. Closed and exact-to-precision on the four field
// operations; transcendental members use the principal branch.
struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(0) {}
    explicit Complex(double r) : re(r), im(0) {}
    Complex(double r, double i) : re(r), im(i) {}

    bool is_finite() const;

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& x) { re *= x; im *= x; return *this; }
    Complex& operator/=(const Real& x) { re /= x; im /= x; return *this; }
    Complex& operator/=(const Complex& o);
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& x) { return a *= x; }
inline Complex operator*(const Real& x, Complex a) { return a *= x; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator/(Complex a, const Real& x) { return a /= x; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);   // principal branch
Complex sqrt(const Complex& z);  // principal branch
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex polar(const Real& r, const Real& theta);
Complex pow_int(const Complex& z, long n);
Complex pow(const Complex& z, const Complex& w);  // exp(w log z), z != 0

Real const_pi();
Real pow2(long e);  // 2^e as Real

// Copies of a value rounded to the currently installed default precision.
// Copy construction of Real preserves the source mantissa width, so values
// built outside a Scope must pass through these on entry to any routine
// whose accuracy depends on the scope precision.
Real to_scope(const Real& x);
Complex to_scope(const Complex& z);

}  // namespace efet
