#include "efetlab/precision.hpp"

#include <boost/math/special_functions/fpclassify.hpp>

namespace efet {

namespace {

unsigned bits_to_digits10(unsigned bits) {
    // Round up so the actual mpfr mantissa is at least `bits` wide.
    return static_cast<unsigned>((static_cast<std::uint64_t>(bits) * 301u) / 1000u) + 3u;
}

}  // namespace

Real PrecisionContext::tol() const {
    return pow2(-static_cast<long>(precision_bits_ / 2));
}

Real PrecisionContext::eps() const {
    return pow2(-static_cast<long>(precision_bits_));
}

PrecisionContext::Scope::Scope(const PrecisionContext& ctx)
    : saved_digits10_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(ctx.precision_bits() + ctx.guard_bits()));
}

PrecisionContext::Scope::~Scope() {
    Real::default_precision(saved_digits10_);
}

bool Complex::is_finite() const {
    return boost::math::isfinite(re) && boost::math::isfinite(im);
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = norm(o);
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

Real abs(const Complex& z) {
    using boost::multiprecision::hypot;
    return hypot(z.re, z.im);
}

Real arg(const Complex& z) {
    return atan2(z.im, z.re);
}

Complex exp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.re);
    return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex log(const Complex& z) {
    return Complex(boost::multiprecision::log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z) {
    Real r = abs(z);
    if (r == 0) return Complex();
    Real half = arg(z) / 2;
    Real m = boost::multiprecision::sqrt(r);
    return Complex(m * boost::multiprecision::cos(half), m * boost::multiprecision::sin(half));
}

Complex sin(const Complex& z) {
    using boost::multiprecision::cosh;
    using boost::multiprecision::sinh;
    return Complex(boost::multiprecision::sin(z.re) * cosh(z.im),
                   boost::multiprecision::cos(z.re) * sinh(z.im));
}

Complex cos(const Complex& z) {
    using boost::multiprecision::cosh;
    using boost::multiprecision::sinh;
    return Complex(boost::multiprecision::cos(z.re) * cosh(z.im),
                   -boost::multiprecision::sin(z.re) * sinh(z.im));
}

Complex polar(const Real& r, const Real& theta) {
    return Complex(r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta));
}

Complex pow_int(const Complex& z, long n) {
    if (n < 0) return Complex(Real(1)) / pow_int(z, -n);
    Complex result(Real(1));
    Complex base = z;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

Complex pow(const Complex& z, const Complex& w) {
    return exp(w * log(z));
}

Real const_pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Real pow2(long e) {
    Real one(1);
    Real r;
    mpfr_mul_2si(r.backend().data(), one.backend().data(), e, MPFR_RNDN);
    return r;
}

Real to_scope(const Real& x) {
    Real r;  // default-constructed: current default precision
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Complex to_scope(const Complex& z) {
    return Complex(to_scope(z.re), to_scope(z.im));
}

}  // namespace efet
